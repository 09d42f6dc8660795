#pragma once

#include <cmath>
#include <initializer_list>

#include <Eigen/Core>
#include <Eigen/LU>

#include "kptol/errors.hpp"
#include "kptol/kappa_functions.hpp"
#include "kptol/metric_core.hpp"

namespace kptol {

enum class MatrixKind { CM, P };

/// CM: entries c_k(d_ij), unit diagonal. P: entries s_k(d_ij / 2)^2, zero
/// diagonal. Only defined for k != 0.
struct KappaMatrix {
  MatrixKind kind;
  Curvature kappa;
  Eigen::MatrixXd entries;
};

KappaMatrix build_cm(Curvature kappa, const DistanceMatrix& d);
KappaMatrix build_p(Curvature kappa, const DistanceMatrix& d);

/// Determinant by LU with partial pivoting; 1 for the empty matrix.
template <typename Derived>
double det(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  const Eigen::MatrixXd dense = m;
  return dense.partialPivLu().determinant();
}

/// Copy of `m` with the listed rows and columns removed (0-based).
Eigen::MatrixXd delete_rows_cols(const Eigen::MatrixXd& m, std::initializer_list<int> rows,
                                 std::initializer_list<int> cols);

/// Sign of a determinant with the threshold it was classified against.
/// `value == Zero` exactly when |magnitude| <= tolerance_used.
struct SignClass {
  enum Value { Zero, Positive, Negative };
  Value value;
  double magnitude;
  double tolerance_used;

  int sign() const { return value == Positive ? 1 : value == Negative ? -1 : 0; }
  /// True for Zero, or for a nonzero sign equal to `expected`.
  bool compatible_with(int expected) const { return value == Zero || sign() == expected; }
};

SignClass classify_sign(double value, double tolerance);

/// The zero threshold for an m x m matrix: tau * max(1, max|entry|)^m.
double sign_tolerance(const Eigen::MatrixXd& entries, double tau);

inline constexpr double kDefaultSignTau = 1e-9;

/// Determinant of CM_k(d), classified. Vanishes for m >= n + 2 points of an
/// n-dimensional model space; otherwise zero or of sign sgn(k)^(m+1).
SignClass delta_kappa(Curvature kappa, const DistanceMatrix& d, double tau = kDefaultSignTau);

/// Determinant of P_k(d), classified. For n + 2 points of an n-dimensional
/// model space it is zero or of sign (-1)^(n+1).
SignClass gamma_kappa(Curvature kappa, const DistanceMatrix& d, double tau = kDefaultSignTau);

inline int cm_expected_sign(Curvature kappa, int points) {
  return (kappa.sign() < 0 && points % 2 == 0) ? -1 : 1;
}
inline int p_expected_sign(int dim) { return dim % 2 == 0 ? -1 : 1; }

/// Both sides of the Desnanot-Jacobi identity
///   det(M) det(M[~1,n; ~1,n]) = det(M[~1;~1]) det(M[~n;~n]) - det(M[~1;~n]) det(M[~n;~1]).
struct DesnanotJacobiTerms {
  double lhs;
  double rhs;
  double residual() const { return lhs - rhs; }
};

/// Requires an n x n matrix with n >= 3 (ArgumentError otherwise).
DesnanotJacobiTerms desnanot_jacobi(const Eigen::MatrixXd& m);

inline double desnanot_jacobi_residual(const Eigen::MatrixXd& m) { return desnanot_jacobi(m).residual(); }

}  // namespace kptol
