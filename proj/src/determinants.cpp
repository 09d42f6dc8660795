#include "kptol/determinants.hpp"

#include <algorithm>
#include <vector>

namespace kptol {

namespace {

void require_curved(Curvature kappa) {
  if (kappa.regime() == Regime::Flat)
    throw RegimeError("CM and P matrices are only defined for kappa != 0");
}

}  // namespace

KappaMatrix build_cm(Curvature kappa, const DistanceMatrix& d) {
  require_curved(kappa);
  const Eigen::MatrixXd m = d.entries().unaryExpr([kappa](double x) { return c_kappa(kappa, x); });
  return {MatrixKind::CM, kappa, m};
}

KappaMatrix build_p(Curvature kappa, const DistanceMatrix& d) {
  require_curved(kappa);
  const Eigen::MatrixXd m = d.entries().unaryExpr([kappa](double x) {
    const double s = s_kappa(kappa, 0.5 * x);
    return s * s;
  });
  return {MatrixKind::P, kappa, m};
}

Eigen::MatrixXd delete_rows_cols(const Eigen::MatrixXd& m, std::initializer_list<int> rows,
                                 std::initializer_list<int> cols) {
  const auto keep = [](Eigen::Index n, std::initializer_list<int> drop) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::find(drop.begin(), drop.end(), i) == drop.end()) idx.push_back(i);
    return idx;
  };
  const auto r = keep(m.rows(), rows);
  const auto c = keep(m.cols(), cols);
  Eigen::MatrixXd out(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
  return out;
}

SignClass classify_sign(double value, double tolerance) {
  SignClass s{SignClass::Zero, value, tolerance};
  if (std::abs(value) > tolerance) s.value = value > 0 ? SignClass::Positive : SignClass::Negative;
  return s;
}

double sign_tolerance(const Eigen::MatrixXd& entries, double tau) {
  const double scale = std::max(1.0, entries.size() ? entries.cwiseAbs().maxCoeff() : 0.0);
  return tau * std::pow(scale, static_cast<double>(entries.rows()));
}

SignClass delta_kappa(Curvature kappa, const DistanceMatrix& d, double tau) {
  const auto cm = build_cm(kappa, d);
  return classify_sign(det(cm.entries), sign_tolerance(cm.entries, tau));
}

SignClass gamma_kappa(Curvature kappa, const DistanceMatrix& d, double tau) {
  const auto p = build_p(kappa, d);
  return classify_sign(det(p.entries), sign_tolerance(p.entries, tau));
}

DesnanotJacobiTerms desnanot_jacobi(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ShapeError("Desnanot-Jacobi needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n < 3) throw ArgumentError("Desnanot-Jacobi needs a matrix of size at least 3");
  const int last = n - 1;
  const double lhs = det(m) * det(delete_rows_cols(m, {0, last}, {0, last}));
  const double rhs = det(delete_rows_cols(m, {0}, {0})) * det(delete_rows_cols(m, {last}, {last})) -
                     det(delete_rows_cols(m, {0}, {last})) * det(delete_rows_cols(m, {last}, {0}));
  return {lhs, rhs};
}

}  // namespace kptol
