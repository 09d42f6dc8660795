#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kptol/kappa_functions.hpp"
#include "kptol/metric_core.hpp"

namespace kptol {

/// A labeled 4-tuple (p1, p2, p3, p4) of distinct indices. The sides are
/// d12, d23, d34, d41 and the diagonals d13, d24.
class Quad {
public:
  Quad(int i, int j, int k, int l);

  int operator[](int slot) const { return idx_[slot]; }
  const std::array<int, 4>& indices() const { return idx_; }

  friend bool operator==(const Quad&, const Quad&) = default;
  friend auto operator<=>(const Quad&, const Quad&) = default;

private:
  std::array<int, 4> idx_;
};

struct QuadDistances {
  double d12, d23, d34, d41, d13, d24;

  double perimeter() const { return d12 + d23 + d34 + d41; }
};

/// Throws ArgumentError if an index is outside the matrix.
QuadDistances quad_distances(const Quad& q, const DistanceMatrix& d);

/// The three labelings of a 4-subset that differ in which pair of
/// opposite sides plays the diagonal role. `subset` must be increasing.
std::array<Quad, 3> pairings(const std::array<int, 4>& subset);

/// RHS - LHS of the k-Ptolemy inequality
///   s(d13/2) s(d24/2) <= s(d12/2) s(d34/2) + s(d23/2) s(d41/2).
/// Nonnegative iff the inequality holds for this labeling. For k < 0 and
/// large distances it is evaluated in log space without cancelling the
/// dominant terms; the result may be +-inf but carries the correct sign.
double ptolemy_residual(Curvature kappa, const QuadDistances& q);
double ptolemy_residual(Curvature kappa, const Quad& q, const DistanceMatrix& d);

/// Factors of det P_k for four points: A B C D = gamma_k, with
///   A = -(L + R1 + R2), B = -L + R1 + R2, C = L - R1 + R2, D = L + R1 - R2
/// where L = s(d13/2)s(d24/2), R1 = s(d12/2)s(d34/2), R2 = s(d23/2)s(d41/2).
struct PtolemyFactors {
  double a, b, c, d;

  double product() const { return a * b * c * d; }
};

PtolemyFactors ptolemy_factors(Curvature kappa, const Quad& q, const DistanceMatrix& d);

double quad_perimeter(const Quad& q, const DistanceMatrix& d);

/// d12 + d23 + d34 + d41 < 2 D_k (strict). Always true for k <= 0.
bool perimeter_ok(Curvature kappa, const Quad& q, const DistanceMatrix& d);

enum class Gate { Gated, Ungated };

inline constexpr double kDefaultPtolemyTol = 1e-9;

struct Violation {
  Quad quad;
  double residual;
};

/// Result of checking every labeling of every 4-subset. Counts are in
/// labelings (three per subset).
struct AnalysisReport {
  Curvature kappa;
  Gate gate = Gate::Ungated;
  double tolerance = kDefaultPtolemyTol;
  std::int64_t total_quads = 0;
  std::int64_t checked_quads = 0;
  std::int64_t perimeter_skipped = 0;
  std::vector<Violation> violations;  ///< lexicographic in the quad indices
  double min_residual = 0.0;          ///< 0 when nothing was checked
  double p_kappa = 0.0;               ///< -min_residual
  std::optional<Quad> worst;          ///< labeling attaining min_residual
  double four_point_defect = 0.0;
};

AnalysisReport scan(Curvature kappa, const DistanceMatrix& d, Gate gate,
                    double tol = kDefaultPtolemyTol);

/// sup over labeled quadruples of (LHS - RHS); the k-Ptolemy constant of a
/// finite space. Requires at least 4 points.
double p_kappa_constant(Curvature kappa, const DistanceMatrix& d);

struct FourPointDefect {
  double defect = 0.0;         ///< largest minus second-largest pairing sum
  std::optional<Quad> witness; ///< labeled with the largest sum on the diagonals
};

/// Maximum over 4-subsets of the gap between the two largest of
/// d_ij + d_kl, d_ik + d_jl, d_il + d_jk. Zero for fewer than 4 points.
FourPointDefect four_point_defect(const DistanceMatrix& d);

struct TreeCertificate {
  bool is_tree_metric = false;
  double defect = 0.0;
  std::optional<Quad> witness;
  std::vector<AxiomViolation> metric_violations;
};

/// Tree-embeddable iff the metric axioms hold (within metric_tol) and the
/// four-point defect is at most `tol`.
TreeCertificate tree_certify(const DistanceMatrix& d, double tol = 1e-9, double metric_tol = 1e-9);

/// (2/sqrt(-k)) asinh[ sinh(sqrt(-k)a/2) sinh(sqrt(-k)b/2) + sinh(sqrt(-k)c/2) sinh(sqrt(-k)d/2) ]
/// evaluated in log space. Tends to max(a+b, c+d) as k -> -inf when all
/// four lengths are positive.
double limit_scale(Curvature kappa, double a, double b, double c, double d);

struct SweepRow {
  Curvature kappa;
  double p_kappa = 0.0;
  std::optional<Quad> worst;
  /// limit_scale of both sides of the inequality at `worst`, and their
  /// difference LHS - RHS; NaN for k >= 0.
  double scaled_lhs = 0.0;
  double scaled_rhs = 0.0;
  double four_point_gap_estimate = 0.0;
};

/// One ungated scan per curvature, in the given order.
std::vector<SweepRow> kappa_sweep(const DistanceMatrix& d, std::span<const Curvature> kappas);

}  // namespace kptol
