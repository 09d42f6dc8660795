#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "kptol/kappa_functions.hpp"
#include "kptol/metric_core.hpp"

namespace kptol {

/// A point of the n-dimensional model space of curvature kappa.
///
/// kappa > 0: ambient R^{n+1}, on the sphere of radius 1/sqrt(kappa).
/// kappa = 0: R^n.
/// kappa < 0: ambient R^{1,n}, upper sheet of <x,x>_M = 1/kappa where
///            <x,y>_M = -x0 y0 + sum xi yi.
class ModelPoint {
public:
  /// Throws DomainError if `coords` is off the model surface by more than
  /// `tol` relative, ShapeError if its length does not match `dim`.
  ModelPoint(Curvature kappa, int dim, Eigen::VectorXd coords, double tol = 1e-10);

  Curvature kappa() const { return kappa_; }
  int dim() const { return dim_; }
  const Eigen::VectorXd& coords() const { return coords_; }

  static int ambient_size(Curvature kappa, int dim) {
    return kappa.regime() == Regime::Flat ? dim : dim + 1;
  }

private:
  Curvature kappa_;
  int dim_;
  Eigen::VectorXd coords_;
};

/// -x0 y0 + sum_{i>0} xi yi.
template <typename DerivedA, typename DerivedB>
double minkowski_dot(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y) {
  return x.tail(x.size() - 1).dot(y.tail(y.size() - 1)) - x(0) * y(0);
}

/// Geodesic distance; the inner product is clamped into the domain of
/// arccos / arccosh so the result always lies in [0, D_kappa].
double distance(const ModelPoint& a, const ModelPoint& b);

/// Sampling radius used when the caller gives none: 3 / sqrt(max(|kappa|, 1)).
double default_radius_bound(Curvature kappa);

/// `count` deterministic samples. Spheres are sampled uniformly; Euclidean
/// space uniformly in the ball of `radius_bound`; hyperbolic space with a
/// uniform tangent direction and geodesic radius uniform in [0, radius_bound].
std::vector<ModelPoint> sample(Curvature kappa, int dim, int count, std::uint64_t seed,
                               std::optional<double> radius_bound = std::nullopt);

DistanceMatrix pairwise_distances(std::span<const ModelPoint> points);

}  // namespace kptol
