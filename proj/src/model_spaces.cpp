#include "kptol/model_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kptol/errors.hpp"
#include "kptol/random.hpp"

namespace kptol {

ModelPoint::ModelPoint(Curvature kappa, int dim, Eigen::VectorXd coords, double tol)
    : kappa_(kappa), dim_(dim), coords_(std::move(coords)) {
  if (dim < 1) throw ShapeError("model point dimension must be positive");
  if (coords_.size() != ambient_size(kappa, dim))
    throw ShapeError("expected " + std::to_string(ambient_size(kappa, dim)) +
                     " coordinates, got " + std::to_string(coords_.size()));
  if (!coords_.allFinite()) throw DomainError("model point coordinates must be finite");

  const double k = kappa.value();
  switch (kappa.regime()) {
    case Regime::Flat:
      break;
    case Regime::Spherical: {
      const double target = 1.0 / k;
      if (std::abs(coords_.squaredNorm() - target) > tol * target)
        throw DomainError("point is not on the sphere of radius 1/sqrt(kappa)");
      break;
    }
    case Regime::Hyperbolic: {
      // Relative to the Euclidean size as well: far-out points carry
      // cancellation error proportional to x0^2.
      const double target = 1.0 / k;
      const double scale = std::max(std::abs(target), coords_.squaredNorm());
      if (std::abs(minkowski_dot(coords_, coords_) - target) > tol * scale || coords_(0) <= 0)
        throw DomainError("point is not on the upper sheet of the hyperboloid");
      break;
    }
  }
}

double distance(const ModelPoint& a, const ModelPoint& b) {
  if (a.kappa() != b.kappa() || a.dim() != b.dim())
    throw ShapeError("distance between points of different model spaces");
  const Curvature kappa = a.kappa();
  const double k = kappa.value();
  switch (kappa.regime()) {
    case Regime::Flat:
      return (a.coords() - b.coords()).norm();
    case Regime::Spherical: {
      const double c = std::clamp(k * a.coords().dot(b.coords()), -1.0, 1.0);
      return std::acos(c) / kappa.root();
    }
    case Regime::Hyperbolic: {
      const double c = std::max(k * minkowski_dot(a.coords(), b.coords()), 1.0);
      return std::acosh(c) / kappa.root();
    }
  }
  return 0.0;
}

double default_radius_bound(Curvature kappa) {
  return 3.0 / std::sqrt(std::max(std::abs(kappa.value()), 1.0));
}

namespace {

Eigen::VectorXd gaussian(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

Eigen::VectorXd unit_direction(Rng& rng, int n) {
  Eigen::VectorXd v;
  double norm;
  do {
    v = gaussian(rng, n);
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

}  // namespace

std::vector<ModelPoint> sample(Curvature kappa, int dim, int count, std::uint64_t seed,
                               std::optional<double> radius_bound) {
  if (count < 1) throw ArgumentError("sample count must be at least 1");
  if (dim < 1) throw ArgumentError("sample dimension must be at least 1");
  const double radius = radius_bound.value_or(default_radius_bound(kappa));
  if (!(radius > 0) || !std::isfinite(radius))
    throw ArgumentError("radius bound must be positive and finite");

  Rng rng(seed);
  std::vector<ModelPoint> points;
  points.reserve(count);
  for (int p = 0; p < count; ++p) {
    switch (kappa.regime()) {
      case Regime::Spherical: {
        Eigen::VectorXd x = unit_direction(rng, dim + 1) / kappa.root();
        points.emplace_back(kappa, dim, std::move(x));
        break;
      }
      case Regime::Flat: {
        const Eigen::VectorXd u = unit_direction(rng, dim);
        const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
        points.emplace_back(kappa, dim, r * u);
        break;
      }
      case Regime::Hyperbolic: {
        const Eigen::VectorXd u = unit_direction(rng, dim);
        const double t = kappa.root() * rng.uniform(0.0, radius);
        Eigen::VectorXd x(dim + 1);
        x(0) = std::cosh(t);
        x.tail(dim) = std::sinh(t) * u;
        points.emplace_back(kappa, dim, x / kappa.root());
        break;
      }
    }
  }
  return points;
}

DistanceMatrix pairwise_distances(std::span<const ModelPoint> points) {
  if (points.empty()) throw ShapeError("pairwise_distances needs at least one point");
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& p : points)
    if (p.kappa() != points[0].kappa() || p.dim() != points[0].dim())
      throw ShapeError("pairwise_distances needs points from a single model space");

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = distance(points[i], points[j]);
  return DistanceMatrix(std::move(d));
}

}  // namespace kptol
