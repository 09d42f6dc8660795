#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "kptol/errors.hpp"

namespace kptol {

enum class Regime { Spherical, Flat, Hyperbolic };

/// Sectional curvature of a model space. The regime is derived on use so a
/// single value type covers continuous sweeps through zero.
class Curvature {
public:
  constexpr Curvature() = default;
  explicit Curvature(double kappa) : kappa_(kappa) {
    if (!std::isfinite(kappa))
      throw DomainError("curvature must be finite");
  }

  double value() const { return kappa_; }
  Regime regime() const {
    if (kappa_ > 0) return Regime::Spherical;
    if (kappa_ < 0) return Regime::Hyperbolic;
    return Regime::Flat;
  }
  int sign() const { return (kappa_ > 0) - (kappa_ < 0); }
  /// sqrt(|kappa|); zero for the flat regime.
  double root() const { return std::sqrt(std::abs(kappa_)); }

  friend bool operator==(Curvature, Curvature) = default;

private:
  double kappa_ = 0.0;
};

/// Diameter of the model space: pi / sqrt(kappa) for kappa > 0, +inf otherwise.
inline double diameter(Curvature k) {
  if (k.regime() == Regime::Spherical) return std::numbers::pi / k.root();
  return std::numeric_limits<double>::infinity();
}

namespace detail {
template <typename Scalar>
void check_arg(Scalar t) {
  if (std::isnan(t)) throw DomainError("NaN length passed to a curvature kernel");
}
}  // namespace detail

/// cos(sqrt(k) t), t, or cosh(sqrt(-k) t) depending on the sign of k.
template <typename Scalar>
Scalar c_kappa(Curvature k, Scalar t) {
  detail::check_arg(t);
  using std::cos;
  using std::cosh;
  const Scalar r = static_cast<Scalar>(k.root());
  switch (k.regime()) {
    case Regime::Spherical: return cos(r * t);
    case Regime::Hyperbolic: return cosh(r * t);
    case Regime::Flat: break;
  }
  return t;
}

/// sin(sqrt(k) t), t, or sinh(sqrt(-k) t) depending on the sign of k.
/// Strictly increasing in t for k <= 0, and on [0, D_k / 2] for k > 0.
template <typename Scalar>
Scalar s_kappa(Curvature k, Scalar t) {
  detail::check_arg(t);
  using std::sin;
  using std::sinh;
  const Scalar r = static_cast<Scalar>(k.root());
  switch (k.regime()) {
    case Regime::Spherical: return sin(r * t);
    case Regime::Hyperbolic: return sinh(r * t);
    case Regime::Flat: break;
  }
  return t;
}

/// ln sinh(u) for u >= 0 without overflow: u + ln(1 - e^{-2u}) - ln 2.
inline double log_sinh(double u) {
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  return u + std::log(-std::expm1(-2.0 * u)) - std::numbers::ln2;
}

/// ln s_k(t) for a hyperbolic curvature, finite for sqrt(-k) t far past the
/// point where sinh overflows. Returns -inf at t == 0.
inline double log_s_kappa_neg(Curvature k, double t) {
  if (k.regime() != Regime::Hyperbolic)
    throw RegimeError("log_s_kappa_neg requires kappa < 0");
  detail::check_arg(t);
  if (t < 0) throw DomainError("log_s_kappa_neg requires t >= 0");
  return log_sinh(k.root() * t);
}

/// ln(e^a + e^b), exact at -inf.
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace kptol
