#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "kptol/kappa_functions.hpp"
#include "kptol/random.hpp"

using namespace kptol;
using std::numbers::pi;

// Reference values from tests/oracles/derive_values.py (mpmath, 40 digits).
constexpr double kCosh1 = 1.5430806348152437785;
constexpr double kSinh2 = 3.6268604078470187677;
constexpr double kLogSinh1 = 0.16143936157119563361;
constexpr double kLogSinh50 = 49.306852819440054691;
constexpr double kLogSinh100 = 99.306852819440054691;

TEST_CASE("curvature rejects non-finite values") {
  CHECK_THROWS_AS(Curvature(std::nan("")), DomainError);
  CHECK_THROWS_AS(Curvature(std::numeric_limits<double>::infinity()), DomainError);
  CHECK(Curvature(-2).regime() == Regime::Hyperbolic);
  CHECK(Curvature(0).regime() == Regime::Flat);
  CHECK(Curvature(3).sign() == 1);
}

TEST_CASE("c_kappa examples") {
  CHECK(c_kappa(Curvature(1), pi) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(c_kappa(Curvature(0), 3.2) == 3.2);
  CHECK(c_kappa(Curvature(-1), 1.0) == doctest::Approx(kCosh1).epsilon(1e-14));
  CHECK_THROWS_AS(c_kappa(Curvature(1), std::nan("")), DomainError);
}

TEST_CASE("s_kappa examples") {
  CHECK(s_kappa(Curvature(1), pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s_kappa(Curvature(0), 0.0) == 0.0);
  CHECK(s_kappa(Curvature(-4), 1.0) == doctest::Approx(kSinh2).epsilon(1e-14));
  CHECK_THROWS_AS(s_kappa(Curvature(-1), std::nan("")), DomainError);
  // negative t is evaluated as written
  CHECK(s_kappa(Curvature(-1), -1.0) == doctest::Approx(-std::sinh(1.0)));
}

TEST_CASE("kernels are usable at extended precision") {
  const long double c = c_kappa(Curvature(-1), 1.0L);
  CHECK(static_cast<double>(c) == doctest::Approx(kCosh1).epsilon(1e-15));
}

TEST_CASE("diameter") {
  CHECK(diameter(Curvature(1)) == doctest::Approx(pi));
  CHECK(diameter(Curvature(4)) == doctest::Approx(pi / 2));
  CHECK(std::isinf(diameter(Curvature(-7))));
  CHECK(std::isinf(diameter(Curvature(0))));
}

TEST_CASE("log_s_kappa_neg") {
  CHECK(log_s_kappa_neg(Curvature(-1), 0.0) == -std::numeric_limits<double>::infinity());
  CHECK(log_s_kappa_neg(Curvature(-1), 1.0) == doctest::Approx(kLogSinh1).epsilon(1e-14));
  CHECK(log_s_kappa_neg(Curvature(-10000), 0.5) == doctest::Approx(kLogSinh50).epsilon(1e-15));
  CHECK(log_s_kappa_neg(Curvature(-10000), 1.0) == doctest::Approx(kLogSinh100).epsilon(1e-15));
  // sqrt(-kappa) t = 1e8 is far beyond sinh overflow
  const double big = log_s_kappa_neg(Curvature(-1), 1e8);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(1e8 - std::numbers::ln2).epsilon(1e-15));

  CHECK_THROWS_AS(log_s_kappa_neg(Curvature(1), 1.0), RegimeError);
  CHECK_THROWS_AS(log_s_kappa_neg(Curvature(0), 1.0), RegimeError);
  CHECK_THROWS_AS(log_s_kappa_neg(Curvature(-1), -1.0), DomainError);
}

TEST_CASE("log_s_kappa_neg agrees with the direct form") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double u = std::exp(rng.uniform(std::log(1e-6), std::log(700.0)));
    const Curvature k(-rng.uniform(0.01, 100.0));
    const double t = u / k.root();
    const double direct = s_kappa(k, t);
    const double via_log = std::exp(log_s_kappa_neg(k, t));
    INFO("u = " << u);
    CHECK(std::abs(via_log - direct) <= 1e-12 * direct);
  }
}

TEST_CASE("half-angle identity c(2t) - 1 = -2 sgn(k) s(t)^2") {
  Rng rng(11);
  for (double kv : {1.0, 0.25, 4.0, -1.0, -0.25, -4.0}) {
    const Curvature k(kv);
    const double tmax = std::min(diameter(k), 100.0 / k.root());
    for (int i = 0; i < 500; ++i) {
      const double t = rng.uniform(0.0, tmax);
      const double c2 = c_kappa(k, 2 * t);
      const double s = s_kappa(k, t);
      CHECK(std::abs(c2 - 1 + 2 * k.sign() * s * s) <= 1e-10 * (1 + std::abs(c2)));
    }
  }
}

TEST_CASE("s_kappa / sqrt|kappa| approaches t as kappa -> 0") {
  for (double kv : {1e-12, -1e-12}) {
    const Curvature k(kv);
    for (double t = 0; t <= 10; t += 0.5) CHECK(std::abs(s_kappa(k, t) / k.root() - t) <= 1e-6 * t);
  }
}

TEST_CASE("s_kappa is strictly increasing on its monotone range") {
  Rng rng(5);
  for (double kv : {1.0, 0.0, -1.0, 9.0, -9.0}) {
    const Curvature k(kv);
    const double hi = k.regime() == Regime::Spherical ? diameter(k) / 2 : 20.0 / std::max(1.0, k.root());
    for (int i = 0; i < 1000; ++i) {
      double a = rng.uniform(0.0, hi);
      double b = rng.uniform(0.0, hi);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      // separate by more than rounding near the flat top of sin
      if (b - a < 1e-6) continue;
      CHECK(s_kappa(k, a) < s_kappa(k, b));
    }
  }
}

TEST_CASE("log_add_exp") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_add_exp(ninf, ninf) == ninf);
  CHECK(log_add_exp(ninf, 2.0) == 2.0);
  CHECK(log_add_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::numbers::ln2));
  CHECK(log_add_exp(0.0, 0.0) == doctest::Approx(std::numbers::ln2));
}
