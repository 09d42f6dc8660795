#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <doctest.h>

#include "kptol/determinants.hpp"
#include "kptol/model_spaces.hpp"
#include "kptol/random.hpp"

using namespace kptol;
using std::numbers::pi;

namespace {

// Leibniz expansion over all permutations; independent of the LU path.
double leibniz_det(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    double term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

DistanceMatrix sphere_example() {
  const double h = pi / 2;
  Eigen::MatrixXd d(4, 4);
  d << 0, h, pi, h,
       h, 0, h, pi,
       pi, h, 0, h,
       h, pi, h, 0;
  return DistanceMatrix(d);
}

Eigen::MatrixXd random_matrix(Rng& rng, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1, 1);
  return m;
}

}  // namespace

TEST_CASE("build_cm") {
  const auto cm = build_cm(Curvature(1), sphere_example());
  CHECK(cm.kind == MatrixKind::CM);
  Eigen::MatrixXd expected(4, 4);
  expected << 1, 0, -1, 0,
              0, 1, 0, -1,
              -1, 0, 1, 0,
              0, -1, 0, 1;
  CHECK((cm.entries - expected).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(build_cm(Curvature(-1), DistanceMatrix(Eigen::MatrixXd::Zero(1, 1))).entries(0, 0) == 1.0);

  Eigen::MatrixXd two(2, 2);
  two << 0, 1, 1, 0;
  const auto h = build_cm(Curvature(-1), DistanceMatrix(two)).entries;
  CHECK(h(0, 1) == doctest::Approx(1.5430806348152437785).epsilon(1e-14));
  CHECK(h(0, 0) == 1.0);

  CHECK_THROWS_AS(build_cm(Curvature(0), sphere_example()), RegimeError);
}

TEST_CASE("build_p") {
  const auto p = build_p(Curvature(1), sphere_example());
  CHECK(p.kind == MatrixKind::P);
  Eigen::MatrixXd expected(4, 4);
  expected << 0, .5, 1, .5,
              .5, 0, .5, 1,
              1, .5, 0, .5,
              .5, 1, .5, 0;
  CHECK((p.entries - expected).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(build_p(Curvature(2), DistanceMatrix(Eigen::MatrixXd::Zero(3, 3))).entries.isZero(0));

  Eigen::MatrixXd two(2, 2);
  two << 0, 1, 1, 0;
  CHECK(build_p(Curvature(-4), DistanceMatrix(two)).entries(0, 1) ==
        doctest::Approx(1.3810978455418157298).epsilon(1e-14));

  CHECK_THROWS_AS(build_p(Curvature(0), sphere_example()), RegimeError);
}

TEST_CASE("det") {
  CHECK(det(Eigen::MatrixXd::Identity(3, 3)) == 1.0);
  Eigen::Matrix2d m;
  m << 2, 1, 1, 2;
  CHECK(det(m) == doctest::Approx(3.0));
  CHECK(std::abs(det(build_p(Curvature(1), sphere_example()).entries)) < 1e-15);
  CHECK(det(Eigen::MatrixXd(0, 0)) == 1.0);
  CHECK_THROWS_AS(det(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST_CASE("det agrees with the Leibniz expansion") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const auto m = random_matrix(rng, n);
    CHECK(det(m) == doctest::Approx(leibniz_det(m)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("sign classification") {
  const auto s = classify_sign(1e-12, 1e-9);
  CHECK(s.value == SignClass::Zero);
  CHECK(s.compatible_with(1));
  CHECK(s.compatible_with(-1));
  CHECK(classify_sign(-2, 1e-9).value == SignClass::Negative);
  CHECK_FALSE(classify_sign(-2, 1e-9).compatible_with(1));
  CHECK(classify_sign(2, 1e-9).sign() == 1);

  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 3, 10.0);
  CHECK(sign_tolerance(m, 1e-9) == doctest::Approx(1e-6));
  CHECK(sign_tolerance(Eigen::MatrixXd::Constant(3, 3, 0.1), 1e-9) == doctest::Approx(1e-9));
}

TEST_CASE("delta_kappa and gamma_kappa examples") {
  const auto delta = delta_kappa(Curvature(1), sphere_example());
  CHECK(delta.value == SignClass::Zero);

  Eigen::MatrixXd two(2, 2);
  two << 0, pi / 2, pi / 2, 0;
  const auto d2 = delta_kappa(Curvature(1), DistanceMatrix(two));
  CHECK(d2.value == SignClass::Positive);
  CHECK(d2.magnitude == doctest::Approx(1.0));
  CHECK(d2.compatible_with(cm_expected_sign(Curvature(1), 2)));

  CHECK(gamma_kappa(Curvature(1), sphere_example()).value == SignClass::Zero);
}

TEST_CASE("expected signs") {
  CHECK(cm_expected_sign(Curvature(1), 3) == 1);
  CHECK(cm_expected_sign(Curvature(1), 4) == 1);
  CHECK(cm_expected_sign(Curvature(-1), 3) == 1);
  CHECK(cm_expected_sign(Curvature(-1), 2) == -1);
  CHECK(p_expected_sign(2) == -1);
  CHECK(p_expected_sign(3) == 1);
}

TEST_CASE("Desnanot-Jacobi examples") {
  CHECK(desnanot_jacobi_residual(Eigen::MatrixXd::Identity(4, 4)) == 0.0);
  const auto id = desnanot_jacobi(Eigen::MatrixXd::Identity(4, 4));
  CHECK(id.lhs == 1.0);
  CHECK(id.rhs == 1.0);

  Rng rng(42);
  Eigen::MatrixXd rep = random_matrix(rng, 5);
  rep.row(3) = rep.row(1);
  const auto t = desnanot_jacobi(rep);
  CHECK(std::abs(t.lhs) < 1e-14);
  CHECK(std::abs(t.residual()) <= 1e-12);

  Rng seeded(42);
  const auto r = desnanot_jacobi(random_matrix(seeded, 5));
  CHECK(std::abs(r.residual()) <= 1e-10 * (1 + std::abs(r.lhs) + std::abs(r.rhs)));

  CHECK_THROWS_AS(desnanot_jacobi(Eigen::MatrixXd::Identity(2, 2)), ArgumentError);
  CHECK_THROWS_AS(desnanot_jacobi(Eigen::MatrixXd::Zero(3, 4)), ShapeError);
}

TEST_CASE("Desnanot-Jacobi matches an independent Leibniz evaluation") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const auto m = random_matrix(rng, n);
    const int l = n - 1;
    const double lhs = leibniz_det(m) * leibniz_det(delete_rows_cols(m, {0, l}, {0, l}));
    const double rhs = leibniz_det(delete_rows_cols(m, {0}, {0})) * leibniz_det(delete_rows_cols(m, {l}, {l})) -
                       leibniz_det(delete_rows_cols(m, {0}, {l})) * leibniz_det(delete_rows_cols(m, {l}, {0}));
    const auto t = desnanot_jacobi(m);
    CHECK(t.lhs == doctest::Approx(lhs).epsilon(1e-9).scale(1.0));
    CHECK(t.rhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("Cayley-Menger determinant vanishes for n+2 points (all four curvatures)") {
  for (double k : {1.0, -1.0, 0.25, -0.25}) {
    for (int n = 1; n <= 3; ++n) {
      for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Curvature kappa(k);
        const auto d = pairwise_distances(sample(kappa, n, n + 2, seed * 31 + n));
        const auto s = delta_kappa(kappa, d);
        INFO("kappa=" << k << " n=" << n << " seed=" << seed << " det=" << s.magnitude);
        CHECK(s.value == SignClass::Zero);
      }
    }
  }
}

TEST_CASE("Cayley-Menger determinant sign for at most n+1 points") {
  int nonzero = 0;
  for (double k : {1.0, -1.0, 0.25, -0.25}) {
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= n + 1; ++m) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
          const Curvature kappa(k);
          const auto d = pairwise_distances(sample(kappa, n, m, seed * 131 + m));
          const auto s = delta_kappa(kappa, d);
          INFO("kappa=" << k << " n=" << n << " m=" << m << " det=" << s.magnitude);
          CHECK(s.compatible_with(cm_expected_sign(kappa, m)));
          nonzero += s.value != SignClass::Zero;
        }
      }
    }
  }
  // general position is the norm, so the sign check is not vacuous
  CHECK(nonzero > 800);
}

TEST_CASE("Ptolemaic determinant sign for n+2 points") {
  for (double k : {1.0, -1.0, 4.0, -4.0}) {
    for (int n = 2; n <= 3; ++n) {
      for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Curvature kappa(k);
        const auto d = pairwise_distances(sample(kappa, n, n + 2, seed));
        const auto s = gamma_kappa(kappa, d);
        INFO("kappa=" << k << " n=" << n << " gamma=" << s.magnitude);
        CHECK(s.compatible_with(p_expected_sign(n)));
      }
    }
  }
}

TEST_CASE("Desnanot-Jacobi holds on random matrices of size 3 to 8") {
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const auto t = desnanot_jacobi(random_matrix(rng, n));
    CHECK(std::abs(t.residual()) <= 1e-9 * (1 + std::abs(t.lhs) + std::abs(t.rhs)));
  }
}
