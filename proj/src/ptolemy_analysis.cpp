#include "kptol/ptolemy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kptol/errors.hpp"

namespace kptol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ResidualEval {
  double value;
  int sign;
  double log_abs;  // ln|value|, finite even when value overflows
};

ResidualEval from_value(double v) {
  return {v, (v > 0) - (v < 0), v == 0 ? -kInf : std::log(std::abs(v))};
}

struct Term {
  int sign;
  double log_abs;
  double value;  // sign * exp(log_abs) when that is representable
};

Term cosh_term(int sign, double x) {
  x = std::abs(x);
  return {sign, x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2, sign * std::cosh(x)};
}

// Residual for k < 0 written with sinh x sinh y = (cosh(x+y) - cosh(x-y))/2:
//   2 res = cosh P1 + cosh P2 - cosh P0 - cosh M1 - cosh M2 + cosh M0
// with P the scaled pairing sums and M the scaled differences. The diagonal
// term cosh P0 is paired with the larger side term and their difference is
// taken as 2 sinh(mean) sinh(half gap), the gap coming from an exact
// difference of pairing sums. For a tree metric that gap is zero, which the
// naive product form loses to cancellation. Past overflow the terms are
// summed relative to the largest one.
ResidualEval evaluate_hyperbolic(Curvature kappa, const QuadDistances& q) {
  constexpr double kLinearLimit = 700.0;
  const double h = 0.5 * kappa.root();  // s(t/2) = sinh(h t)
  const double s0 = q.d13 + q.d24;
  const double s1 = q.d12 + q.d34;
  const double s2 = q.d23 + q.d41;
  const bool first = s1 >= s2;
  const double sj = first ? s1 : s2;
  const double sother = first ? s2 : s1;

  std::vector<Term> terms;
  terms.reserve(7);
  const double half_gap = 0.5 * h * (sj - s0);
  const double mean = 0.5 * h * (sj + s0);
  if (std::abs(half_gap) < 1.0) {
    if (half_gap != 0.0 && mean != 0.0) {
      const int sign = half_gap > 0 ? 1 : -1;
      const double sh = std::sinh(std::abs(half_gap));
      const double log_abs = std::log(sh) + log_sinh(mean) + std::numbers::ln2;
      terms.push_back({sign, log_abs, sign * 2.0 * sh * std::sinh(mean)});
    }
  } else {
    terms.push_back(cosh_term(1, h * sj));
    terms.push_back(cosh_term(-1, h * s0));
  }
  terms.push_back(cosh_term(1, h * sother));
  terms.push_back(cosh_term(-1, h * (q.d12 - q.d34)));
  terms.push_back(cosh_term(-1, h * (q.d23 - q.d41)));
  terms.push_back(cosh_term(1, h * (q.d13 - q.d24)));

  double top = -kInf;
  for (const auto& t : terms) top = std::max(top, t.log_abs);
  if (top < kLinearLimit) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.value;
    return from_value(0.5 * sum);
  }
  double sum = 0.0;
  for (const auto& t : terms) sum += t.sign * std::exp(t.log_abs - top);
  if (sum == 0.0) return from_value(0.0);
  const double log_abs = top + std::log(std::abs(sum)) - std::numbers::ln2;
  const int sign = sum > 0 ? 1 : -1;
  return {sign * std::exp(log_abs), sign, log_abs};
}

ResidualEval evaluate(Curvature kappa, const QuadDistances& q) {
  const auto s = [kappa](double t) { return s_kappa(kappa, 0.5 * t); };
  // Below this the product form is accurate and the cosh form would cancel
  // its constant terms.
  constexpr double kCoshFormThreshold = 1.0;
  if (kappa.regime() == Regime::Hyperbolic) {
    bool nonnegative = true;
    for (double t : {q.d12, q.d23, q.d34, q.d41, q.d13, q.d24}) {
      if (std::isnan(t)) throw DomainError("distance is NaN");
      nonnegative = nonnegative && t >= 0;
    }
    const double widest = 0.5 * kappa.root() * std::max({q.d13 + q.d24, q.d12 + q.d34, q.d23 + q.d41});
    if (nonnegative && widest > kCoshFormThreshold) return evaluate_hyperbolic(kappa, q);
  }
  return from_value(s(q.d12) * s(q.d34) + s(q.d23) * s(q.d41) - s(q.d13) * s(q.d24));
}

// True when `a` is a strictly smaller residual than `b`.
bool smaller(const ResidualEval& a, const ResidualEval& b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign > 0) return a.log_abs < b.log_abs;
  if (a.sign < 0) return a.log_abs > b.log_abs;
  return false;
}

template <typename F>
void for_each_subset(int n, F&& f) {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) f(std::array<int, 4>{a, b, c, d});
}

}  // namespace

Quad::Quad(int i, int j, int k, int l) : idx_{i, j, k, l} {
  for (int a = 0; a < 4; ++a) {
    if (idx_[a] < 0) throw ArgumentError("quad indices must be nonnegative");
    for (int b = a + 1; b < 4; ++b)
      if (idx_[a] == idx_[b]) throw ArgumentError("quad indices must be distinct");
  }
}

QuadDistances quad_distances(const Quad& q, const DistanceMatrix& d) {
  for (int i : q.indices())
    if (i >= d.size())
      throw ArgumentError("quad index " + std::to_string(i) + " out of range for a " +
                          std::to_string(d.size()) + "-point space");
  return {d(q[0], q[1]), d(q[1], q[2]), d(q[2], q[3]), d(q[3], q[0]), d(q[0], q[2]), d(q[1], q[3])};
}

std::array<Quad, 3> pairings(const std::array<int, 4>& s) {
  // Diagonals {s0 s2, s1 s3}, {s0 s3, s1 s2}, {s0 s1, s2 s3}.
  return {Quad(s[0], s[1], s[2], s[3]), Quad(s[0], s[1], s[3], s[2]), Quad(s[0], s[2], s[1], s[3])};
}

double ptolemy_residual(Curvature kappa, const QuadDistances& q) { return evaluate(kappa, q).value; }

double ptolemy_residual(Curvature kappa, const Quad& q, const DistanceMatrix& d) {
  return ptolemy_residual(kappa, quad_distances(q, d));
}

PtolemyFactors ptolemy_factors(Curvature kappa, const Quad& q, const DistanceMatrix& d) {
  const auto qd = quad_distances(q, d);
  const auto s = [kappa](double t) { return s_kappa(kappa, 0.5 * t); };
  const double l = s(qd.d13) * s(qd.d24);
  const double r1 = s(qd.d12) * s(qd.d34);
  const double r2 = s(qd.d23) * s(qd.d41);
  // B is the residual itself, taken from the same evaluation.
  return {-(l + r1 + r2), evaluate(kappa, qd).value, l - r1 + r2, l + r1 - r2};
}

double quad_perimeter(const Quad& q, const DistanceMatrix& d) { return quad_distances(q, d).perimeter(); }

bool perimeter_ok(Curvature kappa, const Quad& q, const DistanceMatrix& d) {
  return quad_perimeter(q, d) < 2.0 * diameter(kappa);
}

AnalysisReport scan(Curvature kappa, const DistanceMatrix& d, Gate gate, double tol) {
  AnalysisReport report;
  report.kappa = kappa;
  report.gate = gate;
  report.tolerance = tol;
  report.four_point_defect = four_point_defect(d).defect;

  const double bound = 2.0 * diameter(kappa);
  std::optional<ResidualEval> worst;
  for_each_subset(d.size(), [&](const std::array<int, 4>& subset) {
    for (const Quad& q : pairings(subset)) {
      ++report.total_quads;
      const auto qd = quad_distances(q, d);
      if (gate == Gate::Gated && !(qd.perimeter() < bound)) {
        ++report.perimeter_skipped;
        continue;
      }
      ++report.checked_quads;
      const auto r = evaluate(kappa, qd);
      if (r.value < -tol) report.violations.push_back({q, r.value});
      if (!worst || smaller(r, *worst)) {
        worst = r;
        report.worst = q;
      }
    }
  });
  if (worst) {
    report.min_residual = worst->value;
    report.p_kappa = -worst->value;
  }
  return report;
}

double p_kappa_constant(Curvature kappa, const DistanceMatrix& d) {
  if (d.size() < 4) throw ArgumentError("the Ptolemy constant needs at least 4 points");
  return scan(kappa, d, Gate::Ungated).p_kappa;
}

FourPointDefect four_point_defect(const DistanceMatrix& d) {
  FourPointDefect best;
  for_each_subset(d.size(), [&](const std::array<int, 4>& s) {
    const auto [a, b, c, e] = s;
    // Each candidate is labeled so that its pairing sits on the diagonals.
    std::array<std::pair<double, Quad>, 3> sums{{
        {d(a, b) + d(c, e), Quad(a, c, b, e)},
        {d(a, c) + d(b, e), Quad(a, b, c, e)},
        {d(a, e) + d(b, c), Quad(a, b, e, c)},
    }};
    std::stable_sort(sums.begin(), sums.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    const double defect = sums[0].first - sums[1].first;
    if (!best.witness || defect > best.defect) {
      best.defect = defect;
      best.witness = sums[0].second;
    }
  });
  return best;
}

TreeCertificate tree_certify(const DistanceMatrix& d, double tol, double metric_tol) {
  TreeCertificate cert;
  cert.metric_violations = validate_metric(d.entries(), metric_tol);
  const auto fp = four_point_defect(d);
  cert.defect = fp.defect;
  cert.is_tree_metric = cert.metric_violations.empty() && fp.defect <= tol;
  if (!cert.is_tree_metric && fp.defect > tol) cert.witness = fp.witness;
  return cert;
}

double limit_scale(Curvature kappa, double a, double b, double c, double d) {
  if (kappa.regime() != Regime::Hyperbolic) throw RegimeError("limit_scale requires kappa < 0");
  for (double x : {a, b, c, d})
    if (!(x >= 0) || !std::isfinite(x)) throw ArgumentError("limit_scale lengths must be finite and >= 0");

  const double half = 0.5 * kappa.root();
  const double first = log_sinh(half * a) + log_sinh(half * b);
  const double second = log_sinh(half * c) + log_sinh(half * d);
  const double log_x = log_add_exp(first, second);
  if (log_x == -kInf) return 0.0;

  // asinh(x) = ln x + ln(1 + sqrt(1 + 1/x^2)) for x >= 1.
  const double asinh_x =
      log_x < 0 ? std::asinh(std::exp(log_x)) : log_x + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * log_x)));
  return asinh_x / half;
}

std::vector<SweepRow> kappa_sweep(const DistanceMatrix& d, std::span<const Curvature> kappas) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(kappas.size());
  for (Curvature kappa : kappas) {
    const auto report = scan(kappa, d, Gate::Ungated);
    SweepRow row{kappa, report.p_kappa, report.worst, nan, nan, nan};
    if (kappa.regime() == Regime::Hyperbolic && report.worst) {
      const auto q = quad_distances(*report.worst, d);
      row.scaled_lhs = limit_scale(kappa, q.d13, q.d24, 0.0, 0.0);
      row.scaled_rhs = limit_scale(kappa, q.d12, q.d34, q.d23, q.d41);
      row.four_point_gap_estimate = row.scaled_lhs - row.scaled_rhs;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kptol
