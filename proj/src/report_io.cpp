#include "kptol/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace kptol {

double round_significant(double x, int digits) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr) + 0.0;
}

double round_residual(double x, int digits) {
  if (digits < kFullDigits && std::abs(x) < kResidualFloor) return 0.0;
  return round_significant(x, digits);
}

const char* gate_name(Gate gate) { return gate == Gate::Gated ? "gated" : "ungated"; }

const char* sign_name(const SignClass& s) {
  switch (s.value) {
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
    case SignClass::Zero: break;
  }
  return "zero";
}

namespace {

Json quad_json(const std::optional<Quad>& q) {
  if (!q) return nullptr;
  const auto& i = q->indices();
  return Json::array({i[0], i[1], i[2], i[3]});
}

const char* kind_name(AxiomViolation::Kind k) {
  switch (k) {
    case AxiomViolation::Kind::NotFinite: return "not_finite";
    case AxiomViolation::Kind::Negative: return "negative";
    case AxiomViolation::Kind::Diagonal: return "diagonal";
    case AxiomViolation::Kind::Asymmetry: return "asymmetry";
    case AxiomViolation::Kind::Triangle: return "triangle";
  }
  return "unknown";
}

}  // namespace

Json report_to_json(const AnalysisReport& r, int digits) {
  const auto num = [digits](double x) { return round_significant(x, digits); };
  const auto res = [digits](double x) { return round_residual(x, digits); };
  Json j;
  j["kappa"] = num(r.kappa.value());
  j["gate"] = gate_name(r.gate);
  j["p_kappa"] = res(r.p_kappa);
  j["four_point_defect"] = res(r.four_point_defect);
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"quad", quad_json(v.quad)}, {"residual", res(v.residual)}});
  j["violations"] = std::move(violations);
  j["perimeter_skipped"] = r.perimeter_skipped;
  j["total_quads"] = r.total_quads;
  j["checked_quads"] = r.checked_quads;
  j["worst_quad"] = quad_json(r.worst);
  return j;
}

Json sign_to_json(const SignClass& s, int digits) {
  return {{"sign", sign_name(s)},
          {"value", round_significant(s.magnitude, digits)},
          {"tolerance", round_significant(s.tolerance_used, digits)}};
}

Json violations_to_json(const std::vector<AxiomViolation>& violations, int digits) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json cells = v.k >= 0 ? Json::array({v.i, v.j, v.k}) : Json::array({v.i, v.j});
    out.push_back({{"kind", kind_name(v.kind)}, {"cells", std::move(cells)},
                   {"excess", round_significant(v.excess, digits)}});
  }
  return out;
}

Json certificate_to_json(const TreeCertificate& c, int digits) {
  return {{"is_tree_metric", c.is_tree_metric},
          {"defect", round_residual(c.defect, digits)},
          {"witness", quad_json(c.witness)},
          {"metric_violations", violations_to_json(c.metric_violations, digits)}};
}

Json sweep_to_json(std::span<const SweepRow> rows, int digits) {
  const auto num = [digits](double x) { return round_significant(x, digits); };
  const auto res = [digits](double x) { return round_residual(x, digits); };
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"kappa", num(r.kappa.value())},
                   {"p_kappa", res(r.p_kappa)},
                   {"worst_quad", quad_json(r.worst)},
                   {"scaled_lhs", num(r.scaled_lhs)},
                   {"scaled_rhs", num(r.scaled_rhs)},
                   {"four_point_gap_estimate", res(r.four_point_gap_estimate)}});
  return {{"rows", std::move(out)}};
}

Json limit_to_json(double a, double b, double c, double d, std::span<const LimitRow> rows, int digits) {
  const auto num = [digits](double x) { return round_significant(x, digits); };
  const double target = std::max(a + b, c + d);
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"kappa", num(r.kappa)}, {"value", num(r.value)}, {"target", num(target)}});
  return {{"a", num(a)}, {"b", num(b)}, {"c", num(c)}, {"d", num(d)}, {"target", num(target)}, {"rows", std::move(out)}};
}

void write_json(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

void write_report(const AnalysisReport& report, std::ostream& out, int digits) {
  write_json(report_to_json(report, digits), out);
}

}  // namespace kptol
