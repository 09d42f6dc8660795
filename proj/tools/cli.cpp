#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kptol/determinants.hpp"
#include "kptol/errors.hpp"
#include "kptol/metric_core.hpp"
#include "kptol/model_spaces.hpp"
#include "kptol/ptolemy_analysis.hpp"
#include "kptol/report_io.hpp"

namespace kptol::cli {

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) throw ArgumentError("not a finite number: '" + text + "'");
  return x;
}

std::vector<Curvature> parse_kappa_list(const std::string& text) {
  std::vector<Curvature> out;
  const std::string geom = "neg-geomspace:";
  if (text.rfind(geom, 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(geom.size()));
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw ArgumentError("neg-geomspace expects start,stop,count");
    const double start = parse_real(parts[0]);
    const double stop = parse_real(parts[1]);
    const double count = parse_real(parts[2]);
    if (!(start > 0) || !(stop > 0) || count < 1 || count != std::floor(count))
      throw ArgumentError("neg-geomspace needs positive start and stop and a positive integer count");
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      out.emplace_back(-std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (p.empty()) continue;
    out.emplace_back(parse_real(p));
  }
  return out;
}

namespace {

struct Common {
  bool full_precision = false;
  std::string json_path;
  bool header = false;

  int digits() const { return full_precision ? kFullDigits : kDefaultDigits; }
  std::string num(double x) const { return format_number(x, digits()); }
  std::string res(double x) const { return format_number(round_residual(x, digits()), digits()); }
};

std::string quad_text(const std::optional<Quad>& q) {
  if (!q) return "-";
  const auto& i = q->indices();
  return "[" + std::to_string(i[0]) + "," + std::to_string(i[1]) + "," + std::to_string(i[2]) + "," +
         std::to_string(i[3]) + "]";
}

// Writes `j` to the --json target. Returns true when that target is stdout,
// in which case the human-readable table is suppressed.
bool emit_json(const Common& c, const Json& j, std::ostream& out) {
  if (c.json_path.empty()) return false;
  if (c.json_path == "-") {
    write_json(j, out);
    return true;
  }
  std::ofstream f(c.json_path, std::ios::binary);
  if (!f) throw IoError("cannot write " + c.json_path);
  write_json(j, f);
  return false;
}

void add_common(CLI::App* sub, Common& c, bool reads_matrix) {
  sub->add_flag("--full-precision", c.full_precision, "Print numbers with 17 significant digits");
  sub->add_option("--json", c.json_path, "Also write a JSON report to this path ('-' for stdout)");
  if (reads_matrix) sub->add_flag("--header", c.header, "CSV input has a header row and column");
}

struct Options {
  Common common;
  std::string matrix;
  std::string kappa;
  std::string kappas;
  std::string gate = "gated";
  double tol = kDefaultPtolemyTol;
  double metric_tol = 1e-9;
  double tau = kDefaultSignTau;

  std::string space;
  int dim = 2;
  int count = 4;
  std::uint64_t seed = 0;
  std::optional<double> radius;
  std::string out_path;

  double a = 0, b = 0, c = 0, d = 0;
};

DistanceMatrix load(const Options& o) {
  ReadOptions ro;
  ro.header = o.common.header;
  ro.tol = o.metric_tol;
  return read_matrix(o.matrix, ro);
}

int cmd_validate(const Options& o, std::ostream& out) {
  ReadOptions ro;
  ro.header = o.common.header;
  const auto entries = parse_entries(read_file(o.matrix), ro);
  const auto violations = validate_metric(entries, o.metric_tol);
  const Json j = {{"size", entries.rows()}, {"ok", violations.empty()},
                  {"violations", violations_to_json(violations, o.common.digits())}};
  if (!emit_json(o.common, j, out)) {
    if (violations.empty()) {
      out << "metric: OK (" << entries.rows() << " points)\n";
    } else {
      out << "metric: " << violations.size() << " violation(s)\n";
      for (const auto& v : violations) out << "  " << v.describe() << '\n';
    }
  }
  return violations.empty() ? kOk : kPropertyViolated;
}

Gate parse_gate(const std::string& g) {
  if (g == "gated") return Gate::Gated;
  if (g == "ungated") return Gate::Ungated;
  throw ArgumentError("gate must be 'gated' or 'ungated'");
}

int cmd_ptolemy(const Options& o, std::ostream& out) {
  const Curvature kappa(parse_real(o.kappa));
  const Gate gate = parse_gate(o.gate);
  const auto d = load(o);
  const auto r = scan(kappa, d, gate, o.tol);
  const auto& c = o.common;
  if (!emit_json(c, report_to_json(r, c.digits()), out)) {
    out << "kappa: " << c.num(kappa.value()) << '\n'
        << "gate: " << gate_name(gate) << '\n'
        << "labelings: " << r.total_quads << " total, " << r.checked_quads << " checked, "
        << r.perimeter_skipped << " perimeter-skipped\n"
        << "p_kappa: " << c.res(r.p_kappa) << '\n'
        << "min residual: " << c.res(r.min_residual) << " at " << quad_text(r.worst) << '\n'
        << "four-point defect: " << c.res(r.four_point_defect) << '\n'
        << "violations: " << r.violations.size() << " (tolerance " << c.num(o.tol) << ")\n";
    for (const auto& v : r.violations) out << "  " << quad_text(v.quad) << "  residual " << c.res(v.residual) << '\n';
  }
  return r.violations.empty() ? kOk : kPropertyViolated;
}

int cmd_cm_det(const Options& o, std::ostream& out) {
  const Curvature kappa(parse_real(o.kappa));
  const auto d = load(o);
  const auto delta = delta_kappa(kappa, d, o.tau);
  const auto gamma = gamma_kappa(kappa, d, o.tau);
  const auto& c = o.common;
  const Json j = {{"kappa", round_significant(kappa.value(), c.digits())}, {"size", d.size()},
                  {"delta", sign_to_json(delta, c.digits())}, {"gamma", sign_to_json(gamma, c.digits())}};
  if (!emit_json(c, j, out)) {
    const auto line = [&](const char* name, const SignClass& s) {
      out << name << ": " << sign_name(s) << "  (det " << c.num(s.magnitude) << ", zero threshold "
          << c.num(s.tolerance_used) << ")\n";
    };
    out << "kappa: " << c.num(kappa.value()) << ", points: " << d.size() << '\n';
    line("delta (CM)", delta);
    line("gamma (P) ", gamma);
  }
  return kOk;
}

int cmd_tree_check(const Options& o, std::ostream& out) {
  const auto d = load(o);
  const auto cert = tree_certify(d, o.tol, o.metric_tol);
  const auto& c = o.common;
  if (!emit_json(c, certificate_to_json(cert, c.digits()), out)) {
    out << "tree metric: " << (cert.is_tree_metric ? "yes" : "no") << '\n'
        << "four-point defect: " << c.res(cert.defect) << '\n';
    if (cert.witness) out << "witness: " << quad_text(cert.witness) << '\n';
    for (const auto& v : cert.metric_violations) out << "  " << v.describe() << '\n';
  }
  return cert.is_tree_metric ? kOk : kPropertyViolated;
}

int cmd_sample(const Options& o, std::ostream& out) {
  double k;
  if (o.space == "sphere") k = o.kappa.empty() ? 1.0 : parse_real(o.kappa);
  else if (o.space == "euclidean") k = o.kappa.empty() ? 0.0 : parse_real(o.kappa);
  else if (o.space == "hyperbolic") k = o.kappa.empty() ? -1.0 : parse_real(o.kappa);
  else throw ArgumentError("unknown space '" + o.space + "' (sphere, euclidean, hyperbolic)");
  const Curvature kappa(k);
  const bool consistent = (o.space == "sphere" && k > 0) || (o.space == "euclidean" && k == 0) ||
                          (o.space == "hyperbolic" && k < 0);
  if (!consistent) throw ArgumentError("curvature sign does not match --space " + o.space);

  const auto points = sample(kappa, o.dim, o.count, o.seed, o.radius);
  const auto d = pairwise_distances(points);
  const std::string csv = matrix_to_csv(d, kFullDigits);
  if (o.out_path.empty() || o.out_path == "-") {
    out << csv;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + o.out_path);
    f << csv;
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const auto kappas = parse_kappa_list(o.kappas);
  const auto d = load(o);
  const auto rows = kappa_sweep(d, kappas);
  const auto& c = o.common;
  if (!emit_json(c, sweep_to_json(rows, c.digits()), out)) {
    out << "kappa,p_kappa,worst_quad,scaled_lhs,scaled_rhs,four_point_gap_estimate\n";
    for (const auto& r : rows)
      out << c.num(r.kappa.value()) << ',' << c.res(r.p_kappa) << ',' << quad_text(r.worst) << ','
          << c.num(r.scaled_lhs) << ',' << c.num(r.scaled_rhs) << ',' << c.res(r.four_point_gap_estimate) << '\n';
  }
  return kOk;
}

int cmd_limit(const Options& o, std::ostream& out) {
  const auto kappas = parse_kappa_list(o.kappas);
  std::vector<LimitRow> rows;
  for (Curvature k : kappas) rows.push_back({k.value(), limit_scale(k, o.a, o.b, o.c, o.d)});
  const auto& c = o.common;
  if (!emit_json(c, limit_to_json(o.a, o.b, o.c, o.d, rows, c.digits()), out)) {
    const double target = std::max(o.a + o.b, o.c + o.d);
    out << "kappa,value,max(a+b,c+d)\n";
    for (const auto& r : rows) out << c.num(r.kappa) << ',' << c.num(r.value) << ',' << c.num(target) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature-parametrized Ptolemy inequalities, Cayley-Menger determinants and tree-metric checks"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a distance matrix");
  validate->add_option("matrix", o.matrix, "CSV or JSON matrix")->required();
  validate->add_option("--tol", o.metric_tol, "Axiom tolerance");
  add_common(validate, o.common, true);

  auto* ptolemy = app.add_subcommand("ptolemy", "Scan every labeled quadruple for kappa-Ptolemy violations");
  ptolemy->add_option("matrix", o.matrix, "CSV or JSON matrix")->required();
  ptolemy->add_option("--kappa", o.kappa, "Curvature")->required();
  ptolemy->add_option("--gate", o.gate, "gated (perimeter < 2 D_kappa only) or ungated");
  ptolemy->add_option("--tol", o.tol, "Violation tolerance on residuals");
  ptolemy->add_option("--metric-tol", o.metric_tol, "Symmetry tolerance when reading");
  add_common(ptolemy, o.common, true);

  auto* cmdet = app.add_subcommand("cm-det", "Classify the signs of the CM and P determinants");
  cmdet->add_option("matrix", o.matrix, "CSV or JSON matrix")->required();
  cmdet->add_option("--kappa", o.kappa, "Nonzero curvature")->required();
  cmdet->add_option("--tau", o.tau, "Relative zero threshold");
  add_common(cmdet, o.common, true);

  auto* tree = app.add_subcommand("tree-check", "Certify a tree metric via the four-point condition");
  tree->add_option("matrix", o.matrix, "CSV or JSON matrix")->required();
  tree->add_option("--tol", o.tol, "Four-point defect tolerance");
  tree->add_option("--metric-tol", o.metric_tol, "Axiom tolerance");
  add_common(tree, o.common, true);

  auto* samp = app.add_subcommand("sample", "Sample a model space and write the distance matrix as CSV");
  samp->add_option("--space", o.space, "sphere, euclidean or hyperbolic")->required();
  samp->add_option("--kappa", o.kappa, "Curvature (defaults 1, 0, -1 by space)");
  samp->add_option("--dim", o.dim, "Dimension n")->check(CLI::PositiveNumber);
  samp->add_option("--count", o.count, "Number of points")->check(CLI::PositiveNumber);
  samp->add_option("--seed", o.seed, "PRNG seed");
  samp->add_option("--radius", o.radius, "Radius bound for euclidean/hyperbolic sampling");
  samp->add_option("--out", o.out_path, "Output CSV path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "p_kappa and scaled four-point gap for a list of curvatures");
  sweep->add_option("matrix", o.matrix, "CSV or JSON matrix")->required();
  sweep->add_option("--kappas", o.kappas, "Comma list or neg-geomspace:start,stop,count")->required();
  add_common(sweep, o.common, true);

  auto* limit = app.add_subcommand("limit", "Evaluate the scaled arcsinh limit expression");
  limit->add_option("--a", o.a)->required();
  limit->add_option("--b", o.b)->required();
  limit->add_option("--c", o.c)->required();
  limit->add_option("--d", o.d)->required();
  limit->add_option("--kappas", o.kappas, "Comma list or neg-geomspace:start,stop,count")->required();
  add_common(limit, o.common, false);

  std::vector<std::string> argv_store{"kptol"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (ptolemy->parsed()) return cmd_ptolemy(o, out);
    if (cmdet->parsed()) return cmd_cm_det(o, out);
    if (tree->parsed()) return cmd_tree_check(o, out);
    if (samp->parsed()) return cmd_sample(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (limit->parsed()) return cmd_limit(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace kptol::cli
