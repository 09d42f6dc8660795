#pragma once

#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "kptol/determinants.hpp"
#include "kptol/ptolemy_analysis.hpp"

namespace kptol {

using Json = nlohmann::ordered_json;

inline constexpr int kDefaultDigits = 9;
inline constexpr int kFullDigits = 17;

/// `x` rounded to `digits` significant digits, so that JSON serialization
/// prints exactly those digits. Negative zero becomes zero; non-finite
/// values pass through (and serialize as null).
double round_significant(double x, int digits);

/// Residuals and defects below this magnitude are rounding noise of exact
/// zeros; reduced-precision output prints them as 0.
inline constexpr double kResidualFloor = 1e-12;

/// round_significant, except that below full precision |x| < kResidualFloor
/// prints as 0.
double round_residual(double x, int digits);

const char* gate_name(Gate gate);
const char* sign_name(const SignClass& s);

/// {"kappa", "gate", "p_kappa", "four_point_defect", "violations":
/// [{"quad": [i,j,k,l], "residual"}], "perimeter_skipped", ...}; indices 0-based.
Json report_to_json(const AnalysisReport& report, int digits = kDefaultDigits);
Json sign_to_json(const SignClass& s, int digits = kDefaultDigits);
Json certificate_to_json(const TreeCertificate& cert, int digits = kDefaultDigits);
Json violations_to_json(const std::vector<AxiomViolation>& violations, int digits = kDefaultDigits);
Json sweep_to_json(std::span<const SweepRow> rows, int digits = kDefaultDigits);

struct LimitRow {
  double kappa;
  double value;
};

Json limit_to_json(double a, double b, double c, double d, std::span<const LimitRow> rows,
                   int digits = kDefaultDigits);

/// Two-space indented JSON followed by a newline.
void write_json(const Json& j, std::ostream& out);
void write_report(const AnalysisReport& report, std::ostream& out, int digits = kDefaultDigits);

}  // namespace kptol
