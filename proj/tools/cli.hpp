#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kptol/kappa_functions.hpp"

namespace kptol::cli {

enum ExitCode : int { kOk = 0, kPropertyViolated = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Tables go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Finite real; throws ArgumentError otherwise.
double parse_real(const std::string& text);

/// Comma-separated curvatures, or "neg-geomspace:start,stop,count" for
/// -start ... -stop spaced geometrically (start, stop > 0).
std::vector<Curvature> parse_kappa_list(const std::string& text);

}  // namespace kptol::cli
