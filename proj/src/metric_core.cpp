#include "kptol/metric_core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kptol/errors.hpp"
#include "kptol/random.hpp"

namespace kptol {

std::string AxiomViolation::describe() const {
  const auto cell = [](int a, int b) {
    return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
  };
  switch (kind) {
    case Kind::NotFinite: return "non-finite entry at " + cell(i, j);
    case Kind::Negative: return "negative entry at " + cell(i, j);
    case Kind::Diagonal: return "diagonal violation at " + cell(i, j) + ": nonzero self-distance";
    case Kind::Asymmetry:
      return "asymmetry between " + cell(i, j) + " and " + cell(j, i) + " (difference " +
             format_number(excess, 9) + ")";
    case Kind::Triangle:
      return "triangle violation: d" + cell(i, k) + " exceeds d" + cell(i, j) + " + d" +
             cell(j, k) + " by " + format_number(excess, 9);
  }
  return "unknown violation";
}

std::vector<AxiomViolation> validate_metric(const Eigen::MatrixXd& d, double tol) {
  if (d.rows() != d.cols()) throw ShapeError("distance matrix must be square");
  using Kind = AxiomViolation::Kind;
  const int n = static_cast<int>(d.rows());
  std::vector<AxiomViolation> out;

  bool finite = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = d(i, j);
      if (!std::isfinite(x)) {
        out.push_back({Kind::NotFinite, i, j});
        finite = false;
      } else if (i == j) {
        if (std::abs(x) > tol) out.push_back({Kind::Diagonal, i, j, -1, std::abs(x)});
      } else if (x < -tol) {
        out.push_back({Kind::Negative, i, j, -1, -x});
      }
    }
  if (!finite) return out;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(d(i, j) - d(j, i)) > tol)
        out.push_back({Kind::Asymmetry, i, j, -1, std::abs(d(i, j) - d(j, i))});

  // Each unordered triangle once: outer pair (i, k) with i < k, middle j.
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double excess = d(i, k) - (d(i, j) + d(j, k));
        if (excess > tol) out.push_back({Kind::Triangle, i, j, k, excess});
      }
  return out;
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries, double sym_tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw ShapeError("distance matrix must be square");
  if (entries_.rows() == 0) throw ShapeError("distance matrix must be nonempty");

  std::string problems;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = entries_(i, j);
      AxiomViolation v{AxiomViolation::Kind::NotFinite, i, j};
      if (!std::isfinite(x)) {
      } else if (i == j && x != 0.0) {
        v.kind = AxiomViolation::Kind::Diagonal;
      } else if (x < 0.0) {
        v.kind = AxiomViolation::Kind::Negative;
      } else if (j > i && std::abs(x - entries_(j, i)) > sym_tol) {
        v.kind = AxiomViolation::Kind::Asymmetry;
        v.excess = std::abs(x - entries_(j, i));
      } else {
        continue;
      }
      if (!problems.empty()) problems += "; ";
      problems += v.describe();
    }
  if (!problems.empty()) throw ValidationError("invalid distance matrix: " + problems);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) entries_(i, j) = entries_(j, i) = 0.5 * (entries_(i, j) + entries_(j, i));
}

// Generators ----------------------------------------------------------------

namespace {

struct Edge {
  int a;
  int b;
  double w;
};

// Single-source distances on a tree given as an edge list.
std::vector<double> tree_distances_from(int source, int vertices, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<int, double>>> adj(vertices);
  for (const auto& e : edges) {
    adj[e.a].emplace_back(e.b, e.w);
    adj[e.b].emplace_back(e.a, e.w);
  }
  std::vector<double> dist(vertices, -1.0);
  std::vector<int> stack{source};
  dist[source] = 0.0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [u, w] : adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + w;
        stack.push_back(u);
      }
  }
  return dist;
}

}  // namespace

DistanceMatrix random_tree_metric(int leaves, std::uint64_t seed, WeightRange weights) {
  if (leaves < 2) throw ArgumentError("a tree metric needs at least 2 leaves");
  if (!(weights.lo > 0) || weights.hi < weights.lo)
    throw ArgumentError("edge weight range must be positive and ordered");

  Rng rng(seed);
  // Weights are multiples of 2^-20 so every path length and every pairing
  // sum d(i,j) + d(k,l) is exact. Otherwise the equal pairing sums of a tree
  // differ by an ulp, and that ulp is amplified by exp(sqrt(-k) d) in the
  // Ptolemy residual.
  constexpr double grain = 0x1p-20;
  const auto weight = [&] {
    double w = std::round(rng.uniform(weights.lo, weights.hi) / grain) * grain;
    if (w < weights.lo) w += grain;
    if (w > weights.hi) w -= grain;
    return w;
  };

  // Leaves are vertices 0..leaves-1; internal vertices are numbered after.
  // Grow the topology by subdividing a random edge and hanging the next leaf
  // off the new vertex, then weight every edge.
  std::vector<Edge> edges{{0, 1, 0.0}};
  int next_internal = leaves;
  for (int leaf = 2; leaf < leaves; ++leaf) {
    const auto pick = static_cast<std::size_t>(rng.below(edges.size()));
    const Edge old = edges[pick];
    const int mid = next_internal++;
    edges[pick] = {old.a, mid, 0.0};
    edges.push_back({mid, old.b, 0.0});
    edges.push_back({mid, leaf, 0.0});
  }
  for (auto& e : edges) e.w = weight();

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(leaves, leaves);
  for (int i = 0; i < leaves; ++i) {
    const auto row = tree_distances_from(i, next_internal, edges);
    for (int j = 0; j < leaves; ++j) d(i, j) = row[j];
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix star_tree_metric(const std::vector<double>& w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  if (n < 2) throw ArgumentError("a star tree needs at least 2 leaves");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) d(i, j) = w[i] + w[j];
  return DistanceMatrix(std::move(d));
}

DistanceMatrix random_metric(int points, std::uint64_t seed) {
  if (points < 1) throw ArgumentError("random_metric needs at least one point");
  Rng rng(seed);
  Eigen::MatrixXd x(points, 3);
  for (int i = 0; i < points; ++i)
    for (int c = 0; c < 3; ++c) x(i, c) = rng.uniform();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(points, points);
  for (int i = 0; i < points; ++i)
    for (int j = i + 1; j < points; ++j) d(i, j) = d(j, i) = (x.row(i) - x.row(j)).norm();
  return DistanceMatrix(std::move(d));
}

DistanceMatrix path_metric(int points) {
  if (points < 1) throw ArgumentError("path_metric needs at least one point");
  Eigen::MatrixXd d(points, points);
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) d(i, j) = std::abs(i - j);
  return DistanceMatrix(std::move(d));
}

DistanceMatrix unit_square_metric() {
  const double s = std::sqrt(2.0);
  Eigen::MatrixXd d(4, 4);
  d << 0, 1, s, 1,
       1, 0, 1, s,
       s, 1, 0, 1,
       1, s, 1, 0;
  return DistanceMatrix(std::move(d));
}

// I/O -----------------------------------------------------------------------

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

struct Cell {
  double value;
  int line;
  int column;
};

std::vector<std::vector<Cell>> parse_csv_rows(const std::string& text) {
  std::vector<std::vector<Cell>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;

    std::vector<Cell> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      std::string field = line.substr(start, end - start);
      const auto first = field.find_first_not_of(" \t");
      const int column = static_cast<int>(start + (first == std::string::npos ? 0 : first)) + 1;
      const auto last = field.find_last_not_of(" \t");
      field = first == std::string::npos ? "" : field.substr(first, last - first + 1);

      double value = std::nan("");
      std::size_t used = 0;
      try {
        value = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (field.empty() || used != field.size())
        row.push_back({std::nan(""), lineno, -column});  // marked unparsed
      else
        row.push_back({value, lineno, column});

      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_csv(const std::string& text, const ReadOptions& opts) {
  auto rows = parse_csv_rows(text);
  if (opts.header && !rows.empty()) {
    rows.erase(rows.begin());
    for (auto& r : rows)
      if (!r.empty()) r.erase(r.begin());
  }
  if (rows.empty()) throw ParseError("empty matrix", 1, 1);

  const auto n = rows.size();
  Eigen::MatrixXd d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    if (r.size() != n)
      throw ParseError("expected " + std::to_string(n) + " fields, found " + std::to_string(r.size()),
                       r.front().line, 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j].column < 0) throw ParseError("malformed number", r[j].line, -r[j].column);
      d(i, j) = r[j].value;
    }
  }
  return d;
}

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Eigen::MatrixXd parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid JSON", line, column);
  }
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw ParseError("expected an object with an \"entries\" array", 1, 1);

  const auto& rows = j["entries"];
  const auto n = rows.size();
  if (j.contains("size") && (!j["size"].is_number_integer() || j["size"].get<std::size_t>() != n))
    throw ParseError("\"size\" does not match the number of rows", 1, 1);
  if (n == 0) throw ParseError("empty matrix", 1, 1);

  Eigen::MatrixXd d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries",
                       1, 1);
    for (std::size_t c = 0; c < n; ++c) {
      if (!rows[i][c].is_number())
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) + ") is not a number",
                         1, 1);
      d(i, c) = rows[i][c].get<double>();
    }
  }
  return d;
}

}  // namespace

Eigen::MatrixXd parse_entries(const std::string& text, const ReadOptions& opts) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_csv(text, opts);
}

DistanceMatrix parse_matrix(const std::string& text, const ReadOptions& opts) {
  return DistanceMatrix(parse_entries(text, opts), opts.tol);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DistanceMatrix read_matrix(const std::string& path, const ReadOptions& opts) {
  return parse_matrix(read_file(path), opts);
}

std::string matrix_to_csv(const DistanceMatrix& d, int digits) {
  std::string out;
  for (int i = 0; i < d.size(); ++i) {
    for (int j = 0; j < d.size(); ++j) {
      if (j) out += ',';
      out += format_number(d(i, j), digits);
    }
    out += '\n';
  }
  return out;
}

std::string matrix_to_json(const DistanceMatrix& d, int digits) {
  std::string out = "{\"size\": " + std::to_string(d.size()) + ", \"entries\": [";
  for (int i = 0; i < d.size(); ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < d.size(); ++j) {
      if (j) out += ", ";
      out += format_number(d(i, j), digits);
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

}  // namespace kptol
