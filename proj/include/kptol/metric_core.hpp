#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace kptol {

/// One failed metric axiom. Indices are 0-based; `k` is only meaningful for
/// triangle violations (d(i,k) > d(i,j) + d(j,k)).
struct AxiomViolation {
  enum class Kind { NotFinite, Negative, Diagonal, Asymmetry, Triangle };
  Kind kind;
  int i = 0;
  int j = 0;
  int k = -1;
  double excess = 0.0;

  /// Human-readable, with 1-based cell indices to match CSV line/column.
  std::string describe() const;
};

/// Checks finiteness, nonnegativity, zero diagonal, symmetry and every
/// triangle inequality, all within `tol`. Throws ShapeError if not square.
std::vector<AxiomViolation> validate_metric(const Eigen::MatrixXd& entries, double tol = 1e-9);

/// Symmetric, nonnegative, zero-diagonal matrix of pairwise distances.
/// Construction enforces everything except the triangle inequality, which
/// validate_metric checks on demand.
class DistanceMatrix {
public:
  /// Throws ValidationError naming the offending cells. Entries within
  /// `sym_tol` of symmetric are averaged.
  explicit DistanceMatrix(Eigen::MatrixXd entries, double sym_tol = 1e-12);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
    return a.entries_ == b.entries_;
  }

private:
  Eigen::MatrixXd entries_;
};

inline bool is_metric(const DistanceMatrix& d, double tol = 1e-9) {
  return validate_metric(d.entries(), tol).empty();
}

// Generators ----------------------------------------------------------------

struct WeightRange {
  double lo = 0.1;
  double hi = 1.0;
};

/// Leaf-to-leaf path lengths of a random binary tree on `leaves` leaves with
/// edge weights uniform in `weights`, quantized to multiples of 2^-20 so the
/// result is an exact tree metric in double precision. Internal vertices are
/// not returned.
DistanceMatrix random_tree_metric(int leaves, std::uint64_t seed, WeightRange weights = {});

/// Star tree with one edge per leaf: d(i,j) = w_i + w_j.
DistanceMatrix star_tree_metric(const std::vector<double>& leaf_weights);

/// Euclidean distances of `points` uniform samples from the unit cube in R^3.
DistanceMatrix random_metric(int points, std::uint64_t seed);

/// Path graph metric d(i,j) = |i - j|.
DistanceMatrix path_metric(int points);

/// Corners of the unit square in cyclic order.
DistanceMatrix unit_square_metric();

// I/O -----------------------------------------------------------------------

struct ReadOptions {
  bool header = false;      ///< CSV: skip the first row and first column
  double tol = 1e-9;        ///< symmetry tolerance applied on read
};

/// Square numeric matrix from CSV or JSON text with no metric checks.
Eigen::MatrixXd parse_entries(const std::string& text, const ReadOptions& opts = {});

/// Parses either the CSV form or `{"size": n, "entries": [[...]]}`; the JSON
/// form is detected by a leading '{'. Throws ParseError or ValidationError.
DistanceMatrix parse_matrix(const std::string& text, const ReadOptions& opts = {});
DistanceMatrix read_matrix(const std::string& path, const ReadOptions& opts = {});

/// Whole file as a string; throws IoError if it cannot be opened.
std::string read_file(const std::string& path);

std::string matrix_to_csv(const DistanceMatrix& d, int digits = 17);
std::string matrix_to_json(const DistanceMatrix& d, int digits = 17);

/// printf("%.*g") of a double; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x, int digits);

}  // namespace kptol
