#pragma once

#include <stdexcept>
#include <string>

namespace kptol {

/// NaN or otherwise unusable scalar input.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Operation called for a curvature sign it is not defined on.
class RegimeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched dimensions, curvatures, or non-square matrices.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Out-of-range counts, sizes, or other arguments.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that is not a valid distance matrix.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file that cannot be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries line and column.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace kptol
