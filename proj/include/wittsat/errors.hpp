#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wittsat {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different numbers of positions.
class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

/// Malformed textual input (DIMACS, pattern dumps, matrices, element dumps).
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A configured size or term budget was exceeded.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

/// Invalid argument to an algebraic or geometric operation.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Two maximal null planes meet in a subspace of positive dimension.
class NotTransversal : public Error {
public:
  explicit NotTransversal(int dimension)
      : Error("planes are not transversal: intersection dimension " +
              std::to_string(dimension)),
        dimension_(dimension) {}
  int dimension() const noexcept { return dimension_; }

private:
  int dimension_;
};

} // namespace wittsat
