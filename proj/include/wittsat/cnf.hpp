#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wittsat/assignment.hpp"

namespace wittsat {

/// A variable or its complement. `var` is 0-based (DIMACS variable var+1).
struct Literal {
  int var = 0;
  bool negated = false;

  int to_dimacs() const { return negated ? -(var + 1) : var + 1; }
  static Literal from_dimacs(int lit) {
    return {(lit < 0 ? -lit : lit) - 1, lit < 0};
  }
  bool satisfied_by(const Assignment &a) const { return a[var] != negated; }

  friend auto operator<=>(const Literal &, const Literal &) = default;
};

/// A disjunction of literals. Duplicate literals are merged on construction
/// and literals are kept sorted by variable.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  static Clause from_dimacs(const std::vector<int> &lits);

  const std::vector<Literal> &literals() const noexcept { return literals_; }
  int width() const noexcept { return static_cast<int>(literals_.size()); }
  bool empty() const noexcept { return literals_.empty(); }

  /// Contains some variable in both polarities.
  bool is_tautology() const noexcept;
  int max_var() const noexcept;

  bool satisfied_by(const Assignment &a) const;
  bool falsified_by(const Assignment &a) const { return !satisfied_by(a); }

  std::vector<int> to_dimacs() const;

  friend bool operator==(const Clause &, const Clause &) = default;
  friend auto operator<=>(const Clause &a, const Clause &b) {
    return a.literals_ <=> b.literals_;
  }

private:
  std::vector<Literal> literals_;
};

struct SourceMeta {
  int declared_clauses = 0;
  std::vector<std::string> comments;
  std::vector<std::string> warnings;
};

/// A CNF formula over variables 1..n. Empty clauses read from DIMACS are
/// counted separately; any makes the formula trivially unsatisfiable.
struct CnfFormula {
  int n = 0;
  std::vector<Clause> clauses;
  int empty_clauses = 0;
  SourceMeta meta;

  int m() const noexcept {
    return static_cast<int>(clauses.size()) + empty_clauses;
  }
  bool satisfied_by(const Assignment &a) const;
};

/// Parses DIMACS CNF. Throws ParseError on a missing or malformed header,
/// non-integer tokens, "-0", or out-of-range variables. A clause count that
/// differs from the header is recorded in meta.warnings.
CnfFormula parse_dimacs(std::string_view text);

std::string write_dimacs(const CnfFormula &f);

} // namespace wittsat
