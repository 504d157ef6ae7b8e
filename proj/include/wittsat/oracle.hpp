#pragma once

// Ground-truth engines that share no code with the algebraic routes.

#include <cstdint>
#include <optional>
#include <vector>

#include "wittsat/cnf.hpp"

namespace wittsat {

struct BruteForceResult {
  bool satisfiable = false;
  std::vector<std::uint64_t> models; // bit i = variable i+1, increasing
};

/// Exhaustive truth table. Throws ResourceLimit when n > limit.
BruteForceResult brute_force(const CnfFormula &f, int limit = 24);

struct DpllResult {
  bool satisfiable = false;
  std::optional<Assignment> model;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

/// Unit propagation, pure-literal elimination, and branching on the lowest
/// unassigned variable, true first. A returned model is checked against f.
DpllResult dpll(const CnfFormula &f);

} // namespace wittsat
