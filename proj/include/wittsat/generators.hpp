#pragma once

// Seeded instance generators shared by the acceptance suite, the tests and
// the benchmarks.

#include <cstdint>
#include <random>
#include <vector>

#include "wittsat/clifford.hpp"
#include "wittsat/cnf.hpp"

namespace wittsat::gen {

using Rng = std::mt19937_64;

/// k distinct variables out of n, uniform signs. Never a tautology.
Clause random_clause(int n, int k, Rng &rng);

/// m clauses of width k drawn independently (duplicates allowed).
CnfFormula random_ksat(int n, int m, int k, std::uint64_t seed);

/// m clauses with widths uniform in [1, max_width].
CnfFormula random_mixed(int n, int m, int max_width, Rng &rng);

/// Every non-tautological clause over n variables of width 1..max_width,
/// ordered by width, then by variable set, then by sign mask.
std::vector<Clause> all_clauses(int n, int max_width);

CnfFormula formula_of(int n, std::vector<Clause> clauses);

/// 1..max_terms patterns, each position QP/PQ/ID uniformly, coefficients
/// in [-3, 3] (zeros dropped by normalisation).
DiagonalElement random_diagonal(int n, int max_terms, Rng &rng);

} // namespace wittsat::gen
