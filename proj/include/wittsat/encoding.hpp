#pragma once

// Boolean -> algebra encoding. A literal rho_i becomes the idempotent
// q_i p_i, its complement p_i q_i, conjunction becomes the Clifford product.
// A clause C_j is represented by z_j, the product of the complements of its
// literals, and the formula by S = prod_j (1 - z_j), which vanishes exactly
// when the formula is unsatisfiable.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittsat/clifford.hpp"
#include "wittsat/cnf.hpp"

namespace wittsat {

enum class ClauseOrder {
  given,    ///< file order
  activity, ///< clauses over frequently occurring variables first
};

struct EncodeOptions {
  std::size_t term_budget = std::size_t{1} << 20;
  ClauseOrder order = ClauseOrder::given;
};

struct EncodeStats {
  std::size_t factors = 0;
  std::size_t final_terms = 0;
  std::size_t max_terms = 0;
  std::size_t dropped_tautologies = 0;
  std::uint64_t zero_test_splits = 0;
  std::vector<std::string> warnings;
};

/// z_j: the clause's falsifying partial assignment as a single pattern.
/// A tautology has no falsifying assignment and yields the zero element; the
/// empty clause yields the identity.
DiagonalElement encode_clause(const Clause &c, int n);

/// S * (1 - z) for a single-pattern z, rewritten with 1 = rho + rho-bar so
/// that the result never holds more overlapping terms than S does.
DiagonalElement multiply_complement(const DiagonalElement &s, DiagPattern z);

/// The formula element S = prod_j (1 - z_j), left to right in the chosen
/// clause order. Throws ResourceLimit when an intermediate product holds more
/// than options.term_budget patterns.
DiagonalElement encode_formula(const CnfFormula &f,
                               const EncodeOptions &options = {},
                               EncodeStats *stats = nullptr);

/// True iff encode_formula(f) is the zero element (semantic zero test).
bool is_unsatisfiable(const CnfFormula &f, const EncodeOptions &options = {},
                      EncodeStats *stats = nullptr);

/// The coordinate of `a` on the primitive idempotent of `sigma`.
Integer substitute(const Assignment &sigma, const DiagonalElement &a);

/// Satisfying assignments read off the primitive expansion of S, sorted.
/// Throws ResourceLimit when n > enumeration_limit.
std::vector<Assignment> models(const CnfFormula &f, int enumeration_limit = 24,
                               const EncodeOptions &options = {});

/// Number of models: the sum of S over all primitive idempotents.
Integer count_models(const CnfFormula &f, const EncodeOptions &options = {});

/// Some assignment on which `s` is nonzero, if a stored term gives one.
/// Free positions are set to false.
std::optional<Assignment> model_from_element(const DiagonalElement &s);

/// Clause indices in the order encode_formula multiplies them.
std::vector<std::size_t> clause_order(const CnfFormula &f, ClauseOrder order);

} // namespace wittsat
