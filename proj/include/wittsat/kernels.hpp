#pragma once

// Data-parallel kernels. Each kernel has an OpenMP version and a serial
// reference with identical results; the serial versions are kept for tests
// and benchmarks. Parallel results never depend on the thread schedule.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wittsat/clifford.hpp"
#include "wittsat/cnf.hpp"
#include "wittsat/geometry.hpp"

namespace wittsat::kernels {

/// Clause as two bit masks over variables (n <= 64).
struct ClauseMask {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  bool satisfied_by(std::uint64_t sigma) const noexcept {
    return ((sigma & pos) | (~sigma & neg)) != 0;
  }
};
std::vector<ClauseMask> clause_masks(const CnfFormula &f);

/// Model masks (bit i = variable i+1) in increasing order. n <= limit.
std::vector<std::uint64_t> enumerate_models_serial(const CnfFormula &f, int limit = 24);
std::vector<std::uint64_t> enumerate_models(const CnfFormula &f, int limit = 24);

/// eval_at over every assignment mask, indexed by mask.
std::vector<Integer> eval_table_serial(const DiagonalElement &a, int limit = 24);
std::vector<Integer> eval_table(const DiagonalElement &a, int limit = 24);

/// Smallest minus-mask (bit i set for eps_i = -1) matched by no pattern,
/// by exhaustive enumeration of {+1,-1}^n.
std::optional<std::uint64_t> first_uncovered_serial(std::span<const TernaryPattern> patterns,
                                                    int n, int limit = 24);
std::optional<std::uint64_t> first_uncovered(std::span<const TernaryPattern> patterns,
                                             int n, int limit = 24);

/// Every diagonal sign matrix lies in some T_j (numerical strict membership).
bool all_sign_matrices_covered_serial(const CnfFormula &f);
bool all_sign_matrices_covered(const CnfFormula &f);

struct SampleTally {
  std::uint64_t strict = 0;
  std::uint64_t transversal = 0;
  std::uint64_t transversal_any = 0;
  std::uint64_t det_positive = 0;
  friend bool operator==(const SampleTally &, const SampleTally &) = default;
};

/// Haar samples derive_seed(seed, i), i < samples. For n > 12 the
/// transversal_any count only tries P and its single-sign flips.
SampleTally explore_samples_serial(const CnfFormula &f, std::uint64_t samples,
                                   std::uint64_t seed);
SampleTally explore_samples(const CnfFormula &f, std::uint64_t samples,
                            std::uint64_t seed);

int max_threads();

} // namespace wittsat::kernels
