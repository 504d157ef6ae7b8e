#include "wittsat/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#ifdef WITTSAT_HAVE_OPENMP
#include <omp.h>
#endif

#include "wittsat/errors.hpp"
#include "wittsat/orthogonal.hpp"

namespace wittsat::kernels {

namespace {

void check_enum(int n, int limit, const char *what) {
  if (n < 1)
    throw InvalidArgument("n must be at least 1");
  if (n > limit)
    throw ResourceLimit(std::string(what) + " over " + std::to_string(n) +
                        " variables exceeds limit " + std::to_string(limit));
}

bool all_satisfied(const std::vector<ClauseMask> &cm, std::uint64_t sigma) {
  for (const auto &c : cm)
    if (!c.satisfied_by(sigma))
      return false;
  return true;
}

// Blocks used to split [0, 2^n) for deterministic concatenation.
constexpr std::uint64_t kBlocks = 256;

struct CoverCube {
  std::uint64_t fixed, minus;
};

std::vector<CoverCube> cubes_of(std::span<const TernaryPattern> patterns, int n) {
  std::vector<CoverCube> out;
  for (const auto &p : patterns) {
    if (p.n() != n)
      throw DimensionMismatch(static_cast<std::size_t>(n),
                              static_cast<std::size_t>(p.n()));
    CoverCube c{0, 0};
    for (int i = 0; i < n; ++i) {
      if (p[i] == Slot::free)
        continue;
      c.fixed |= std::uint64_t{1} << i;
      if (p[i] == Slot::minus)
        c.minus |= std::uint64_t{1} << i;
    }
    out.push_back(c);
  }
  return out;
}

bool cube_hit(const std::vector<CoverCube> &cubes, std::uint64_t minus) {
  for (const auto &c : cubes)
    if (((minus ^ c.minus) & c.fixed) == 0)
      return true;
  return false;
}

bool in_some_clause_set(const OrthogonalMatrix &t, const CnfFormula &f) {
  if (f.empty_clauses > 0)
    return true;
  for (const auto &c : f.clauses)
    if (strict_membership(t, c))
      return true;
  return false;
}

SignVector signs_of(int n, std::uint64_t minus) {
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    eps[static_cast<std::size_t>(i)] = ((minus >> i) & 1u) ? -1 : 1;
  return SignVector(std::move(eps));
}

SampleTally tally_one(const CnfFormula &f, std::uint64_t seed, std::uint64_t i) {
  SampleTally t;
  const int n = f.n;
  OrthogonalMatrix m = sample_orthogonal(n, derive_seed(seed, i));
  if (m.determinant() > 0)
    ++t.det_positive;
  if (in_some_clause_set(m, f))
    ++t.strict;

  if (eigenvalue_one_multiplicity(m.entries()) == 0) {
    auto identity = OrthogonalMatrix::identity(n);
    WittBasis basis = witt_rebase(identity, m);
    auto r = rebase_residuals(basis, mtnp_from_isometry(identity),
                              mtnp_from_isometry(m));
    if (std::max({r.pairing, r.p_null, r.q_null, r.first_plane,
                  r.second_plane}) <= kConstructionTol)
      ++t.transversal;
  }

  // Transversal to some coordinate plane (1, lambda): lambda^T m = lambda m.
  auto transversal_to = [&](std::uint64_t minus) {
    Eigen::MatrixXd lm = m.entries();
    for (int r = 0; r < n; ++r)
      if ((minus >> r) & 1u)
        lm.row(r) = -lm.row(r);
    return eigenvalue_one_multiplicity(lm) == 0;
  };
  bool any = false;
  if (n <= 12) {
    for (std::uint64_t minus = 0; minus < (std::uint64_t{1} << n) && !any; ++minus)
      any = transversal_to(minus);
  } else {
    any = transversal_to(0);
    for (int b = 0; b < n && !any; ++b)
      any = transversal_to(std::uint64_t{1} << b);
  }
  if (any)
    ++t.transversal_any;
  return t;
}

} // namespace

int max_threads() {
#ifdef WITTSAT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<ClauseMask> clause_masks(const CnfFormula &f) {
  if (f.n > 64)
    throw ResourceLimit("mask evaluation supports at most 64 variables");
  std::vector<ClauseMask> out;
  out.reserve(f.clauses.size() + static_cast<std::size_t>(f.empty_clauses));
  for (const auto &c : f.clauses) {
    ClauseMask m;
    for (const auto &l : c.literals())
      (l.negated ? m.neg : m.pos) |= std::uint64_t{1} << l.var;
    out.push_back(m);
  }
  for (int i = 0; i < f.empty_clauses; ++i)
    out.push_back(ClauseMask{});
  return out;
}

//===----------------------------------------------------------------------===//
// Truth-table enumeration
//===----------------------------------------------------------------------===//

std::vector<std::uint64_t> enumerate_models_serial(const CnfFormula &f, int limit) {
  check_enum(f.n, limit, "truth-table enumeration");
  auto cm = clause_masks(f);
  std::vector<std::uint64_t> out;
  std::uint64_t total = std::uint64_t{1} << f.n;
  for (std::uint64_t s = 0; s < total; ++s)
    if (all_satisfied(cm, s))
      out.push_back(s);
  return out;
}

std::vector<std::uint64_t> enumerate_models(const CnfFormula &f, int limit) {
  check_enum(f.n, limit, "truth-table enumeration");
  auto cm = clause_masks(f);
  std::uint64_t total = std::uint64_t{1} << f.n;
  std::uint64_t blocks = std::min<std::uint64_t>(kBlocks, total);
  std::uint64_t per = (total + blocks - 1) / blocks;
  std::vector<std::vector<std::uint64_t>> parts(blocks);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::uint64_t lo = static_cast<std::uint64_t>(b) * per;
    std::uint64_t hi = std::min(total, lo + per);
    auto &part = parts[static_cast<std::size_t>(b)];
    for (std::uint64_t s = lo; s < hi; ++s)
      if (all_satisfied(cm, s))
        part.push_back(s);
  }

  std::vector<std::uint64_t> out;
  for (auto &p : parts)
    out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Integer> eval_table_serial(const DiagonalElement &a, int limit) {
  check_enum(a.n(), limit, "evaluation table");
  std::uint64_t total = std::uint64_t{1} << a.n();
  std::vector<Integer> out(total);
  for (std::uint64_t s = 0; s < total; ++s)
    out[s] = eval_at_mask(a, s);
  return out;
}

std::vector<Integer> eval_table(const DiagonalElement &a, int limit) {
  check_enum(a.n(), limit, "evaluation table");
  std::uint64_t total = std::uint64_t{1} << a.n();
  std::vector<Integer> out(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(total); ++s)
    out[static_cast<std::size_t>(s)] = eval_at_mask(a, static_cast<std::uint64_t>(s));
  return out;
}

//===----------------------------------------------------------------------===//
// Exhaustive cover enumeration
//===----------------------------------------------------------------------===//

std::optional<std::uint64_t>
first_uncovered_serial(std::span<const TernaryPattern> patterns, int n, int limit) {
  check_enum(n, limit, "cover enumeration");
  auto cubes = cubes_of(patterns, n);
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m)
    if (!cube_hit(cubes, m))
      return m;
  return std::nullopt;
}

std::optional<std::uint64_t> first_uncovered(std::span<const TernaryPattern> patterns,
                                             int n, int limit) {
  check_enum(n, limit, "cover enumeration");
  auto cubes = cubes_of(patterns, n);
  std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();

#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m) {
    auto um = static_cast<std::uint64_t>(m);
    if (um < best && !cube_hit(cubes, um))
      best = um;
  }
  if (best == std::numeric_limits<std::uint64_t>::max())
    return std::nullopt;
  return best;
}

//===----------------------------------------------------------------------===//
// Numerical cover of the sign matrices
//===----------------------------------------------------------------------===//

bool all_sign_matrices_covered_serial(const CnfFormula &f) {
  check_enum(f.n, 20, "sign matrix enumeration");
  std::uint64_t total = std::uint64_t{1} << f.n;
  for (std::uint64_t m = 0; m < total; ++m)
    if (!in_some_clause_set(OrthogonalMatrix::diagonal(signs_of(f.n, m)), f))
      return false;
  return true;
}

bool all_sign_matrices_covered(const CnfFormula &f) {
  check_enum(f.n, 20, "sign matrix enumeration");
  std::uint64_t total = std::uint64_t{1} << f.n;
  int covered = 1;
#pragma omp parallel for schedule(static) reduction(min : covered)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m) {
    auto t = OrthogonalMatrix::diagonal(signs_of(f.n, static_cast<std::uint64_t>(m)));
    if (!in_some_clause_set(t, f))
      covered = 0;
  }
  return covered == 1;
}

//===----------------------------------------------------------------------===//
// Haar sampling
//===----------------------------------------------------------------------===//

SampleTally explore_samples_serial(const CnfFormula &f, std::uint64_t samples,
                                   std::uint64_t seed) {
  SampleTally total;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SampleTally t = tally_one(f, seed, i);
    total.strict += t.strict;
    total.transversal += t.transversal;
    total.transversal_any += t.transversal_any;
    total.det_positive += t.det_positive;
  }
  return total;
}

SampleTally explore_samples(const CnfFormula &f, std::uint64_t samples,
                            std::uint64_t seed) {
  std::uint64_t strict = 0, transversal = 0, any = 0, det = 0;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : strict, transversal, any, det)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    if (failed.load(std::memory_order_relaxed))
      continue;
    try {
      SampleTally t = tally_one(f, seed, static_cast<std::uint64_t>(i));
      strict += t.strict;
      transversal += t.transversal;
      any += t.transversal_any;
      det += t.det_positive;
    } catch (...) {
      failed = true;
    }
  }
  if (failed)
    return explore_samples_serial(f, samples, seed); // rethrows on the caller's thread
  return SampleTally{strict, transversal, any, det};
}

} // namespace wittsat::kernels
