#include "wittsat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "wittsat/encoding.hpp"
#include "wittsat/errors.hpp"
#include "wittsat/gamma.hpp"
#include "wittsat/generators.hpp"
#include "wittsat/geometry.hpp"
#include "wittsat/oracle.hpp"
#include "wittsat/orthogonal.hpp"

namespace wittsat {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures; anything else is counted.
class Failures {
public:
  void add(const std::string &what) {
    if (count_++ < 3)
      notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool any() const { return count_ > 0; }
  std::string summary() const {
    return std::to_string(count_) + " failure(s): " + notes_;
  }

private:
  int count_ = 0;
  std::string notes_;
};

Outcome finish(const Failures &f, std::string ok) {
  if (f.any())
    return {false, f.summary()};
  return {true, std::move(ok)};
}

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// 1. Algebraic unsatisfiability test against the truth table.
Outcome criterion1(std::uint64_t seed, double elapsed_budget) {
  auto start = Clock::now();
  Failures fails;
  int formulas = 0;
  auto check = [&](const CnfFormula &f) {
    ++formulas;
    bool algebra = is_unsatisfiable(f);
    bool truth = !brute_force(f).satisfiable;
    if (algebra != truth)
      fails.add("disagreement on " + write_dimacs(f));
  };

  const auto small = gen::all_clauses(2, 2);
  for (std::uint32_t subset = 0; subset < (1u << small.size()); ++subset) {
    std::vector<Clause> cs;
    for (std::size_t j = 0; j < small.size(); ++j)
      if ((subset >> j) & 1u)
        cs.push_back(small[j]);
    check(gen::formula_of(2, std::move(cs)));
  }
  gen::Rng rng(seed);
  std::uniform_int_distribution<int> m(1, 4);
  for (int i = 0; i < 1000; ++i)
    check(gen::random_mixed(3, m(rng), 3, rng));

  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= elapsed_budget)
    fails.add("took " + fmt("%.2f", secs) + " s");
  return finish(fails, std::to_string(formulas) + " formulas (" +
                           std::to_string(small.size()) + " base clauses at n = 2)");
}

// 2. Algebra, cover and DPLL verdicts on random 3-SAT.
Outcome criterion2(std::uint64_t seed, double elapsed_budget) {
  auto start = Clock::now();
  Failures fails;
  int unsat = 0;
  gen::Rng rng(seed);
  std::uniform_int_distribution<int> m(12, 60);
  for (int i = 0; i < 500; ++i) {
    CnfFormula f = gen::random_ksat(12, m(rng), 3, rng());
    bool algebra = is_unsatisfiable(f);
    auto patterns = cover_patterns(f);
    bool cover = covers(patterns, f.n);
    bool solver = !dpll(f).satisfiable;
    unsat += solver;
    if (algebra != cover || cover != solver)
      fails.add("instance " + std::to_string(i) + " diverges");
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= elapsed_budget)
    fails.add("took " + fmt("%.2f", secs) + " s");
  return finish(fails, "500 instances, " + std::to_string(unsat) + " unsat, 0 divergences");
}

// 3. Support of the primitive expansion equals the model set.
Outcome criterion3(std::uint64_t seed) {
  Failures fails;
  gen::Rng rng(seed);
  std::uniform_int_distribution<int> nd(1, 10);
  std::size_t total_models = 0;
  for (int i = 0; i < 200; ++i) {
    int n = nd(rng);
    std::uniform_int_distribution<int> md(0, 5 * n);
    CnfFormula f = gen::random_mixed(n, md(rng), 3, rng);
    DiagonalElement prim = expand_primitive(encode_formula(f));
    std::set<std::uint64_t> support;
    for (const auto &[p, c] : prim.terms())
      if (c != 0)
        support.insert(p.value);
    auto truth = brute_force(f).models;
    std::set<std::uint64_t> expected(truth.begin(), truth.end());
    total_models += expected.size();
    if (support != expected)
      fails.add("instance " + std::to_string(i) + ": support " +
                std::to_string(support.size()) + " vs " +
                std::to_string(expected.size()) + " models");
  }
  return finish(fails, "200 instances, " + std::to_string(total_models) +
                           " models matched");
}

// 4. Exact matrix representation.
Outcome criterion4(std::uint64_t seed) {
  Failures fails;
  for (int n = 1; n <= 4; ++n) {
    GammaRep rep(n);
    if (!rep.generator_relations_hold())
      fails.add("generator relations fail at n = " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
      auto anti = rep.p(i) * rep.q(i) + rep.q(i) * rep.p(i);
      if (!(anti == DyadicMatrix::identity(rep.dim())))
        fails.add("{p, q} != 1");
    }
  }
  gen::Rng rng(seed);
  std::uniform_int_distribution<int> nd(1, 4);
  for (int i = 0; i < 1000; ++i) {
    int n = nd(rng);
    GammaRep rep(n);
    DiagonalElement a = gen::random_diagonal(n, 4, rng);
    DiagonalElement b = gen::random_diagonal(n, 4, rng);
    if (!(matrix_of(rep, diag_mul(a, b)) == matrix_of(rep, a) * matrix_of(rep, b)))
      fails.add("homomorphism fails on pair " + std::to_string(i));
    DyadicMatrix ma = matrix_of(rep, a);
    if (!ma.is_diagonal())
      fails.add("diagonal element maps off-diagonal");
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      Assignment sigma = Assignment::from_mask(n, s);
      int idx = assignment_index(sigma);
      if (!(Dyadic::from_integer(eval_at(a, sigma)) == ma.at(idx, idx)))
        fails.add("eval_at differs from the diagonal entry");
    }
  }
  return finish(fails, "relations exact for n <= 4, 1000 pairs, all diagonals");
}

// 5. Annihilators of EFB terms.
Outcome criterion5() {
  Failures fails;
  const int n = 3;
  GammaRep rep(n);
  int checked = 0;
  for (int code = 0; code < 64; ++code) {
    std::vector<EfbSymbol> syms;
    for (int i = 0; i < n; ++i)
      syms.push_back(static_cast<EfbSymbol>((code >> (2 * i)) & 3));
    EfbTerm psi(syms);
    auto mtnp = mtnp_of_spinor(psi);
    DyadicMatrix mpsi = matrix_of(rep, psi);
    for (int pos = 0; pos < n; ++pos)
      for (WittKind kind : {WittKind::P, WittKind::Q}) {
        WittVector v{pos, kind};
        bool in_plane = std::find(mtnp.begin(), mtnp.end(), v) != mtnp.end();
        bool symbolic = annihilates(v, psi);
        DyadicMatrix prod = matrix_of(rep, v) * mpsi;
        bool matrix = prod.is_zero();
        ++checked;
        if (symbolic != in_plane || matrix != in_plane)
          fails.add(v.to_string() + " on " + to_string(psi));
        auto image = vector_action(v, psi);
        DyadicMatrix expected = image ? matrix_of(rep, *image) : DyadicMatrix(rep.dim());
        if (!(prod == expected))
          fails.add("vector action mismatch for " + v.to_string() + " on " + to_string(psi));
      }
  }
  return finish(fails, std::to_string(checked) + " (vector, term) pairs");
}

// 6. Intersection of the clause spinor's plane family.
Outcome criterion6(std::uint64_t seed) {
  Failures fails;
  gen::Rng rng(seed);
  std::uniform_int_distribution<int> nd(4, 8);
  for (int i = 0; i < 200; ++i) {
    int n = nd(rng);
    std::uniform_int_distribution<int> kd(1, n - 3);
    Clause c = gen::random_clause(n, kd(rng), rng);
    auto expansion = psi_z_expansion(c, n);
    if (expansion.size() != (std::size_t{1} << (n - c.width())))
      fails.add("expansion size");
    std::optional<TotallyNullPlane> meet;
    for (const auto &psi : expansion) {
      TotallyNullPlane plane(mtnp_of_spinor(psi));
      meet = meet ? meet->intersect(plane) : plane;
    }
    if (!meet || !(*meet == tnp_of_clause(c, n)))
      fails.add("clause " + std::to_string(i) + " at n = " + std::to_string(n));
  }
  return finish(fails, "200 clauses with k < n - 2");
}

// 7. Cover verdict against the truth table on small formulas.
Outcome criterion7(std::uint64_t seed) {
  Failures fails;
  int formulas = 0, unsat = 0, witnesses = 0;
  auto check = [&](const CnfFormula &f) {
    ++formulas;
    auto patterns = cover_patterns(f);
    bool covered = covers(patterns, f.n);
    bool truth_unsat = !brute_force(f).satisfiable;
    unsat += truth_unsat;
    if (covered != truth_unsat)
      fails.add("cover verdict wrong on " + write_dimacs(f));
    if (auto w = witness_uncovered(patterns, f.n)) {
      ++witnesses;
      if (!f.satisfied_by(assignment_of(*w)))
        fails.add("witness " + w->to_string() + " is not a model");
    }
  };

  for (int n = 1; n <= 2; ++n) {
    auto base = gen::all_clauses(n, n);
    for (std::uint32_t subset = 0; subset < (1u << base.size()); ++subset) {
      std::vector<Clause> cs;
      for (std::size_t j = 0; j < base.size(); ++j)
        if ((subset >> j) & 1u)
          cs.push_back(base[j]);
      check(gen::formula_of(n, std::move(cs)));
    }
  }
  gen::Rng rng(seed);
  for (int n = 3; n <= 4; ++n) {
    auto base = gen::all_clauses(n, n);
    std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
    std::uniform_int_distribution<int> md(1, 6 * n);
    for (int i = 0; i < 5000; ++i) {
      std::vector<Clause> cs;
      for (int j = md(rng); j > 0; --j)
        cs.push_back(base[pick(rng)]);
      check(gen::formula_of(n, std::move(cs)));
    }
  }
  if (formulas < 10000)
    fails.add("only " + std::to_string(formulas) + " formulas");
  return finish(fails, std::to_string(formulas) + " formulas, " +
                           std::to_string(unsat) + " unsat, " +
                           std::to_string(witnesses) + " witnesses verified");
}

// Orthogonal matrix whose eigenvalue +1 has multiplicity exactly r.
OrthogonalMatrix with_fixed_space(int n, int r, std::uint64_t seed) {
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(n, n);
  int s = n - r;
  if (s > 0) {
    Eigen::MatrixXd b = sample_orthogonal(s, derive_seed(seed, 1)).entries();
    // The component with det = (-1)^s avoids the eigenvalue 1 almost surely.
    if ((b.determinant() > 0) != (s % 2 == 0))
      b.col(0) = -b.col(0);
    block.bottomRightCorner(s, s) = b;
  }
  Eigen::MatrixXd u = sample_orthogonal(n, derive_seed(seed, 2)).entries();
  return OrthogonalMatrix(u * block * u.transpose());
}

// 8. Witt rebase of transversal pairs, rejection of the rest.
Outcome criterion8(std::uint64_t seed) {
  Failures fails;
  double worst = 0;
  int rejected = 0;
  for (int n = 2; n <= 6; ++n) {
    int found = 0;
    for (std::uint64_t i = 0; found < 100; ++i) {
      if (i > 10000) {
        fails.add("too few transversal pairs at n = " + std::to_string(n));
        break;
      }
      auto t1 = sample_orthogonal(n, derive_seed(seed, 2 * i));
      auto t2 = sample_orthogonal(n, derive_seed(seed, 2 * i + 1));
      if (eigenvalue_one_multiplicity(t1.entries().transpose() * t2.entries()) > 0)
        continue;
      ++found;
      auto basis = witt_rebase(t1, t2);
      auto r = rebase_residuals(basis, mtnp_from_isometry(t1), mtnp_from_isometry(t2));
      double m = std::max({r.pairing, r.p_null, r.q_null, r.first_plane, r.second_plane});
      worst = std::max(worst, m);
      if (!(m <= kConstructionTol))
        fails.add("residual " + fmt("%.3g", m) + " at n = " + std::to_string(n));
    }

    for (int r = 1; r <= n; ++r)
      for (std::uint64_t k = 0; k < 5; ++k) {
        auto t1 = sample_orthogonal(n, derive_seed(seed ^ 0xabcdef, 100 * n + 10 * r + k));
        auto rel = with_fixed_space(n, r, derive_seed(seed, 1000 * n + 10 * r + k));
        auto t2 = t1 * rel;
        int eig = eigenvalue_one_multiplicity(rel.entries());
        int dim = intersect_dim(mtnp_from_isometry(t1), mtnp_from_isometry(t2));
        int reported = -1;
        try {
          witt_rebase(t1, t2);
        } catch (const NotTransversal &e) {
          reported = e.dimension();
        }
        ++rejected;
        if (reported != r || eig != r || dim != r)
          fails.add("n = " + std::to_string(n) + ", r = " + std::to_string(r) +
                    ": reported " + std::to_string(reported) + ", eigen " +
                    std::to_string(eig) + ", intersect " + std::to_string(dim));
      }
  }
  return finish(fails, "500 pairs, worst residual " + fmt("%.2e", worst) + ", " +
                           std::to_string(rejected) + " non-transversal pairs rejected");
}

// 9. Explorer report on a fixed unsatisfiable instance.
Outcome criterion9(std::uint64_t seed) {
  std::vector<Clause> all;
  for (const auto &c : gen::all_clauses(3, 3))
    if (c.width() == 3)
      all.push_back(c);
  CnfFormula f = gen::formula_of(3, std::move(all));
  ExploreReport a = explore_cover(f, 1000, seed);
  ExploreReport b = explore_cover(f, 1000, seed);
  bool deterministic = a.strict_fraction == b.strict_fraction &&
                       a.transversal_fraction == b.transversal_fraction &&
                       a.transversal_any_fraction == b.transversal_any_fraction &&
                       a.det_positive_fraction == b.det_positive_fraction;
  std::string detail = "discrete_cover=" + std::string(a.discrete_cover ? "true" : "false") +
                       " strict=" + fmt("%.3f", a.strict_fraction) +
                       " transversal=" + fmt("%.3f", a.transversal_fraction) +
                       " (need >= 0.99) transversal_any=" +
                       fmt("%.3f", a.transversal_any_fraction) +
                       " det+=" + fmt("%.3f", a.det_positive_fraction) +
                       (deterministic ? " deterministic" : " NOT deterministic");
  bool pass = a.discrete_cover && a.discrete_matches_cover && a.strict_fraction == 0 &&
              a.transversal_fraction >= 0.99 && deterministic;
  return {pass, detail};
}

// 10. Three readings of clause/assignment compatibility.
Outcome criterion10() {
  Failures fails;
  long pairs = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto &c : gen::all_clauses(n, n))
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        Assignment sigma = Assignment::from_mask(n, s);
        bool lit = compatible_by_literals(c, sigma);
        bool idem = compatible_by_idempotent(c, sigma);
        bool plane = compatible_by_planes(c, sigma);
        ++pairs;
        if (lit != idem || idem != plane)
          fails.add("disagreement at n = " + std::to_string(n));
      }
  return finish(fails, std::to_string(pairs) + " (clause, assignment) pairs");
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options,
                                            const CriterionCallback &on_result) {
  struct Entry {
    int id;
    const char *title;
    std::function<Outcome()> run;
  };
  const std::uint64_t s = options.seed;
  const std::vector<Entry> entries = {
      {1, "unsat element <=> truth table, n <= 3, < 10 s", [s] { return criterion1(s + 1, 10.0); }},
      {2, "algebra = cover = DPLL on random 3-SAT, n = 12, < 120 s",
       [s] { return criterion2(s + 2, 120.0); }},
      {3, "primitive support = model set, n <= 10", [s] { return criterion3(s + 3); }},
      {4, "exact matrix representation, n <= 4", [s] { return criterion4(s + 4); }},
      {5, "annihilator <=> MTNP membership, n = 3", [] { return criterion5(); }},
      {6, "clause spinor planes meet in M(z), k < n - 2", [s] { return criterion6(s + 6); }},
      {7, "cover <=> unsat, n <= 4, witnesses are models", [s] { return criterion7(s + 7); }},
      {8, "Witt rebase residuals <= 1e-9, n = 2..6", [s] { return criterion8(s + 8); }},
      {9, "explorer on unsat n = 3, 1000 Haar samples", [s] { return criterion9(s + 9); }},
      {10, "compatibility readings agree, n <= 4", [] { return criterion10(); }},
  };

  std::vector<CriterionResult> out;
  for (const auto &e : entries) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), e.id) == options.only.end())
      continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    auto start = Clock::now();
    try {
      Outcome o = e.run();
      r.pass = o.pass;
      r.detail = std::move(o.detail);
    } catch (const std::exception &ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (on_result)
      on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult &r) {
  char head[48];
  std::snprintf(head, sizeof head, "criterion %2d  %s  ", r.id, r.pass ? "PASS" : "FAIL");
  std::ostringstream os;
  os << head << r.title << " (" << fmt("%.2f", r.seconds) << " s): " << r.detail;
  return os.str();
}

} // namespace wittsat
