#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the library routine it is used to check.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "wittsat/clifford.hpp"
#include "wittsat/cnf.hpp"

namespace oracle {

using wittsat::Assignment;
using wittsat::Clause;
using wittsat::CnfFormula;
using wittsat::DiagonalElement;
using wittsat::DiagPattern;
using wittsat::DiagSymbol;
using wittsat::Integer;
using wittsat::Literal;

// Clause truth straight from the literal list.
inline bool clause_true(const Clause &c, std::uint64_t mask) {
  for (const Literal &l : c.literals()) {
    bool v = (mask >> l.var) & 1u;
    if (v != l.negated)
      return true;
  }
  return false;
}

inline bool formula_true(const CnfFormula &f, std::uint64_t mask) {
  if (f.empty_clauses > 0)
    return false;
  for (const auto &c : f.clauses)
    if (!clause_true(c, mask))
      return false;
  return true;
}

inline std::set<std::uint64_t> model_masks(const CnfFormula &f) {
  std::set<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.n); ++s)
    if (formula_true(f, s))
      out.insert(s);
  return out;
}

// Value of a diagonal element on every assignment, term by term.
inline std::vector<Integer> dense(const DiagonalElement &a) {
  std::vector<Integer> table(std::size_t{1} << a.n());
  for (const auto &[p, c] : a.terms())
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      bool hit = true;
      for (int i = 0; i < a.n() && hit; ++i) {
        bool truth = (s >> i) & 1u;
        DiagSymbol sym = p.at(i);
        hit = sym == DiagSymbol::ID || (sym == DiagSymbol::QP) == truth;
      }
      if (hit)
        table[s] += c;
    }
  return table;
}

// Hand-rolled generators.

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Clause clause(int n, int k) {
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < k) {
      int v = uniform(0, n - 1);
      bool fresh = true;
      for (int w : vars)
        fresh = fresh && w != v;
      if (fresh)
        vars.push_back(v);
    }
    std::vector<Literal> lits;
    for (int v : vars)
      lits.push_back({v, coin()});
    return Clause(std::move(lits));
  }

  CnfFormula formula(int n, int m, int max_width) {
    CnfFormula f;
    f.n = n;
    for (int j = 0; j < m; ++j)
      f.clauses.push_back(clause(n, uniform(1, std::min(n, max_width))));
    return f;
  }

  DiagonalElement diagonal(int n, int max_terms) {
    std::vector<DiagonalElement::Term> terms;
    for (int t = uniform(1, max_terms); t > 0; --t) {
      DiagPattern p;
      for (int i = 0; i < n; ++i)
        p = p.with(i, static_cast<DiagSymbol>(uniform(0, 2)));
      terms.push_back({p, Integer(uniform(-3, 3))});
    }
    return DiagonalElement::from_terms(n, std::move(terms));
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace oracle
