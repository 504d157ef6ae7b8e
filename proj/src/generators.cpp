#include "wittsat/generators.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "wittsat/errors.hpp"

namespace wittsat::gen {

Clause random_clause(int n, int k, Rng &rng) {
  if (k < 1 || k > n)
    throw InvalidArgument("clause width must lie in [1, n]");
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  // partial Fisher-Yates
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(vars[static_cast<std::size_t>(i)],
              vars[static_cast<std::size_t>(pick(rng))]);
  }
  std::bernoulli_distribution coin(0.5);
  std::vector<Literal> lits;
  for (int i = 0; i < k; ++i)
    lits.push_back({vars[static_cast<std::size_t>(i)], coin(rng)});
  return Clause(std::move(lits));
}

CnfFormula random_ksat(int n, int m, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Clause> cs;
  for (int j = 0; j < m; ++j)
    cs.push_back(random_clause(n, k, rng));
  return formula_of(n, std::move(cs));
}

CnfFormula random_mixed(int n, int m, int max_width, Rng &rng) {
  std::uniform_int_distribution<int> width(1, std::min(n, max_width));
  std::vector<Clause> cs;
  for (int j = 0; j < m; ++j)
    cs.push_back(random_clause(n, width(rng), rng));
  return formula_of(n, std::move(cs));
}

std::vector<Clause> all_clauses(int n, int max_width) {
  if (n > 20)
    throw ResourceLimit("clause enumeration supports n <= 20");
  std::vector<Clause> out;
  for (int k = 1; k <= std::min(n, max_width); ++k) {
    for (std::uint32_t vars = 0; vars < (1u << n); ++vars) {
      if (std::popcount(vars) != k)
        continue;
      for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
        std::vector<Literal> lits;
        int slot = 0;
        for (int v = 0; v < n; ++v)
          if ((vars >> v) & 1u)
            lits.push_back({v, ((signs >> slot++) & 1u) != 0});
        out.emplace_back(std::move(lits));
      }
    }
  }
  return out;
}

CnfFormula formula_of(int n, std::vector<Clause> clauses) {
  CnfFormula f;
  f.n = n;
  f.clauses = std::move(clauses);
  f.meta.declared_clauses = f.m();
  return f;
}

DiagonalElement random_diagonal(int n, int max_terms, Rng &rng) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<int> sym(0, 2);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<DiagonalElement::Term> terms;
  for (int t = count(rng); t > 0; --t) {
    DiagPattern p;
    for (int i = 0; i < n; ++i)
      p = p.with(i, static_cast<DiagSymbol>(sym(rng)));
    terms.push_back({p, Integer(coeff(rng))});
  }
  return DiagonalElement::from_terms(n, std::move(terms));
}

} // namespace wittsat::gen
