#include "wittsat/encoding.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "wittsat/errors.hpp"

namespace wittsat {

DiagonalElement encode_clause(const Clause &c, int n) {
  if (c.max_var() >= n)
    throw InvalidArgument("clause variable exceeds n");
  if (c.is_tautology())
    return DiagonalElement(n);
  DiagPattern z;
  // A clause is falsified when every literal is false: a positive literal
  // contributes rho-bar (pq), a negated one rho (qp).
  for (const auto &l : c.literals())
    z = z.with(l.var, l.negated ? DiagSymbol::QP : DiagSymbol::PQ);
  return DiagonalElement::from_terms(n, {{z, Integer(1)}});
}

DiagonalElement multiply_complement(const DiagonalElement &s, DiagPattern z) {
  std::vector<DiagonalElement::Term> out;
  out.reserve(s.size());
  for (const auto &[t, c] : s.terms()) {
    if ((t.care & z.care & (t.value ^ z.value)) != 0) {
      out.push_back({t, c}); // t z = 0
      continue;
    }
    std::uint64_t extra = z.care & ~t.care;
    if (extra == 0)
      continue; // t z = t
    // t (1 - z_1 ... z_r) = sum_l t z_1 ... z_{l-1} zbar_l
    DiagPattern prefix = t;
    while (extra != 0) {
      std::uint64_t bit = extra & (~extra + 1);
      extra &= extra - 1;
      DiagPattern piece{prefix.care | bit, prefix.value | (~z.value & bit)};
      out.push_back({piece, c});
      prefix = DiagPattern{prefix.care | bit, prefix.value | (z.value & bit)};
    }
  }
  return DiagonalElement::from_terms(s.n(), std::move(out));
}

std::vector<std::size_t> clause_order(const CnfFormula &f, ClauseOrder order) {
  std::vector<std::size_t> idx(f.clauses.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (order == ClauseOrder::activity) {
    std::vector<long> occurrences(static_cast<std::size_t>(f.n), 0);
    for (const auto &c : f.clauses)
      for (const auto &l : c.literals())
        ++occurrences[static_cast<std::size_t>(l.var)];
    std::vector<long> score(f.clauses.size(), 0);
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
      for (const auto &l : f.clauses[j].literals())
        score[j] += occurrences[static_cast<std::size_t>(l.var)];
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return score[a] > score[b];
    });
  }
  return idx;
}

DiagonalElement encode_formula(const CnfFormula &f, const EncodeOptions &options,
                               EncodeStats *stats) {
  EncodeStats local;
  EncodeStats &st = stats ? *stats : local;
  DiagonalElement s = identity_element(f.n);
  st.max_terms = 1;
  if (f.empty_clauses > 0) {
    st.warnings.push_back("empty clause: S = 0");
    st.final_terms = 0;
    return DiagonalElement(f.n);
  }
  for (std::size_t j : clause_order(f, options.order)) {
    const Clause &c = f.clauses[j];
    DiagonalElement z = encode_clause(c, f.n);
    if (z.empty()) {
      ++st.dropped_tautologies;
      st.warnings.push_back("clause " + std::to_string(j + 1) +
                            " is a tautology and was dropped");
      continue;
    }
    s = multiply_complement(s, z.terms().front().first);
    ++st.factors;
    st.max_terms = std::max(st.max_terms, s.size());
    if (s.size() > options.term_budget)
      throw ResourceLimit("term budget of " +
                          std::to_string(options.term_budget) +
                          " patterns exceeded after " +
                          std::to_string(st.factors) + " factors");
    if (s.empty())
      break; // 0 * anything = 0
  }
  st.final_terms = s.size();
  return s;
}

bool is_unsatisfiable(const CnfFormula &f, const EncodeOptions &options,
                      EncodeStats *stats) {
  EncodeStats local;
  EncodeStats &st = stats ? *stats : local;
  DiagonalElement s = encode_formula(f, options, &st);
  ZeroTestStats zs;
  bool zero = is_zero(s, &zs);
  st.zero_test_splits = zs.splits;
  return zero;
}

Integer substitute(const Assignment &sigma, const DiagonalElement &a) {
  return eval_at(a, sigma);
}

std::vector<Assignment> models(const CnfFormula &f, int enumeration_limit,
                               const EncodeOptions &options) {
  if (f.n > enumeration_limit)
    throw ResourceLimit("model enumeration over " + std::to_string(f.n) +
                        " variables exceeds limit " +
                        std::to_string(enumeration_limit));
  DiagonalElement primitive =
      expand_primitive(encode_formula(f, options), enumeration_limit);
  std::vector<Assignment> out;
  out.reserve(primitive.size());
  for (const auto &[p, c] : primitive.terms())
    if (c != 0)
      out.push_back(Assignment::from_mask(f.n, p.value));
  std::sort(out.begin(), out.end());
  return out;
}

Integer count_models(const CnfFormula &f, const EncodeOptions &options) {
  DiagonalElement s = encode_formula(f, options);
  Integer count = 0;
  for (const auto &[p, c] : s.terms()) {
    Integer weight = 1;
    weight <<= (f.n - p.fixed_count());
    count += c * weight;
  }
  return count;
}

std::optional<Assignment> model_from_element(const DiagonalElement &s) {
  for (const auto &[p, c] : s.terms()) {
    Assignment a = Assignment::from_mask(s.n(), p.value);
    if (eval_at(s, a) != 0)
      return a;
  }
  return std::nullopt;
}

} // namespace wittsat
