#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wittsat/encoding.hpp"
#include "wittsat/errors.hpp"

using namespace wittsat;

namespace {

// prod_j (1 - z_j) with plain ring operations, no rewriting.
DiagonalElement naive_product(const CnfFormula &f) {
  DiagonalElement s = identity_element(f.n);
  if (f.empty_clauses > 0)
    return DiagonalElement(f.n);
  for (const auto &c : f.clauses)
    s = diag_mul(s, identity_element(f.n) - encode_clause(c, f.n));
  return s;
}

} // namespace

TEST(Encoding, ClausePattern) {
  // (x1 or not x2): z = rho-bar_1 rho_2.
  DiagonalElement z = encode_clause(Clause::from_dimacs({1, -2}), 3);
  ASSERT_EQ(z.size(), 1u);
  DiagPattern p = z.terms()[0].first;
  EXPECT_EQ(p.at(0), DiagSymbol::PQ);
  EXPECT_EQ(p.at(1), DiagSymbol::QP);
  EXPECT_EQ(p.at(2), DiagSymbol::ID);
  EXPECT_TRUE(encode_clause(Clause::from_dimacs({1, -1}), 2).empty());
  EXPECT_EQ(encode_clause(Clause(), 2), identity_element(2));
}

TEST(Encoding, LiteralAndItsNegation) {
  auto f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  EXPECT_TRUE(is_unsatisfiable(f));
  auto g = parse_dimacs("p cnf 1 1\n1 0\n");
  EXPECT_FALSE(is_unsatisfiable(g));
  EXPECT_EQ(encode_formula(g), literal_element(1, 0, true));
}

TEST(Encoding, EmptyFormulaIsIdentity) {
  CnfFormula f;
  f.n = 3;
  EXPECT_EQ(encode_formula(f), identity_element(3));
  EXPECT_EQ(count_models(f), 8);
}

TEST(Encoding, EmptyClauseGivesZero) {
  auto f = parse_dimacs("p cnf 2 2\n1 2 0\n0\n");
  EXPECT_TRUE(encode_formula(f).empty());
  EXPECT_TRUE(is_unsatisfiable(f));
}

TEST(Encoding, TautologiesDropped) {
  auto f = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0\n");
  EncodeStats st;
  auto s = encode_formula(f, {}, &st);
  EXPECT_EQ(st.dropped_tautologies, 1u);
  EXPECT_EQ(st.warnings.size(), 1u);
  EXPECT_EQ(s, literal_element(2, 1, true));
}

TEST(Encoding, AgreesWithNaiveProduct) {
  oracle::Gen g(31);
  for (int trial = 0; trial < 300; ++trial) {
    CnfFormula f = g.formula(g.uniform(1, 6), g.uniform(0, 10), 3);
    EXPECT_EQ(encode_formula(f), naive_product(f)) << write_dimacs(f);
  }
}

TEST(Encoding, DisjointTerms) {
  oracle::Gen g(32);
  for (int trial = 0; trial < 200; ++trial) {
    CnfFormula f = g.formula(g.uniform(1, 8), g.uniform(0, 16), 3);
    auto prim = expand_primitive(encode_formula(f));
    for (const auto &[p, c] : prim.terms())
      ASSERT_EQ(c, 1);
  }
}

TEST(Encoding, VerdictModelsAndCountAgainstTruthTable) {
  oracle::Gen g(33);
  for (int trial = 0; trial < 400; ++trial) {
    int n = g.uniform(1, 9);
    CnfFormula f = g.formula(n, g.uniform(0, 5 * n), 3);
    auto expected = oracle::model_masks(f);

    EXPECT_EQ(is_unsatisfiable(f), expected.empty());
    EXPECT_EQ(count_models(f), Integer(expected.size()));

    std::set<std::uint64_t> got;
    for (const auto &a : models(f))
      got.insert(a.mask());
    EXPECT_EQ(got, expected);

    DiagonalElement s = encode_formula(f);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      ASSERT_EQ(substitute(Assignment::from_mask(n, m), s),
                expected.count(m) ? 1 : 0);

    if (auto a = model_from_element(s))
      EXPECT_TRUE(expected.count(a->mask()));
    else
      EXPECT_TRUE(expected.empty());
  }
}

TEST(Encoding, ClauseOrderDoesNotChangeTheElement) {
  oracle::Gen g(34);
  for (int trial = 0; trial < 100; ++trial) {
    CnfFormula f = g.formula(g.uniform(2, 8), g.uniform(1, 20), 3);
    EXPECT_EQ(encode_formula(f, {std::size_t{1} << 20, ClauseOrder::activity}),
              encode_formula(f));
    auto order = clause_order(f, ClauseOrder::activity);
    std::vector<std::size_t> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      EXPECT_EQ(sorted[i], i);
  }
}

TEST(Encoding, TermBudget) {
  oracle::Gen g(35);
  CnfFormula f = g.formula(20, 60, 3);
  EXPECT_THROW(encode_formula(f, {4, ClauseOrder::given}), ResourceLimit);
}

TEST(Encoding, ModelsGuard) {
  CnfFormula f;
  f.n = 30;
  EXPECT_THROW(models(f, 24), ResourceLimit);
  EXPECT_EQ(count_models(f), Integer(1) << 30);
}
