#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wittsat/errors.hpp"
#include "wittsat/oracle.hpp"

using namespace wittsat;

TEST(BruteForce, MatchesTestOracle) {
  oracle::Gen g(51);
  for (int trial = 0; trial < 300; ++trial) {
    int n = g.uniform(1, 10);
    CnfFormula f = g.formula(n, g.uniform(0, 5 * n), 3);
    auto r = brute_force(f);
    auto expected = oracle::model_masks(f);
    EXPECT_EQ(std::set<std::uint64_t>(r.models.begin(), r.models.end()), expected);
    EXPECT_TRUE(std::is_sorted(r.models.begin(), r.models.end()));
    EXPECT_EQ(r.satisfiable, !expected.empty());
  }
}

TEST(BruteForce, Guard) {
  CnfFormula f;
  f.n = 30;
  EXPECT_THROW(brute_force(f), ResourceLimit);
}

TEST(Dpll, AgreesWithTruthTable) {
  oracle::Gen g(52);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = g.uniform(1, 12);
    CnfFormula f = g.formula(n, g.uniform(0, 6 * n), 3);
    auto r = dpll(f);
    ASSERT_EQ(r.satisfiable, !oracle::model_masks(f).empty()) << write_dimacs(f);
    if (r.satisfiable) {
      ASSERT_TRUE(r.model);
      EXPECT_TRUE(oracle::formula_true(f, r.model->mask()));
    }
  }
}

TEST(Dpll, EmptyClause) {
  auto f = parse_dimacs("p cnf 2 2\n1 2 0\n0\n");
  EXPECT_FALSE(dpll(f).satisfiable);
}

TEST(Dpll, EmptyFormula) {
  CnfFormula f;
  f.n = 4;
  auto r = dpll(f);
  ASSERT_TRUE(r.satisfiable);
  EXPECT_EQ(r.model->to_string(), "FFFF");
}

TEST(Dpll, PigeonholeThreeIntoTwo) {
  // x_{i,h}: pigeon i in hole h, variable 2 i + h + 1.
  CnfFormula f;
  f.n = 6;
  for (int i = 0; i < 3; ++i)
    f.clauses.push_back(Clause::from_dimacs({2 * i + 1, 2 * i + 2}));
  for (int h = 0; h < 2; ++h)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        f.clauses.push_back(Clause::from_dimacs({-(2 * i + h + 1), -(2 * j + h + 1)}));
  auto r = dpll(f);
  EXPECT_FALSE(r.satisfiable);
  EXPECT_GT(r.decisions, 0u);
}

TEST(Dpll, LargeSatisfiableChain) {
  // x1 and (x_i -> x_{i+1}): forced by propagation alone.
  CnfFormula f;
  f.n = 200;
  f.clauses.push_back(Clause::from_dimacs({1}));
  for (int i = 1; i < 200; ++i)
    f.clauses.push_back(Clause::from_dimacs({-i, i + 1}));
  auto r = dpll(f);
  ASSERT_TRUE(r.satisfiable);
  EXPECT_EQ(r.decisions, 0u);
  EXPECT_TRUE(f.satisfied_by(*r.model));
}
