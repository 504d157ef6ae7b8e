#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wittsat/encoding.hpp"
#include "wittsat/errors.hpp"
#include "wittsat/geometry.hpp"

using namespace wittsat;

namespace {

WittVector p(int i) { return {i - 1, WittKind::P}; }
WittVector q(int i) { return {i - 1, WittKind::Q}; }

SignVector signs_of_mask(int n, std::uint64_t minus) {
  std::vector<int> eps;
  for (int i = 0; i < n; ++i)
    eps.push_back(((minus >> i) & 1u) ? -1 : 1);
  return SignVector(eps);
}

// Exhaustive: is every sign vector matched by some pattern?
bool covered_by_enumeration(const std::vector<TernaryPattern> &ps, int n) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    SignVector eps = signs_of_mask(n, m);
    bool hit = false;
    for (const auto &pt : ps)
      hit = hit || pt.matches(eps);
    if (!hit)
      return false;
  }
  return true;
}

} // namespace

TEST(Planes, TotallyNull) {
  std::vector<WittVector> ok{p(1), q(2)};
  std::vector<WittVector> bad{p(1), q(1)};
  EXPECT_TRUE(spans_totally_null(ok));
  EXPECT_FALSE(spans_totally_null(bad));
  EXPECT_THROW(TotallyNullPlane{bad}, InvalidArgument);
}

TEST(Planes, InclusionAndIntersection) {
  TotallyNullPlane a({q(3), p(1)});
  TotallyNullPlane b({p(1), q(2), q(3)});
  EXPECT_EQ(a.to_string(), "span{p1, q3}");
  EXPECT_TRUE(a.is_subspace_of(b));
  EXPECT_FALSE(b.is_subspace_of(a));
  TotallyNullPlane c({q(1), q(2), q(3)});
  EXPECT_EQ(b.intersect(c), TotallyNullPlane({q(2), q(3)}));
  EXPECT_TRUE(c.contains(q(1)));
  EXPECT_FALSE(c.contains(p(1)));
}

TEST(Planes, AssignmentConvention) {
  Assignment sigma(std::vector<bool>{true, false, true});
  SignVector eps = mtnp_of_assignment(sigma);
  EXPECT_EQ(eps.to_string(), "-+-");
  EXPECT_EQ(assignment_of(eps), sigma);
  EXPECT_EQ(plane_of(eps), TotallyNullPlane({q(1), p(2), q(3)}));
  // The same plane from the spinor side.
  EXPECT_EQ(TotallyNullPlane(mtnp_of_spinor(assignment_term(sigma))), plane_of(eps));
}

TEST(Planes, ClausePlane) {
  Clause c = Clause::from_dimacs({1, -2});
  EXPECT_EQ(tnp_of_clause(c, 2), TotallyNullPlane({p(1), q(2)}));
  EXPECT_EQ(induced_pattern(c, 3).to_string(), "+-*");
  EXPECT_THROW(tnp_of_clause(Clause::from_dimacs({1, -1}), 2), InvalidArgument);
  EXPECT_THROW(tnp_of_clause(Clause::from_dimacs({3}), 2), InvalidArgument);
}

TEST(Compatibility, TriangleExhaustive) {
  for (int n = 1; n <= 4; ++n) {
    CnfFormula all;
    all.n = n;
    oracle::Gen g(n);
    // every clause over n variables, by sign code per position
    std::uint64_t codes = 1;
    for (int i = 0; i < n; ++i)
      codes *= 3;
    for (std::uint64_t code = 1; code < codes; ++code) {
      std::vector<Literal> lits;
      std::uint64_t c = code;
      for (int i = 0; i < n; ++i, c /= 3)
        if (c % 3)
          lits.push_back({i, c % 3 == 2});
      Clause cl(lits);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        Assignment sigma = Assignment::from_mask(n, s);
        bool expected = !oracle::clause_true(cl, s);
        ASSERT_EQ(compatible_by_literals(cl, sigma), expected);
        ASSERT_EQ(compatible_by_idempotent(cl, sigma), expected);
        ASSERT_EQ(compatible_by_planes(cl, sigma), expected);
        ASSERT_EQ(compatible(cl, sigma, CheckMode::verify), expected);
      }
    }
  }
}

TEST(Cover, SmallUnsatInstance) {
  auto f = parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  auto ps = cover_patterns(f);
  EXPECT_TRUE(covers(ps, 2));
  EXPECT_FALSE(witness_uncovered(ps, 2));
}

TEST(Cover, EmptyClauseCoversEverything) {
  auto f = parse_dimacs("p cnf 3 1\n0\n");
  auto ps = cover_patterns(f);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].to_string(), "***");
  EXPECT_TRUE(covers(ps, 3));
}

TEST(Cover, NoPatternsLeaveAWitness) {
  std::vector<TernaryPattern> none;
  auto w = witness_uncovered(none, 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->n(), 3);
}

TEST(Cover, AgreesWithEnumerationAndTruthTable) {
  oracle::Gen g(41);
  int unsat = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    int n = g.uniform(1, 7);
    CnfFormula f = g.formula(n, g.uniform(0, 6 * n), 3);
    auto ps = cover_patterns(f);
    bool expected = covered_by_enumeration(ps, n);
    ASSERT_EQ(expected, oracle::model_masks(f).empty());
    CoverStats st;
    auto w = witness_uncovered(ps, n, &st);
    ASSERT_EQ(!w, expected);
    unsat += expected;
    if (w) {
      for (const auto &pt : ps)
        ASSERT_FALSE(pt.matches(*w));
      ASSERT_TRUE(oracle::formula_true(f, assignment_of(*w).mask()));
    }
  }
  EXPECT_GT(unsat, 200);
}

TEST(Cover, WideFormula) {
  // 40 unit clauses leave one witness; the unate shortcut needs no splits.
  CnfFormula f;
  f.n = 40;
  for (int i = 0; i < 40; ++i)
    f.clauses.push_back(Clause({{i, i % 3 == 0}}));
  CoverStats st;
  auto w = witness_uncovered(cover_patterns(f), 40, &st);
  ASSERT_TRUE(w);
  EXPECT_TRUE(f.satisfied_by(assignment_of(*w)));
  EXPECT_EQ(st.splits, 0u);
}

TEST(Cover, WidthMismatch) {
  std::vector<TernaryPattern> ps{TernaryPattern::parse("+-"), TernaryPattern::parse("+")};
  EXPECT_THROW(covers(ps, 2), DimensionMismatch);
}

TEST(Patterns, ParseAndDump) {
  auto ps = parse_pattern_dump("c header\n+-*\n\n# note\n**-\n");
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].fixed_count(), 2);
  EXPECT_EQ(ps[1].cardinality(), 4u);
  EXPECT_EQ(parse_pattern_dump(write_pattern_dump(ps)), ps);
  EXPECT_THROW(parse_pattern_dump("+-\n+\n"), ParseError);
  EXPECT_THROW(parse_pattern_dump("+x\n"), ParseError);
}

TEST(ClauseSpinor, ExpansionPlanesMeetInClausePlane) {
  oracle::Gen g(42);
  for (int trial = 0; trial < 200; ++trial) {
    int n = g.uniform(1, 8);
    Clause c = g.clause(n, g.uniform(1, n));
    auto terms = psi_z_expansion(c, n);
    ASSERT_EQ(terms.size(), std::size_t{1} << (n - c.width()));
    // Oracle: a Witt vector survives iff it annihilates every term.
    std::vector<WittVector> common;
    for (int i = 1; i <= n; ++i)
      for (WittVector v : {p(i), q(i)}) {
        bool all = true;
        for (const auto &t : terms)
          all = all && annihilates(v, t);
        if (all)
          common.push_back(v);
      }
    EXPECT_EQ(TotallyNullPlane(common), tnp_of_clause(c, n));
    EXPECT_TRUE(check_intersection(c, n));
    EXPECT_EQ(in_proved_regime(c, n), c.width() < n - 2);
  }
}

TEST(ClauseSpinor, FullWidthIsTheFalsifyingAssignment) {
  Clause c = Clause::from_dimacs({1, -2, 3});
  auto terms = psi_z_expansion(c, 3);
  ASSERT_EQ(terms.size(), 1u);
  Assignment falsifier(std::vector<bool>{false, true, false});
  EXPECT_EQ(terms[0], assignment_term(falsifier));
}
