#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wittsat/clifford.hpp"
#include "wittsat/errors.hpp"
#include "wittsat/gamma.hpp"

using namespace wittsat;

namespace {

EfbTerm term(std::initializer_list<EfbSymbol> s, int coeff = 1) {
  return EfbTerm(std::vector<EfbSymbol>(s), coeff);
}

constexpr auto QP = EfbSymbol::QP;
constexpr auto PQ = EfbSymbol::PQ;
constexpr auto P = EfbSymbol::P;
constexpr auto Q = EfbSymbol::Q;

WittVector p(int i) { return {i - 1, WittKind::P}; }
WittVector q(int i) { return {i - 1, WittKind::Q}; }

} // namespace

//===----------------------------------------------------------------------===//
// EFB terms and the vector action
//===----------------------------------------------------------------------===//

TEST(EfbTerm, PackingRoundTrip) {
  std::vector<EfbSymbol> syms;
  for (int i = 0; i < 70; ++i)
    syms.push_back(static_cast<EfbSymbol>(i % 4));
  EfbTerm t(syms, -5);
  EXPECT_EQ(t.n(), 70);
  EXPECT_EQ(t.symbols(), syms);
  EXPECT_EQ(t.coeff(), -5);
  EXPECT_EQ(t.odd_before(4), 2);
  EXPECT_EQ(t.odd_before(69), 34);
}

TEST(EfbTerm, ParseAndPrint) {
  EfbTerm t = parse_efb_term("-2 * qp p q pq");
  EXPECT_EQ(t, term({QP, P, Q, PQ}, -2));
  EXPECT_EQ(to_string(t), "-2 * qp p q pq");
  EXPECT_THROW(parse_efb_term("1 * qp x"), ParseError);
}

TEST(VectorAction, SingleSiteTable) {
  // p qp = p, p q = pq, p pq = 0, p p = 0 and the mirror image for q.
  EXPECT_EQ(*vector_action(p(1), term({QP})), term({P}));
  EXPECT_EQ(*vector_action(p(1), term({Q})), term({PQ}));
  EXPECT_FALSE(vector_action(p(1), term({PQ})));
  EXPECT_FALSE(vector_action(p(1), term({P})));
  EXPECT_EQ(*vector_action(q(1), term({PQ})), term({Q}));
  EXPECT_EQ(*vector_action(q(1), term({P})), term({QP}));
  EXPECT_FALSE(vector_action(q(1), term({QP})));
  EXPECT_FALSE(vector_action(q(1), term({Q})));
}

TEST(VectorAction, SignFromOddFactorsBefore) {
  // p_2 passes the odd p_1 and picks up a minus sign.
  auto out = vector_action(p(2), term({P, Q}));
  ASSERT_TRUE(out);
  EXPECT_EQ(*out, term({P, PQ}, -1));
  // Even factors commute with p_2.
  EXPECT_EQ(*vector_action(p(2), term({QP, Q})), term({QP, PQ}));
}

TEST(VectorAction, OutOfRange) {
  EXPECT_THROW(vector_action(p(3), term({QP, PQ})), InvalidArgument);
}

TEST(Mtnp, KnownTerm) {
  auto gens = mtnp_of_spinor(term({PQ, QP, QP}));
  std::vector<WittVector> expected{p(1), q(2), q(3)};
  EXPECT_EQ(gens, expected);
}

TEST(Mtnp, AnnihilatorsExhaustiveAgainstMatrices) {
  // Oracle: v psi = 0 as exact matrices.
  for (int n = 1; n <= 3; ++n) {
    GammaRep rep(n);
    for (int code = 0; code < (1 << (2 * n)); ++code) {
      std::vector<EfbSymbol> syms;
      for (int i = 0; i < n; ++i)
        syms.push_back(static_cast<EfbSymbol>((code >> (2 * i)) & 3));
      EfbTerm psi(syms);
      auto plane = mtnp_of_spinor(psi);
      EXPECT_EQ(static_cast<int>(plane.size()), n);
      for (int i = 1; i <= n; ++i)
        for (WittVector v : {p(i), q(i)}) {
          bool zero = (matrix_of(rep, v) * matrix_of(rep, psi)).is_zero();
          bool listed = std::find(plane.begin(), plane.end(), v) != plane.end();
          EXPECT_EQ(zero, listed) << to_string(psi) << " " << v.to_string();
          EXPECT_EQ(annihilates(v, psi), zero);
        }
    }
  }
}

//===----------------------------------------------------------------------===//
// Diagonal elements
//===----------------------------------------------------------------------===//

TEST(Diagonal, OmegaTwoPositions) {
  // Coefficients by pattern: (qp,qp) +1, (qp,pq) -1, (pq,qp) -1, (pq,pq) +1.
  DiagonalElement w = omega_element(2);
  ASSERT_EQ(w.size(), 4u);
  auto table = oracle::dense(w);
  EXPECT_EQ(table[0b11], 1);
  EXPECT_EQ(table[0b01], -1);
  EXPECT_EQ(table[0b10], -1);
  EXPECT_EQ(table[0b00], 1);
}

TEST(Diagonal, OmegaSquaresToIdentity) {
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(diag_mul(omega_element(n), omega_element(n)), identity_element(n));
}

TEST(Diagonal, IdentityIsSumOfPrimitives) {
  for (int n = 1; n <= 5; ++n) {
    DiagonalElement e = expand_primitive(identity_element(n));
    EXPECT_EQ(e.size(), std::size_t{1} << n);
    for (const auto &[pat, c] : e.terms()) {
      EXPECT_EQ(pat.fixed_count(), n);
      EXPECT_EQ(c, 1);
    }
  }
}

TEST(Diagonal, LiteralIdempotents) {
  DiagonalElement rho = literal_element(3, 1, true);
  DiagonalElement bar = literal_element(3, 1, false);
  EXPECT_EQ(diag_mul(rho, rho), rho);
  EXPECT_EQ(diag_mul(bar, bar), bar);
  EXPECT_TRUE(is_zero(diag_mul(rho, bar)));
  EXPECT_EQ(rho + bar, identity_element(3));
}

TEST(Diagonal, ProductMatchesPointwiseOracle) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 500; ++trial) {
    int n = g.uniform(1, 6);
    auto a = g.diagonal(n, 5);
    auto b = g.diagonal(n, 5);
    auto ta = oracle::dense(a), tb = oracle::dense(b);
    auto tp = oracle::dense(diag_mul(a, b));
    auto ts = oracle::dense(a + b);
    auto td = oracle::dense(a - b);
    for (std::size_t s = 0; s < ta.size(); ++s) {
      ASSERT_EQ(tp[s], ta[s] * tb[s]);
      ASSERT_EQ(ts[s], ta[s] + tb[s]);
      ASSERT_EQ(td[s], ta[s] - tb[s]);
    }
  }
}

TEST(Diagonal, EvalMatchesOracle) {
  oracle::Gen g(12);
  for (int trial = 0; trial < 300; ++trial) {
    int n = g.uniform(1, 6);
    auto a = g.diagonal(n, 6);
    auto t = oracle::dense(a);
    for (std::uint64_t s = 0; s < t.size(); ++s) {
      ASSERT_EQ(eval_at_mask(a, s), t[s]);
      ASSERT_EQ(eval_at(a, Assignment::from_mask(n, s)), t[s]);
    }
  }
}

TEST(Diagonal, ZeroTestMatchesOracle) {
  oracle::Gen g(13);
  int zeros = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = g.uniform(1, 5);
    auto a = g.diagonal(n, 4);
    // a - a' with a' a rearrangement of a forces many genuine zeros.
    DiagonalElement b = trial % 2 ? expand_primitive(a) : g.diagonal(n, 4);
    DiagonalElement d = a - b;
    auto t = oracle::dense(d);
    bool expected = std::all_of(t.begin(), t.end(), [](const Integer &v) { return v == 0; });
    zeros += expected;
    ASSERT_EQ(is_zero(d), expected) << to_string(d);
  }
  EXPECT_GT(zeros, 400);
}

TEST(Diagonal, ZeroTestSeesThroughCancellation) {
  // qp*1 + pq*1 - 1*1 is zero although no two stored patterns coincide.
  DiagonalElement d = parse_diagonal("1 * qp 1\n1 * pq 1\n-1 * 1 1\n");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_FALSE(d.empty());
  ZeroTestStats st;
  EXPECT_TRUE(is_zero(d, &st));
  EXPECT_GE(st.splits, 1u);
}

TEST(Diagonal, SemanticVersusStructuralEquality) {
  DiagonalElement a = identity_element(2);
  DiagonalElement b = expand_primitive(a);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.structurally_equal(b));
}

TEST(Diagonal, TextRoundTrip) {
  oracle::Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = g.diagonal(g.uniform(1, 5), 5);
    auto back = parse_diagonal(to_string(a));
    EXPECT_TRUE(back.structurally_equal(a)) << to_string(a);
  }
  EXPECT_TRUE(parse_diagonal(to_string(DiagonalElement(3))).empty());
}

TEST(Diagonal, ParseErrors) {
  EXPECT_THROW(parse_diagonal("1 * qp pq\n1 * qp\n"), ParseError);
  EXPECT_THROW(parse_diagonal("1 * qp x\n"), ParseError);
  EXPECT_THROW(parse_diagonal(""), ParseError);
}

TEST(Diagonal, DimensionMismatch) {
  EXPECT_THROW(diag_mul(identity_element(2), identity_element(3)), DimensionMismatch);
  EXPECT_THROW(identity_element(2) + identity_element(3), DimensionMismatch);
}

TEST(Diagonal, ExpansionGuard) {
  EXPECT_THROW(expand_primitive(identity_element(30)), ResourceLimit);
  EXPECT_THROW(omega_element(30), ResourceLimit);
}

//===----------------------------------------------------------------------===//
// Exact matrices
//===----------------------------------------------------------------------===//

TEST(Gamma, GeneratorRelations) {
  for (int n = 1; n <= kMaxGammaN; ++n)
    EXPECT_TRUE(GammaRep(n).generator_relations_hold()) << n;
  EXPECT_THROW(GammaRep(6), ResourceLimit);
  EXPECT_THROW(GammaRep(0), InvalidArgument);
}

TEST(Gamma, WittPairing) {
  for (int n = 1; n <= 4; ++n) {
    GammaRep rep(n);
    auto id = DyadicMatrix::identity(rep.dim());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto pq = rep.p(i) * rep.q(j) + rep.q(j) * rep.p(i);
        EXPECT_EQ(pq, i == j ? id : DyadicMatrix(rep.dim()));
        EXPECT_TRUE((rep.p(i) * rep.p(j) + rep.p(j) * rep.p(i)).is_zero());
        EXPECT_TRUE((rep.q(i) * rep.q(j) + rep.q(j) * rep.q(i)).is_zero());
      }
  }
}

TEST(Gamma, OmegaIsProductOfGenerators) {
  for (int n = 1; n <= 3; ++n) {
    GammaRep rep(n);
    auto prod = DyadicMatrix::identity(rep.dim());
    for (int k = 1; k <= 2 * n; ++k)
      prod = prod * rep.gamma(k);
    EXPECT_EQ(matrix_of(rep, omega_element(n)), prod);
  }
}

TEST(Gamma, IdentityAndIdempotent) {
  GammaRep rep(3);
  EXPECT_EQ(matrix_of(rep, identity_element(3)), DyadicMatrix::identity(8));
  auto r = matrix_of(rep, literal_element(3, 0, true));
  EXPECT_EQ(r * r, r);
}

TEST(Gamma, HomomorphismOnRandomPairs) {
  oracle::Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    int n = g.uniform(1, 4);
    GammaRep rep(n);
    auto a = g.diagonal(n, 4), b = g.diagonal(n, 4);
    EXPECT_EQ(matrix_of(rep, diag_mul(a, b)), matrix_of(rep, a) * matrix_of(rep, b));
  }
}

TEST(Gamma, VectorActionAgreesExhaustively) {
  for (int n = 1; n <= 3; ++n) {
    GammaRep rep(n);
    for (int code = 0; code < (1 << (2 * n)); ++code) {
      std::vector<EfbSymbol> syms;
      for (int i = 0; i < n; ++i)
        syms.push_back(static_cast<EfbSymbol>((code >> (2 * i)) & 3));
      EfbTerm psi(syms, 3);
      for (int i = 1; i <= n; ++i)
        for (WittVector v : {p(i), q(i)}) {
          auto image = vector_action(v, psi);
          auto lhs = matrix_of(rep, v) * matrix_of(rep, psi);
          EXPECT_EQ(lhs, image ? matrix_of(rep, *image) : DyadicMatrix(rep.dim()));
        }
    }
  }
}

TEST(Gamma, AssignmentIndex) {
  EXPECT_EQ(assignment_index(Assignment(std::vector<bool>{true, true, true})), 0);
  EXPECT_EQ(assignment_index(Assignment(std::vector<bool>{false, true, true})), 4);
  EXPECT_EQ(assignment_index(Assignment(std::vector<bool>{true, true, false})), 1);
}

TEST(Dyadic, Arithmetic) {
  Dyadic half(1, 1);
  EXPECT_EQ(half + half, Dyadic(1));
  EXPECT_EQ(Dyadic(6, 2), Dyadic(3, 1));
  EXPECT_EQ((half * half).exp(), 2);
  EXPECT_EQ(Dyadic(3, 2).to_string(), "3/4");
  EXPECT_TRUE((half - half).is_zero());
  EXPECT_THROW(Dyadic::from_integer(Integer(1) << 70), ResourceLimit);
}
