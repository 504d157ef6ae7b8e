#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wittsat/errors.hpp"
#include "wittsat/generators.hpp"
#include "wittsat/orthogonal.hpp"

using namespace wittsat;

namespace {

// 2 B(u, v) straight from the coordinates.
double pairing(const Eigen::VectorXd &u, const Eigen::VectorXd &v) {
  auto n = u.size() / 2;
  double s = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    s += u(i) * v(i) - u(n + i) * v(n + i);
  return 2 * s;
}

double max_pairing_error(const WittBasis &b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < b.p.cols(); ++i)
    for (Eigen::Index j = 0; j < b.p.cols(); ++j) {
      worst = std::max(worst, std::abs(pairing(b.p.col(i), b.q.col(j)) - (i == j)));
      worst = std::max(worst, std::abs(pairing(b.p.col(i), b.p.col(j))));
      worst = std::max(worst, std::abs(pairing(b.q.col(i), b.q.col(j))));
    }
  return worst;
}

SignVector signs(int n, std::uint64_t minus) {
  std::vector<int> eps;
  for (int i = 0; i < n; ++i)
    eps.push_back(((minus >> i) & 1u) ? -1 : 1);
  return SignVector(eps);
}

} // namespace

TEST(Orthogonal, RejectsNonOrthogonal) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.1, 0, 1;
  EXPECT_THROW(OrthogonalMatrix{m}, InvalidArgument);
  EXPECT_THROW(OrthogonalMatrix{Eigen::MatrixXd(2, 3)}, InvalidArgument);
  EXPECT_NO_THROW(OrthogonalMatrix::rotation(3, 0, 2, 0.3));
  EXPECT_THROW(OrthogonalMatrix::rotation(3, 1, 1, 0.3), InvalidArgument);
}

TEST(Orthogonal, IsometryPlanesAreNull) {
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t s = 0; s < 20; ++s)
      EXPECT_TRUE(is_null_plane(mtnp_from_isometry(sample_orthogonal(n, s))));
}

TEST(Orthogonal, CoordinateFramesMatchSignMatrices) {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      auto eps = signs(n, m);
      auto a = coordinate_frame(eps).basis;
      auto b = mtnp_from_isometry(OrthogonalMatrix::diagonal(eps)).basis;
      EXPECT_EQ(a, b);
    }
}

TEST(Orthogonal, IntersectionWithPIsEigenvalueOneMultiplicity) {
  const int n = 5;
  NullFrame p = coordinate_frame(SignVector::all(n, 1));
  for (int r = 0; r <= n; ++r) {
    // Rotations in coordinate pairs beyond the first r axes, -1 on a leftover one.
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
    int i = r;
    for (; i + 1 < n; i += 2)
      t = t * OrthogonalMatrix::rotation(n, i, i + 1, 0.7 + i).entries();
    if (i < n)
      t(i, i) = -1;
    OrthogonalMatrix m(t);
    EXPECT_EQ(eigenvalue_one_multiplicity(m.entries()), r);
    EXPECT_EQ(intersect_dim(p, mtnp_from_isometry(m)), r);
  }
}

TEST(Orthogonal, DistinctIsometriesGiveDistinctPlanes) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto a = sample_orthogonal(4, s), b = sample_orthogonal(4, s + 1000);
    EXPECT_LT(intersect_dim(mtnp_from_isometry(a), mtnp_from_isometry(b)), 4);
    EXPECT_EQ(intersect_dim(mtnp_from_isometry(a), mtnp_from_isometry(a)), 4);
  }
}

TEST(Orthogonal, StrictMembershipOnSignMatrices) {
  // Oracle: eps agrees with every literal's required sign.
  for (int n = 1; n <= 4; ++n)
    for (const auto &c : gen::all_clauses(n, n))
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        auto eps = signs(n, m);
        bool expected = true;
        for (const auto &l : c.literals())
          expected = expected && eps[l.var] == (l.negated ? -1 : 1);
        EXPECT_EQ(strict_membership(OrthogonalMatrix::diagonal(eps), c), expected);
      }
}

TEST(Sampling, DeterministicAndOrthogonal) {
  auto a = sample_orthogonal(4, 99), b = sample_orthogonal(4, 99);
  EXPECT_EQ(a.entries(), b.entries());
  double worst = 0;
  for (std::uint64_t i = 0; i < 10000; ++i)
    worst = std::max(worst, sample_orthogonal(3, derive_seed(7, i)).orthogonality_residual());
  EXPECT_LT(worst, 1e-12);
}

TEST(Sampling, OneDimensional) {
  bool plus = false, minus = false;
  for (std::uint64_t s = 0; s < 64; ++s) {
    double v = sample_orthogonal(1, s).entries()(0, 0);
    EXPECT_EQ(std::abs(v), 1.0);
    (v > 0 ? plus : minus) = true;
  }
  EXPECT_TRUE(plus && minus);
}

TEST(Sampling, BothComponentsAppear) {
  int positive = 0;
  for (std::uint64_t i = 0; i < 2000; ++i)
    positive += sample_orthogonal(3, derive_seed(11, i)).determinant() > 0;
  EXPECT_GT(positive, 900);
  EXPECT_LT(positive, 1100);
}

TEST(Rebase, OppositeCoordinatePlanes) {
  // (1, 1) = P and (1, -1) = Q: the standard frame up to scale.
  auto b = witt_rebase(OrthogonalMatrix::identity(3),
                       OrthogonalMatrix::diagonal(SignVector::all(3, -1)));
  EXPECT_LT(max_pairing_error(b), 1e-12);
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd pi = b.p.col(i), qi = b.q.col(i);
    EXPECT_NEAR(pi(i), pi(3 + i), 1e-12);
    EXPECT_NEAR(qi(i), -qi(3 + i), 1e-12);
    EXPECT_NEAR(pi.norm(), qi.norm(), 1e-12);
  }
}

TEST(Rebase, QuarterTurn) {
  auto t2 = OrthogonalMatrix::rotation(2, 0, 1, std::numbers::pi / 2);
  auto b = witt_rebase(OrthogonalMatrix::identity(2), t2);
  EXPECT_LT(max_pairing_error(b), 1e-9);
}

TEST(Rebase, RandomTransversalPairs) {
  for (int n = 2; n <= 6; ++n) {
    int done = 0;
    for (std::uint64_t i = 0; done < 100; ++i) {
      auto t1 = sample_orthogonal(n, derive_seed(n, 2 * i));
      auto t2 = sample_orthogonal(n, derive_seed(n, 2 * i + 1));
      if (eigenvalue_one_multiplicity(t1.entries().transpose() * t2.entries()) > 0)
        continue;
      ++done;
      auto b = witt_rebase(t1, t2);
      ASSERT_LE(max_pairing_error(b), 1e-9);
      auto r = rebase_residuals(b, mtnp_from_isometry(t1), mtnp_from_isometry(t2));
      EXPECT_LE(r.first_plane, 1e-9);
      EXPECT_LE(r.second_plane, 1e-9);
      // The new vectors stay inside their planes: (x, t x).
      Eigen::MatrixXd px = b.p.topRows(n), py = b.p.bottomRows(n);
      Eigen::MatrixXd qx = b.q.topRows(n), qy = b.q.bottomRows(n);
      EXPECT_LE((t1.entries() * px - py).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((t2.entries() * qx - qy).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Rebase, NonTransversalNamesDimension) {
  auto t1 = sample_orthogonal(4, 3);
  Eigen::MatrixXd rel = Eigen::MatrixXd::Identity(4, 4);
  rel.bottomRightCorner(2, 2) = OrthogonalMatrix::rotation(2, 0, 1, 1.1).entries();
  OrthogonalMatrix t2 = t1 * OrthogonalMatrix(rel);
  try {
    witt_rebase(t1, t2);
    FAIL() << "expected NotTransversal";
  } catch (const NotTransversal &e) {
    EXPECT_EQ(e.dimension(), 2);
  }
  EXPECT_EQ(intersect_dim(mtnp_from_isometry(t1), mtnp_from_isometry(t2)), 2);
  EXPECT_THROW(witt_rebase(t1, t1), NotTransversal);
}

TEST(Explorer, UnsatInstanceReport) {
  auto f = parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  auto rep = explore_cover(f, 400, 17);
  EXPECT_TRUE(rep.discrete_checked);
  EXPECT_TRUE(rep.discrete_cover);
  EXPECT_TRUE(rep.discrete_matches_cover);
  EXPECT_EQ(rep.strict_fraction, 0.0);
  auto again = explore_cover(f, 400, 17);
  EXPECT_EQ(rep.transversal_fraction, again.transversal_fraction);
  EXPECT_EQ(rep.det_positive_fraction, again.det_positive_fraction);
}

TEST(Explorer, TransversalityFollowsTheComponent) {
  // Odd n: det +1 forces eigenvalue 1, so exactly the det -1 samples are
  // transversal to P. Even n: the other way round.
  for (int n : {2, 3, 4}) {
    CnfFormula f;
    f.n = n;
    f.clauses.push_back(Clause::from_dimacs({1}));
    auto rep = explore_cover(f, 500, 23);
    double expected = n % 2 ? 1.0 - rep.det_positive_fraction : rep.det_positive_fraction;
    EXPECT_DOUBLE_EQ(rep.transversal_fraction, expected) << n;
    EXPECT_EQ(rep.transversal_any_fraction, 1.0);
  }
}

TEST(MatrixText, RoundTripAndErrors) {
  auto m = sample_orthogonal(3, 5).entries();
  auto back = parse_matrices(write_matrix(m) + "# second\n" + write_matrix(m));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], m);
  EXPECT_THROW(parse_matrices("2\n1 0\n0\n"), ParseError);
  EXPECT_THROW(parse_matrices("2\n1 0\n0 x\n"), ParseError);
  EXPECT_THROW(parse_matrices("1.5\n"), ParseError);
}
