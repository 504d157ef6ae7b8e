#pragma once

// Maximal totally null planes of R^{n,n} as graphs of isometries. The neutral
// space is R^n x R^n with B((x,y),(x',y')) = x.x' - y.y'; every t in O(n)
// gives the maximal null plane (1, t) = {(x, t x)}. The Witt frame of the
// coordinate planes is p_i ~ (e_i, e_i), q_i ~ (e_i, -e_i), so diagonal
// matrices of signs give back the coordinate planes used by the geometry
// layer.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wittsat/cnf.hpp"
#include "wittsat/geometry.hpp"

namespace wittsat {

inline constexpr double kConstructionTol = 1e-9;
inline constexpr double kVerifyTol = 1e-6;
inline constexpr double kSingularCutoff = 1e-8;

class OrthogonalMatrix {
public:
  /// Throws InvalidArgument unless max |t^T t - 1| <= tol.
  explicit OrthogonalMatrix(Eigen::MatrixXd entries, double tol = kConstructionTol);

  static OrthogonalMatrix identity(int n);
  static OrthogonalMatrix diagonal(const SignVector &eps);
  /// Rotation by `angle` in the plane of coordinates (i, j), 0-based.
  static OrthogonalMatrix rotation(int n, int i, int j, double angle);

  int n() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd &entries() const noexcept { return entries_; }
  double tol() const noexcept { return tol_; }
  double orthogonality_residual() const;
  double determinant() const { return entries_.determinant(); }

  OrthogonalMatrix operator*(const OrthogonalMatrix &o) const;
  OrthogonalMatrix transpose() const;

private:
  Eigen::MatrixXd entries_;
  double tol_;
};

/// n columns spanning a plane of R^{2n}; coordinates (x, y) stacked.
struct NullFrame {
  Eigen::MatrixXd basis;
  int n() const noexcept { return static_cast<int>(basis.rows() / 2); }
};

/// Null bases of two transversal maximal planes with 2 B(p_i, q_j) = delta.
struct WittBasis {
  Eigen::MatrixXd p; // 2n x n
  Eigen::MatrixXd q; // 2n x n
};

struct RebaseResiduals {
  double pairing = 0;     // max |2 B(p_i, q_j) - delta_ij|
  double p_null = 0;      // max |B(p_i, p_j)|
  double q_null = 0;      // max |B(q_i, q_j)|
  double first_plane = 0; // first input plane off span{p'} in the new frame
  double second_plane = 0;
};

/// B(u, v) = x.x' - y.y' for stacked (x, y).
double neutral_form(const Eigen::VectorXd &u, const Eigen::VectorXd &v);
/// G = F1^T B F2.
Eigen::MatrixXd neutral_gram(const Eigen::MatrixXd &f1, const Eigen::MatrixXd &f2);

/// Columns (e_i, t e_i).
NullFrame mtnp_from_isometry(const OrthogonalMatrix &t);

/// Frame of a coordinate plane: (e_i, e_i) for +1 (p_i), (e_i, -e_i) for -1.
NullFrame coordinate_frame(const SignVector &eps);

bool is_null_plane(const NullFrame &frame, double tol = kVerifyTol);

/// 2n - rank[F1 F2], singular values under kSingularCutoff * largest dropped.
int intersect_dim(const NullFrame &f1, const NullFrame &f2);

/// Number of eigenvalues of m within `tol` of +1.
int eigenvalue_one_multiplicity(const Eigen::MatrixXd &m, double tol = kSingularCutoff);

/// t in T_j: t e_i = s_i e_i for every literal of the clause, s_i = +1 for a
/// positive literal (p_i required in t(P)), -1 for a negated one (q_i).
bool strict_membership(const OrthogonalMatrix &t, const Clause &c,
                       double tol = kConstructionTol);

/// Q factor of a seeded Gaussian matrix with R's diagonal signs absorbed.
OrthogonalMatrix sample_orthogonal(int n, std::uint64_t seed);

/// Witt basis with p' spanning (1, t1) and q' spanning (1, t2). Throws
/// NotTransversal with the intersection dimension when t1^T t2 has
/// eigenvalue 1.
WittBasis witt_rebase(const OrthogonalMatrix &t1, const OrthogonalMatrix &t2);

RebaseResiduals rebase_residuals(const WittBasis &basis, const NullFrame &first,
                                 const NullFrame &second);

struct ExploreReport {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool discrete_checked = false;
  bool discrete_cover = false;       // every sign matrix is in some T_j
  bool discrete_matches_cover = false; // ... and that equals covers()
  double strict_fraction = 0;        // samples in some T_j
  double transversal_fraction = 0;   // samples with (1,t) transversal to P
  double transversal_any_fraction = 0; // transversal to some plane of M
  double det_positive_fraction = 0;
};

/// Reporting only: no verdict on the continuous cover is drawn.
ExploreReport explore_cover(const CnfFormula &f, std::uint64_t samples,
                          std::uint64_t seed);

/// "n" then n rows of n numbers. A stream may hold several matrices.
std::vector<Eigen::MatrixXd> parse_matrices(std::string_view text);
std::string write_matrix(const Eigen::MatrixXd &m);

/// Per-sample seed for batch sampling; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace wittsat
