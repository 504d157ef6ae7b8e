#include "wittsat/orthogonal.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wittsat/errors.hpp"
#include "wittsat/kernels.hpp"

namespace wittsat {

//===----------------------------------------------------------------------===//
// OrthogonalMatrix
//===----------------------------------------------------------------------===//

OrthogonalMatrix::OrthogonalMatrix(Eigen::MatrixXd entries, double tol)
    : entries_(std::move(entries)), tol_(tol) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
    throw InvalidArgument("orthogonal matrix must be square with n >= 1");
  if (!entries_.allFinite())
    throw InvalidArgument("matrix has non-finite entries");
  double res = orthogonality_residual();
  if (res > tol_)
    throw InvalidArgument("matrix is not orthogonal: residual " +
                          std::to_string(res));
}

OrthogonalMatrix OrthogonalMatrix::identity(int n) {
  return OrthogonalMatrix(Eigen::MatrixXd::Identity(n, n));
}

OrthogonalMatrix OrthogonalMatrix::diagonal(const SignVector &eps) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(eps.n(), eps.n());
  for (int i = 0; i < eps.n(); ++i)
    d(i, i) = eps[i];
  return OrthogonalMatrix(std::move(d));
}

OrthogonalMatrix OrthogonalMatrix::rotation(int n, int i, int j, double angle) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw InvalidArgument("rotation plane out of range");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return OrthogonalMatrix(std::move(r));
}

double OrthogonalMatrix::orthogonality_residual() const {
  auto n = entries_.rows();
  return (entries_.transpose() * entries_ - Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

OrthogonalMatrix OrthogonalMatrix::operator*(const OrthogonalMatrix &o) const {
  if (n() != o.n())
    throw DimensionMismatch(static_cast<std::size_t>(n()),
                            static_cast<std::size_t>(o.n()));
  return OrthogonalMatrix(entries_ * o.entries_, std::max(tol_, o.tol_) * 2);
}

OrthogonalMatrix OrthogonalMatrix::transpose() const {
  return OrthogonalMatrix(entries_.transpose(), tol_);
}

//===----------------------------------------------------------------------===//
// Null planes
//===----------------------------------------------------------------------===//

double neutral_form(const Eigen::VectorXd &u, const Eigen::VectorXd &v) {
  auto n = u.size() / 2;
  return u.head(n).dot(v.head(n)) - u.tail(n).dot(v.tail(n));
}

Eigen::MatrixXd neutral_gram(const Eigen::MatrixXd &f1, const Eigen::MatrixXd &f2) {
  auto n = f1.rows() / 2;
  return f1.topRows(n).transpose() * f2.topRows(n) -
         f1.bottomRows(n).transpose() * f2.bottomRows(n);
}

NullFrame mtnp_from_isometry(const OrthogonalMatrix &t) {
  int n = t.n();
  NullFrame f{Eigen::MatrixXd(2 * n, n)};
  f.basis.topRows(n) = Eigen::MatrixXd::Identity(n, n);
  f.basis.bottomRows(n) = t.entries();
  return f;
}

NullFrame coordinate_frame(const SignVector &eps) {
  int n = eps.n();
  NullFrame f{Eigen::MatrixXd::Zero(2 * n, n)};
  for (int i = 0; i < n; ++i) {
    f.basis(i, i) = 1;
    f.basis(n + i, i) = eps[i];
  }
  return f;
}

bool is_null_plane(const NullFrame &frame, double tol) {
  if (frame.basis.rows() % 2 != 0)
    return false;
  return neutral_gram(frame.basis, frame.basis).cwiseAbs().maxCoeff() <= tol;
}

int intersect_dim(const NullFrame &f1, const NullFrame &f2) {
  if (f1.basis.rows() != f2.basis.rows())
    throw DimensionMismatch(static_cast<std::size_t>(f1.basis.rows()),
                            static_cast<std::size_t>(f2.basis.rows()));
  Eigen::MatrixXd stacked(f1.basis.rows(), f1.basis.cols() + f2.basis.cols());
  stacked << f1.basis, f2.basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const auto &s = svd.singularValues();
  double cutoff = kSingularCutoff * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff)
      ++rank;
  return static_cast<int>(f1.basis.cols() + f2.basis.cols()) - rank;
}

int eigenvalue_one_multiplicity(const Eigen::MatrixXd &m, double tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  int count = 0;
  for (const auto &lambda : es.eigenvalues())
    if (std::abs(lambda - std::complex<double>(1.0, 0.0)) <= tol)
      ++count;
  return count;
}

bool strict_membership(const OrthogonalMatrix &t, const Clause &c, double tol) {
  if (c.max_var() >= t.n())
    throw InvalidArgument("clause variable exceeds matrix size");
  if (c.is_tautology())
    return false;
  for (const auto &l : c.literals()) {
    Eigen::VectorXd target = Eigen::VectorXd::Zero(t.n());
    target(l.var) = l.negated ? -1.0 : 1.0;
    if ((t.entries().col(l.var) - target).cwiseAbs().maxCoeff() > tol)
      return false;
  }
  return true;
}

//===----------------------------------------------------------------------===//
// Sampling and rebasing
//===----------------------------------------------------------------------===//

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

OrthogonalMatrix sample_orthogonal(int n, std::uint64_t seed) {
  if (n < 1)
    throw InvalidArgument("n must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd &r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0)
      q.col(j) = -q.col(j);
  return OrthogonalMatrix(std::move(q));
}

WittBasis witt_rebase(const OrthogonalMatrix &t1, const OrthogonalMatrix &t2) {
  if (t1.n() != t2.n())
    throw DimensionMismatch(static_cast<std::size_t>(t1.n()),
                            static_cast<std::size_t>(t2.n()));
  Eigen::MatrixXd relative = t1.entries().transpose() * t2.entries();
  if (int r = eigenvalue_one_multiplicity(relative); r > 0)
    throw NotTransversal(r);

  NullFrame first = mtnp_from_isometry(t1);
  NullFrame second = mtnp_from_isometry(t2);
  // G = 2 F1^T B F2 = 2 (1 - t1^T t2) is invertible by transversality. With
  // G = U S V^T, p' = F1 U S^-1/2 and q' = F2 V S^-1/2 pair to the identity.
  // Splitting S evenly keeps rounding in the null residuals at eps / s_min
  // rather than the eps / s_min^2 of q' = F2 G^-1.
  Eigen::MatrixXd pairing = 2.0 * neutral_gram(first.basis, second.basis);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pairing, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd scale = svd.singularValues().cwiseSqrt().cwiseInverse();
  return WittBasis{first.basis * svd.matrixU() * scale.asDiagonal(),
                   second.basis * svd.matrixV() * scale.asDiagonal()};
}

RebaseResiduals rebase_residuals(const WittBasis &basis, const NullFrame &first,
                                 const NullFrame &second) {
  const auto n = basis.p.cols();
  RebaseResiduals r;
  r.pairing = (2.0 * neutral_gram(basis.p, basis.q) -
               Eigen::MatrixXd::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff();
  r.p_null = neutral_gram(basis.p, basis.p).cwiseAbs().maxCoeff();
  r.q_null = neutral_gram(basis.q, basis.q).cwiseAbs().maxCoeff();

  Eigen::MatrixXd frame(2 * n, 2 * n);
  frame << basis.p, basis.q;
  auto lu = frame.fullPivLu();
  Eigen::MatrixXd c1 = lu.solve(first.basis);
  Eigen::MatrixXd c2 = lu.solve(second.basis);
  r.first_plane = c1.bottomRows(n).cwiseAbs().maxCoeff();
  r.second_plane = c2.topRows(n).cwiseAbs().maxCoeff();
  return r;
}

//===----------------------------------------------------------------------===//
// Explorer
//===----------------------------------------------------------------------===//

ExploreReport explore_cover(const CnfFormula &f, std::uint64_t samples,
                          std::uint64_t seed) {
  ExploreReport rep;
  rep.n = f.n;
  rep.samples = samples;
  rep.seed = seed;

  if (f.n <= 20) {
    rep.discrete_checked = true;
    rep.discrete_cover = kernels::all_sign_matrices_covered(f);
    auto patterns = cover_patterns(f);
    rep.discrete_matches_cover = rep.discrete_cover == covers(patterns, f.n);
  }

  if (samples > 0) {
    kernels::SampleTally tally = kernels::explore_samples(f, samples, seed);
    auto frac = [&](std::uint64_t k) {
      return static_cast<double>(k) / static_cast<double>(samples);
    };
    rep.strict_fraction = frac(tally.strict);
    rep.transversal_fraction = frac(tally.transversal);
    rep.transversal_any_fraction = frac(tally.transversal_any);
    rep.det_positive_fraction = frac(tally.det_positive);
  }
  return rep;
}

//===----------------------------------------------------------------------===//
// Text form
//===----------------------------------------------------------------------===//

std::vector<Eigen::MatrixXd> parse_matrices(std::string_view text) {
  std::vector<Eigen::MatrixXd> out;
  std::vector<std::pair<std::string, std::size_t>> tokens; // token, line
  std::size_t pos = 0, lineno = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == 'c')
      continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok)
      tokens.emplace_back(tok, lineno);
  }
  std::size_t i = 0;
  auto number = [&](const std::pair<std::string, std::size_t> &entry) {
    const std::string &tok = entry.first;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != tok.size())
      throw ParseError("bad number '" + tok + "'", entry.second);
    return v;
  };
  while (i < tokens.size()) {
    double nd = number(tokens[i++]);
    int n = static_cast<int>(nd);
    if (n < 1 || nd != n)
      throw ParseError("bad matrix size '" + tokens[i - 1].first + "'",
                       tokens[i - 1].second);
    if (tokens.size() - i < static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw ParseError("matrix of size " + std::to_string(n) + " is truncated",
                       lineno);
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        m(r, c) = number(tokens[i++]);
    out.push_back(std::move(m));
  }
  return out;
}

std::string write_matrix(const Eigen::MatrixXd &m) {
  std::string out = std::to_string(m.rows()) + "\n";
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      out += (c ? " " : "");
      out += buf;
    }
    out += "\n";
  }
  return out;
}

} // namespace wittsat
