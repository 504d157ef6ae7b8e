#pragma once

// Exact real matrix representation of Cl(R^{n,n}) on R^(2^n).
//
// Generators use the ladder construction: with X = [[0,1],[1,0]],
// J = [[0,-1],[1,0]] and Z = diag(1,-1),
//   gamma_{2i-1} = Z x ... x Z x X x 1 x ... x 1
//   gamma_{2i}   = Z x ... x Z x J x 1 x ... x 1
// (factor X or J in slot i, variable 1 leftmost). Then gamma_{2i-1}^2 = 1,
// gamma_{2i}^2 = -1 and distinct generators anticommute. The Witt vectors
// p_i = (gamma_{2i-1} + gamma_{2i}) / 2 and q_i = (gamma_{2i-1} - gamma_{2i}) / 2
// are computed from the generators in dyadic arithmetic, so q_i p_i is the
// projector onto basis states with bit 0 in slot i.

#include <cstdint>
#include <string>
#include <vector>

#include "wittsat/clifford.hpp"

namespace wittsat {

/// num / 2^exp, normalised so that num is odd or exp is 0.
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(std::int64_t num, int exp = 0);
  static Dyadic from_integer(const Integer &v);

  std::int64_t num() const noexcept { return num_; }
  int exp() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }

  friend Dyadic operator+(Dyadic a, Dyadic b);
  friend Dyadic operator-(Dyadic a) { return Dyadic(-a.num_, a.exp_); }
  friend Dyadic operator-(Dyadic a, Dyadic b) { return a + (-b); }
  friend Dyadic operator*(Dyadic a, Dyadic b);
  Dyadic &operator+=(Dyadic o) { return *this = *this + o; }

  friend bool operator==(const Dyadic &, const Dyadic &) = default;
  std::string to_string() const;

private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

/// Dense square matrix of dyadic rationals.
class DyadicMatrix {
public:
  DyadicMatrix() = default;
  explicit DyadicMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {}
  static DyadicMatrix identity(int dim);

  int dim() const noexcept { return dim_; }
  Dyadic &at(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Dyadic &at(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * dim_ + c];
  }

  friend DyadicMatrix operator+(const DyadicMatrix &a, const DyadicMatrix &b);
  friend DyadicMatrix operator-(const DyadicMatrix &a, const DyadicMatrix &b);
  friend DyadicMatrix operator*(const DyadicMatrix &a, const DyadicMatrix &b);
  friend DyadicMatrix operator*(Dyadic s, const DyadicMatrix &a);
  friend bool operator==(const DyadicMatrix &, const DyadicMatrix &) = default;

  bool is_zero() const;
  bool is_diagonal() const;
  /// Kronecker product, `this` on the left.
  DyadicMatrix kron(const DyadicMatrix &b) const;

private:
  int dim_ = 0;
  std::vector<Dyadic> data_;
};

inline constexpr int kMaxGammaN = 5;

class GammaRep {
public:
  /// 1 <= n <= kMaxGammaN, else ResourceLimit / InvalidArgument.
  explicit GammaRep(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 1 << n_; }
  /// gamma_k for k = 1 .. 2n.
  const DyadicMatrix &gamma(int k) const { return gamma_.at(static_cast<std::size_t>(k - 1)); }
  const DyadicMatrix &p(int position) const { return p_.at(static_cast<std::size_t>(position)); }
  const DyadicMatrix &q(int position) const { return q_.at(static_cast<std::size_t>(position)); }

  /// gamma_i gamma_j + gamma_j gamma_i = 2 delta_ij (-1)^(i+1), exactly.
  bool generator_relations_hold() const;

private:
  int n_;
  std::vector<DyadicMatrix> gamma_;
  std::vector<DyadicMatrix> p_;
  std::vector<DyadicMatrix> q_;
};

GammaRep build_gamma(int n);

DyadicMatrix matrix_of(const GammaRep &rep, WittVector v);
DyadicMatrix matrix_of(const GammaRep &rep, const EfbTerm &t);
DyadicMatrix matrix_of(const GammaRep &rep, const DiagonalElement &a);

/// Row/column of the primitive idempotent of sigma: variable 1 is the most
/// significant bit, true (qp) maps to bit 0.
int assignment_index(const Assignment &sigma);

} // namespace wittsat
