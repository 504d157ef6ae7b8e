#include "wittsat/gamma.hpp"

#include <bit>

#include "wittsat/errors.hpp"

namespace wittsat {

//===----------------------------------------------------------------------===//
// Dyadic
//===----------------------------------------------------------------------===//

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw ResourceLimit("dyadic numerator overflow");
  return static_cast<std::int64_t>(v);
}

} // namespace

Dyadic::Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
  if (exp_ < 0)
    throw InvalidArgument("dyadic exponent must be nonnegative");
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  int tz = std::countr_zero(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_));
  int shift = std::min(tz, exp_);
  num_ >>= shift;
  exp_ -= shift;
}

Dyadic Dyadic::from_integer(const Integer &v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw ResourceLimit("coefficient does not fit the matrix backend");
  return Dyadic(static_cast<std::int64_t>(v));
}

Dyadic operator+(Dyadic a, Dyadic b) {
  int e = std::max(a.exp_, b.exp_);
  if (e > 60)
    throw ResourceLimit("dyadic exponent overflow");
  __int128 x = static_cast<__int128>(a.num_) << (e - a.exp_);
  __int128 y = static_cast<__int128>(b.num_) << (e - b.exp_);
  return Dyadic(narrow(x + y), e);
}

Dyadic operator*(Dyadic a, Dyadic b) {
  return Dyadic(narrow(static_cast<__int128>(a.num_) * b.num_), a.exp_ + b.exp_);
}

std::string Dyadic::to_string() const {
  if (exp_ == 0)
    return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::int64_t{1} << exp_);
}

//===----------------------------------------------------------------------===//
// DyadicMatrix
//===----------------------------------------------------------------------===//

DyadicMatrix DyadicMatrix::identity(int dim) {
  DyadicMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    m.at(i, i) = Dyadic(1);
  return m;
}

DyadicMatrix operator+(const DyadicMatrix &a, const DyadicMatrix &b) {
  if (a.dim_ != b.dim_)
    throw DimensionMismatch(static_cast<std::size_t>(a.dim_),
                            static_cast<std::size_t>(b.dim_));
  DyadicMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

DyadicMatrix operator-(const DyadicMatrix &a, const DyadicMatrix &b) {
  return a + Dyadic(-1) * b;
}

DyadicMatrix operator*(Dyadic s, const DyadicMatrix &a) {
  DyadicMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = s * a.data_[i];
  return out;
}

DyadicMatrix operator*(const DyadicMatrix &a, const DyadicMatrix &b) {
  if (a.dim_ != b.dim_)
    throw DimensionMismatch(static_cast<std::size_t>(a.dim_),
                            static_cast<std::size_t>(b.dim_));
  DyadicMatrix out(a.dim_);
  for (int r = 0; r < a.dim_; ++r)
    for (int k = 0; k < a.dim_; ++k) {
      const Dyadic &x = a.at(r, k);
      if (x.is_zero())
        continue;
      for (int c = 0; c < a.dim_; ++c) {
        const Dyadic &y = b.at(k, c);
        if (!y.is_zero())
          out.at(r, c) += x * y;
      }
    }
  return out;
}

bool DyadicMatrix::is_zero() const {
  for (const auto &d : data_)
    if (!d.is_zero())
      return false;
  return true;
}

bool DyadicMatrix::is_diagonal() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if (r != c && !at(r, c).is_zero())
        return false;
  return true;
}

DyadicMatrix DyadicMatrix::kron(const DyadicMatrix &b) const {
  DyadicMatrix out(dim_ * b.dim_);
  for (int r1 = 0; r1 < dim_; ++r1)
    for (int c1 = 0; c1 < dim_; ++c1) {
      const Dyadic &x = at(r1, c1);
      if (x.is_zero())
        continue;
      for (int r2 = 0; r2 < b.dim_; ++r2)
        for (int c2 = 0; c2 < b.dim_; ++c2)
          out.at(r1 * b.dim_ + r2, c1 * b.dim_ + c2) = x * b.at(r2, c2);
    }
  return out;
}

//===----------------------------------------------------------------------===//
// GammaRep
//===----------------------------------------------------------------------===//

namespace {

DyadicMatrix two_by_two(std::int64_t a, std::int64_t b, std::int64_t c,
                        std::int64_t d) {
  DyadicMatrix m(2);
  m.at(0, 0) = Dyadic(a);
  m.at(0, 1) = Dyadic(b);
  m.at(1, 0) = Dyadic(c);
  m.at(1, 1) = Dyadic(d);
  return m;
}

} // namespace

GammaRep::GammaRep(int n) : n_(n) {
  if (n < 1)
    throw InvalidArgument("n must be at least 1");
  if (n > kMaxGammaN)
    throw ResourceLimit("matrix backend supports n <= " + std::to_string(kMaxGammaN));
  const DyadicMatrix x = two_by_two(0, 1, 1, 0);
  const DyadicMatrix j = two_by_two(0, -1, 1, 0);
  const DyadicMatrix z = two_by_two(1, 0, 0, -1);
  const DyadicMatrix id = DyadicMatrix::identity(2);

  for (int slot = 0; slot < n; ++slot) {
    for (const DyadicMatrix *factor : {&x, &j}) {
      DyadicMatrix g = slot == 0 ? *factor : z;
      for (int k = 1; k < n; ++k)
        g = g.kron(k < slot ? z : k == slot ? *factor : id);
      gamma_.push_back(std::move(g));
    }
  }
  const Dyadic half(1, 1);
  for (int i = 0; i < n; ++i) {
    const auto &odd = gamma_[static_cast<std::size_t>(2 * i)];
    const auto &even = gamma_[static_cast<std::size_t>(2 * i + 1)];
    p_.push_back(half * (odd + even));
    q_.push_back(half * (odd - even));
  }
}

bool GammaRep::generator_relations_hold() const {
  const int count = 2 * n_;
  const auto id = DyadicMatrix::identity(dim());
  for (int i = 1; i <= count; ++i)
    for (int j = 1; j <= count; ++j) {
      DyadicMatrix anti = gamma(i) * gamma(j) + gamma(j) * gamma(i);
      DyadicMatrix expected(dim());
      if (i == j)
        expected = Dyadic(i % 2 == 1 ? 2 : -2) * id;
      if (!(anti == expected))
        return false;
    }
  return true;
}

GammaRep build_gamma(int n) { return GammaRep(n); }

DyadicMatrix matrix_of(const GammaRep &rep, WittVector v) {
  if (v.position < 0 || v.position >= rep.n())
    throw InvalidArgument("Witt vector index out of range");
  return v.kind == WittKind::P ? rep.p(v.position) : rep.q(v.position);
}

DyadicMatrix matrix_of(const GammaRep &rep, const EfbTerm &t) {
  if (t.n() != rep.n())
    throw DimensionMismatch(static_cast<std::size_t>(rep.n()),
                            static_cast<std::size_t>(t.n()));
  DyadicMatrix m = DyadicMatrix::identity(rep.dim());
  for (int i = 0; i < t.n(); ++i) {
    switch (t.symbol(i)) {
    case EfbSymbol::QP:
      m = m * rep.q(i) * rep.p(i);
      break;
    case EfbSymbol::PQ:
      m = m * rep.p(i) * rep.q(i);
      break;
    case EfbSymbol::P:
      m = m * rep.p(i);
      break;
    case EfbSymbol::Q:
      m = m * rep.q(i);
      break;
    }
  }
  return Dyadic::from_integer(t.coeff()) * m;
}

DyadicMatrix matrix_of(const GammaRep &rep, const DiagonalElement &a) {
  if (a.n() != rep.n())
    throw DimensionMismatch(static_cast<std::size_t>(rep.n()),
                            static_cast<std::size_t>(a.n()));
  DyadicMatrix sum(rep.dim());
  for (const auto &[pat, c] : a.terms()) {
    DyadicMatrix m = DyadicMatrix::identity(rep.dim());
    for (int i = 0; i < a.n(); ++i) {
      const auto &p = rep.p(i);
      const auto &q = rep.q(i);
      switch (pat.at(i)) {
      case DiagSymbol::QP:
        m = m * q * p;
        break;
      case DiagSymbol::PQ:
        m = m * p * q;
        break;
      case DiagSymbol::ID:
        m = m * (q * p + p * q);
        break;
      }
    }
    sum = sum + Dyadic::from_integer(c) * m;
  }
  return sum;
}

int assignment_index(const Assignment &sigma) {
  int idx = 0;
  for (int i = 0; i < sigma.size(); ++i)
    idx = (idx << 1) | (sigma[i] ? 0 : 1);
  return idx;
}

} // namespace wittsat
