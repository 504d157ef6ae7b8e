#include "wittsat/clifford.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "wittsat/errors.hpp"

namespace wittsat {

namespace {

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_width(int n) {
  if (n < 1)
    throw InvalidArgument("number of positions must be at least 1");
  if (n > kMaxDiagWidth)
    throw ResourceLimit("diagonal elements support at most " +
                        std::to_string(kMaxDiagWidth) + " positions");
}

void normalize(std::vector<DiagonalElement::Term> &terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    DiagPattern pat = terms[i].first;
    Integer sum = std::move(terms[i].second);
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].first == pat; ++j)
      sum += terms[j].second;
    if (sum != 0)
      terms[out++] = {pat, std::move(sum)};
    i = j;
  }
  terms.resize(out);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Splits "coeff * sym sym ..." into the coefficient and symbol tokens.
std::pair<Integer, std::vector<std::string_view>>
split_term_line(std::string_view line, std::size_t lineno) {
  auto tokens = split_ws(line);
  if (tokens.size() < 3 || tokens[1] != "*")
    throw ParseError("expected 'coeff * symbols'", lineno);
  Integer coeff;
  try {
    std::string c(tokens[0]);
    if (!c.empty() && c[0] == '+')
      c.erase(0, 1);
    coeff = Integer(c);
  } catch (const std::exception &) {
    throw ParseError("bad coefficient '" + std::string(tokens[0]) + "'",
                     lineno);
  }
  tokens.erase(tokens.begin(), tokens.begin() + 2);
  return {std::move(coeff), std::move(tokens)};
}

} // namespace

//===----------------------------------------------------------------------===//
// Witt vectors and symbols
//===----------------------------------------------------------------------===//

std::string WittVector::to_string() const {
  return (kind == WittKind::P ? "p" : "q") + std::to_string(position + 1);
}

std::string_view symbol_name(EfbSymbol s) noexcept {
  switch (s) {
  case EfbSymbol::QP:
    return "qp";
  case EfbSymbol::PQ:
    return "pq";
  case EfbSymbol::P:
    return "p";
  case EfbSymbol::Q:
    return "q";
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// EfbTerm
//===----------------------------------------------------------------------===//

EfbTerm::EfbTerm(std::vector<EfbSymbol> symbols, Integer coeff)
    : n_(static_cast<int>(symbols.size())), words_((symbols.size() + 31) / 32),
      coeff_(std::move(coeff)) {
  if (n_ < 1)
    throw InvalidArgument("EFB term needs at least one position");
  for (int i = 0; i < n_; ++i)
    words_[static_cast<std::size_t>(i / 32)] |=
        std::uint64_t{static_cast<std::uint8_t>(symbols[static_cast<std::size_t>(i)])}
        << (2 * (i % 32));
}

EfbSymbol EfbTerm::symbol(int position) const {
  if (position < 0 || position >= n_)
    throw InvalidArgument("EFB position out of range");
  auto w = words_[static_cast<std::size_t>(position / 32)];
  return static_cast<EfbSymbol>((w >> (2 * (position % 32))) & 3u);
}

int EfbTerm::odd_before(int position) const {
  constexpr std::uint64_t kHighBits = 0xAAAAAAAAAAAAAAAAull;
  int count = 0;
  int full = position / 32;
  for (int w = 0; w < full; ++w)
    count += std::popcount(words_[static_cast<std::size_t>(w)] & kHighBits);
  int rem = position % 32;
  if (rem > 0) {
    std::uint64_t m = (std::uint64_t{1} << (2 * rem)) - 1;
    count += std::popcount(words_[static_cast<std::size_t>(full)] & kHighBits & m);
  }
  return count;
}

EfbTerm EfbTerm::with_symbol(int position, EfbSymbol s) const {
  if (position < 0 || position >= n_)
    throw InvalidArgument("EFB position out of range");
  EfbTerm out = *this;
  auto &w = out.words_[static_cast<std::size_t>(position / 32)];
  int shift = 2 * (position % 32);
  w = (w & ~(std::uint64_t{3} << shift)) |
      (std::uint64_t{static_cast<std::uint8_t>(s)} << shift);
  return out;
}

EfbTerm EfbTerm::negated() const {
  EfbTerm out = *this;
  out.coeff_ = -out.coeff_;
  return out;
}

std::vector<EfbSymbol> EfbTerm::symbols() const {
  std::vector<EfbSymbol> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    out.push_back(symbol(i));
  return out;
}

std::optional<EfbTerm> vector_action(WittVector v, const EfbTerm &t) {
  if (v.position < 0 || v.position >= t.n())
    throw InvalidArgument("Witt vector index out of range");
  EfbSymbol s = t.symbol(v.position);
  std::optional<EfbSymbol> image;
  if (v.kind == WittKind::P) {
    // p qp = p (pq + qp = 1, p^2 = 0), p q = pq.
    if (s == EfbSymbol::QP)
      image = EfbSymbol::P;
    else if (s == EfbSymbol::Q)
      image = EfbSymbol::PQ;
  } else {
    if (s == EfbSymbol::PQ)
      image = EfbSymbol::Q;
    else if (s == EfbSymbol::P)
      image = EfbSymbol::QP;
  }
  if (!image)
    return std::nullopt;
  EfbTerm out = t.with_symbol(v.position, *image);
  if (t.odd_before(v.position) % 2 != 0)
    out = out.negated();
  return out;
}

bool annihilates(WittVector v, const EfbTerm &psi) {
  return !vector_action(v, psi).has_value();
}

std::vector<WittVector> mtnp_of_spinor(const EfbTerm &psi) {
  std::vector<WittVector> out;
  out.reserve(static_cast<std::size_t>(psi.n()));
  for (int i = 0; i < psi.n(); ++i) {
    EfbSymbol s = psi.symbol(i);
    bool p_first = s == EfbSymbol::PQ || s == EfbSymbol::P;
    out.push_back({i, p_first ? WittKind::P : WittKind::Q});
  }
  return out;
}

std::string to_string(const EfbTerm &t) {
  std::string out = t.coeff().str() + " *";
  for (int i = 0; i < t.n(); ++i) {
    out += ' ';
    out += symbol_name(t.symbol(i));
  }
  return out;
}

EfbTerm parse_efb_term(std::string_view line) {
  auto [coeff, tokens] = split_term_line(line, 1);
  std::vector<EfbSymbol> syms;
  for (auto tok : tokens) {
    if (tok == "qp")
      syms.push_back(EfbSymbol::QP);
    else if (tok == "pq")
      syms.push_back(EfbSymbol::PQ);
    else if (tok == "p")
      syms.push_back(EfbSymbol::P);
    else if (tok == "q")
      syms.push_back(EfbSymbol::Q);
    else
      throw ParseError("unknown EFB symbol '" + std::string(tok) + "'", 1);
  }
  return EfbTerm(std::move(syms), std::move(coeff));
}

//===----------------------------------------------------------------------===//
// DiagPattern
//===----------------------------------------------------------------------===//

DiagSymbol DiagPattern::at(int position) const noexcept {
  std::uint64_t bit = std::uint64_t{1} << position;
  if (!(care & bit))
    return DiagSymbol::ID;
  return (value & bit) ? DiagSymbol::QP : DiagSymbol::PQ;
}

DiagPattern DiagPattern::with(int position, DiagSymbol s) const noexcept {
  std::uint64_t bit = std::uint64_t{1} << position;
  DiagPattern out{care & ~bit, value & ~bit};
  if (s != DiagSymbol::ID) {
    out.care |= bit;
    if (s == DiagSymbol::QP)
      out.value |= bit;
  }
  return out;
}

int DiagPattern::fixed_count() const noexcept { return std::popcount(care); }

std::optional<DiagPattern> pattern_product(DiagPattern a,
                                           DiagPattern b) noexcept {
  if ((a.care & b.care & (a.value ^ b.value)) != 0)
    return std::nullopt;
  return DiagPattern{a.care | b.care, a.value | b.value};
}

//===----------------------------------------------------------------------===//
// DiagonalElement
//===----------------------------------------------------------------------===//

DiagonalElement::DiagonalElement(int n) : n_(n) { check_width(n); }

DiagonalElement DiagonalElement::from_terms(int n, std::vector<Term> terms) {
  DiagonalElement out(n);
  std::uint64_t allowed = low_mask(n);
  for (const auto &[pat, c] : terms) {
    if ((pat.care & ~allowed) != 0 || (pat.value & ~pat.care) != 0)
      throw InvalidArgument("pattern does not fit in " + std::to_string(n) +
                            " positions");
  }
  normalize(terms);
  out.terms_ = std::move(terms);
  return out;
}

DiagonalElement operator+(const DiagonalElement &a, const DiagonalElement &b) {
  if (a.n_ != b.n_)
    throw DimensionMismatch(static_cast<std::size_t>(a.n_),
                            static_cast<std::size_t>(b.n_));
  std::vector<DiagonalElement::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  normalize(terms);
  DiagonalElement out(a.n_);
  out.terms_ = std::move(terms);
  return out;
}

DiagonalElement operator*(const Integer &c, const DiagonalElement &a) {
  DiagonalElement out(a.n_);
  if (c == 0)
    return out;
  out.terms_ = a.terms_;
  for (auto &t : out.terms_)
    t.second *= c;
  return out;
}

DiagonalElement operator-(const DiagonalElement &a, const DiagonalElement &b) {
  return a + Integer(-1) * b;
}

DiagonalElement operator*(const DiagonalElement &a, const DiagonalElement &b) {
  return diag_mul(a, b);
}

bool operator==(const DiagonalElement &a, const DiagonalElement &b) {
  if (a.n_ != b.n_)
    return false;
  return is_zero(a - b);
}

DiagonalElement identity_element(int n) {
  return DiagonalElement::from_terms(n, {{DiagPattern{}, Integer(1)}});
}

DiagonalElement omega_element(int n, int limit) {
  check_width(n);
  if (n > limit)
    throw ResourceLimit("omega expansion over " + std::to_string(n) +
                        " positions exceeds limit " + std::to_string(limit));
  std::uint64_t full = low_mask(n);
  std::vector<DiagonalElement::Term> terms;
  terms.reserve(std::size_t{1} << n);
  for (std::uint64_t qp = 0; qp <= full; ++qp) {
    int pq_count = n - std::popcount(qp);
    terms.push_back({DiagPattern{full, qp}, Integer(pq_count % 2 ? -1 : 1)});
    if (qp == full)
      break;
  }
  return DiagonalElement::from_terms(n, std::move(terms));
}

DiagonalElement literal_element(int n, int position, bool truth) {
  check_width(n);
  if (position < 0 || position >= n)
    throw InvalidArgument("literal position out of range");
  DiagPattern p = DiagPattern{}.with(position, truth ? DiagSymbol::QP
                                                     : DiagSymbol::PQ);
  return DiagonalElement::from_terms(n, {{p, Integer(1)}});
}

DiagonalElement diag_mul(const DiagonalElement &a, const DiagonalElement &b) {
  if (a.n() != b.n())
    throw DimensionMismatch(static_cast<std::size_t>(a.n()),
                            static_cast<std::size_t>(b.n()));
  std::vector<DiagonalElement::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto &[pa, ca] : a.terms())
    for (const auto &[pb, cb] : b.terms())
      if (auto p = pattern_product(pa, pb))
        terms.push_back({*p, ca * cb});
  return DiagonalElement::from_terms(a.n(), std::move(terms));
}

Integer eval_at_mask(const DiagonalElement &a, std::uint64_t sigma_mask) {
  Integer sum = 0;
  for (const auto &[p, c] : a.terms())
    if (p.matches(sigma_mask))
      sum += c;
  return sum;
}

Integer eval_at(const DiagonalElement &a, const Assignment &sigma) {
  if (sigma.size() != a.n())
    throw DimensionMismatch(static_cast<std::size_t>(a.n()),
                            static_cast<std::size_t>(sigma.size()));
  return eval_at_mask(a, sigma.mask());
}

DiagonalElement expand_primitive(const DiagonalElement &a, int limit) {
  if (a.n() > limit)
    throw ResourceLimit("primitive expansion over " + std::to_string(a.n()) +
                        " positions exceeds limit " + std::to_string(limit));
  std::uint64_t full = low_mask(a.n());
  std::unordered_map<std::uint64_t, Integer> acc;
  for (const auto &[p, c] : a.terms()) {
    std::uint64_t free = full & ~p.care;
    std::uint64_t sub = 0;
    // Enumerate every subset of the free positions.
    do {
      acc[p.value | sub] += c;
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  std::vector<DiagonalElement::Term> terms;
  terms.reserve(acc.size());
  for (auto &[v, c] : acc)
    terms.push_back({DiagPattern{full, v}, std::move(c)});
  return DiagonalElement::from_terms(a.n(), std::move(terms));
}

//===----------------------------------------------------------------------===//
// Zero test
//===----------------------------------------------------------------------===//

namespace {

bool zero_rec(std::vector<DiagonalElement::Term> terms, int n,
              ZeroTestStats &stats) {
  normalize(terms);
  if (terms.empty())
    return true;

  // Every pattern owns at least one primitive idempotent, so a sum of
  // same-signed coefficients cannot vanish.
  bool any_pos = false, any_neg = false;
  for (const auto &t : terms) {
    if (t.second > 0)
      any_pos = true;
    else
      any_neg = true;
  }
  if (!(any_pos && any_neg)) {
    ++stats.sign_prunes;
    return false;
  }

  int best = -1, best_count = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t{1} << i;
    int count = 0;
    for (const auto &t : terms)
      if (t.first.care & bit)
        ++count;
    if (count > best_count) {
      best = i;
      best_count = count;
    }
  }
  if (best < 0)
    return false; // a single all-ID pattern with a nonzero coefficient

  ++stats.splits;
  std::uint64_t bit = std::uint64_t{1} << best;
  for (std::uint64_t side : {bit, std::uint64_t{0}}) {
    std::vector<DiagonalElement::Term> cof;
    cof.reserve(terms.size());
    for (const auto &t : terms) {
      const DiagPattern &p = t.first;
      if ((p.care & bit) && (p.value & bit) != side)
        continue;
      cof.push_back({DiagPattern{p.care & ~bit, p.value & ~bit}, t.second});
    }
    if (!zero_rec(std::move(cof), n, stats))
      return false;
  }
  return true;
}

} // namespace

bool is_zero(const DiagonalElement &a, ZeroTestStats *stats) {
  ZeroTestStats local;
  bool z = zero_rec(a.terms(), a.n(), stats ? *stats : local);
  return z;
}

//===----------------------------------------------------------------------===//
// Text form
//===----------------------------------------------------------------------===//

std::string to_string(const DiagonalElement &a) {
  auto line = [&](const Integer &c, DiagPattern p) {
    std::string out = c.str() + " *";
    for (int i = 0; i < a.n(); ++i) {
      switch (p.at(i)) {
      case DiagSymbol::QP:
        out += " qp";
        break;
      case DiagSymbol::PQ:
        out += " pq";
        break;
      case DiagSymbol::ID:
        out += " 1";
        break;
      }
    }
    return out + "\n";
  };
  if (a.empty())
    return line(Integer(0), DiagPattern{});
  std::string out;
  for (const auto &[p, c] : a.terms())
    out += line(c, p);
  return out;
}

DiagonalElement parse_diagonal(std::string_view text) {
  std::vector<DiagonalElement::Term> terms;
  int n = -1;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (split_ws(line).empty())
      continue;
    auto [coeff, tokens] = split_term_line(line, lineno);
    int width = static_cast<int>(tokens.size());
    if (n < 0)
      n = width;
    else if (width != n)
      throw ParseError("term width " + std::to_string(width) +
                           " differs from " + std::to_string(n),
                       lineno);
    if (width > kMaxDiagWidth)
      throw ParseError("too many positions", lineno);
    DiagPattern p;
    for (int i = 0; i < width; ++i) {
      auto tok = tokens[static_cast<std::size_t>(i)];
      if (tok == "qp")
        p = p.with(i, DiagSymbol::QP);
      else if (tok == "pq")
        p = p.with(i, DiagSymbol::PQ);
      else if (tok != "1")
        throw ParseError("unknown diagonal symbol '" + std::string(tok) + "'",
                         lineno);
    }
    terms.push_back({p, std::move(coeff)});
  }
  if (n < 1)
    throw ParseError("empty element", lineno);
  return DiagonalElement::from_terms(n, std::move(terms));
}

} // namespace wittsat
