#include "wittsat/geometry.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "wittsat/encoding.hpp"
#include "wittsat/errors.hpp"

namespace wittsat {

//===----------------------------------------------------------------------===//
// SignVector / TernaryPattern / TotallyNullPlane
//===----------------------------------------------------------------------===//

SignVector::SignVector(std::vector<int> eps) : eps_(std::move(eps)) {
  for (int e : eps_)
    if (e != 1 && e != -1)
      throw InvalidArgument("sign vector entries must be +1 or -1");
}

SignVector SignVector::all(int n, int sign) {
  return SignVector(std::vector<int>(static_cast<std::size_t>(n), sign));
}

std::string SignVector::to_string() const {
  std::string s;
  for (int e : eps_)
    s += e > 0 ? '+' : '-';
  return s;
}

int TernaryPattern::fixed_count() const noexcept {
  return static_cast<int>(std::count_if(slots_.begin(), slots_.end(),
                                        [](Slot s) { return s != Slot::free; }));
}

bool TernaryPattern::matches(const SignVector &eps) const {
  if (eps.n() != n())
    throw DimensionMismatch(static_cast<std::size_t>(n()),
                            static_cast<std::size_t>(eps.n()));
  for (int i = 0; i < n(); ++i)
    if ((*this)[i] != Slot::free && static_cast<int>((*this)[i]) != eps[i])
      return false;
  return true;
}

std::uint64_t TernaryPattern::cardinality() const {
  int free = n() - fixed_count();
  if (free >= 64)
    throw ResourceLimit("pattern cardinality overflows 64 bits");
  return std::uint64_t{1} << free;
}

std::string TernaryPattern::to_string() const {
  std::string s;
  for (Slot x : slots_)
    s += x == Slot::plus ? '+' : x == Slot::minus ? '-' : '*';
  return s;
}

namespace {

TernaryPattern parse_pattern_line(std::string_view line, std::size_t lineno) {
  std::vector<Slot> slots;
  for (char ch : line) {
    if (ch == '+')
      slots.push_back(Slot::plus);
    else if (ch == '-')
      slots.push_back(Slot::minus);
    else if (ch == '*')
      slots.push_back(Slot::free);
    else if (ch == ' ' || ch == '\t' || ch == '\r')
      continue;
    else
      throw ParseError(std::string("unexpected pattern character '") + ch + "'",
                       lineno);
  }
  if (slots.empty())
    throw ParseError("empty pattern", lineno);
  return TernaryPattern(std::move(slots));
}

} // namespace

TernaryPattern TernaryPattern::parse(std::string_view line) {
  return parse_pattern_line(line, 1);
}

TotallyNullPlane::TotallyNullPlane(std::vector<WittVector> generators)
    : generators_(std::move(generators)) {
  std::sort(generators_.begin(), generators_.end());
  for (std::size_t i = 1; i < generators_.size(); ++i)
    if (generators_[i].position == generators_[i - 1].position)
      throw InvalidArgument("generators " + generators_[i - 1].to_string() +
                            " and " + generators_[i].to_string() +
                            " do not span a totally null plane");
}

bool TotallyNullPlane::contains(WittVector v) const {
  return std::binary_search(generators_.begin(), generators_.end(), v);
}

bool TotallyNullPlane::is_subspace_of(const TotallyNullPlane &other) const {
  return std::includes(other.generators_.begin(), other.generators_.end(),
                       generators_.begin(), generators_.end());
}

TotallyNullPlane TotallyNullPlane::intersect(const TotallyNullPlane &other) const {
  std::vector<WittVector> common;
  std::set_intersection(generators_.begin(), generators_.end(),
                        other.generators_.begin(), other.generators_.end(),
                        std::back_inserter(common));
  return TotallyNullPlane(std::move(common));
}

std::string TotallyNullPlane::to_string() const {
  std::string s = "span{";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i)
      s += ", ";
    s += generators_[i].to_string();
  }
  return s + "}";
}

bool spans_totally_null(std::span<const WittVector> vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (vectors[i].position == vectors[j].position &&
          vectors[i].kind != vectors[j].kind)
        return false; // 2 B(p_i, q_i) = 1
  return true;
}

//===----------------------------------------------------------------------===//
// Assignments and clauses
//===----------------------------------------------------------------------===//

SignVector mtnp_of_assignment(const Assignment &sigma) {
  std::vector<int> eps(static_cast<std::size_t>(sigma.size()));
  for (int i = 0; i < sigma.size(); ++i)
    eps[static_cast<std::size_t>(i)] = sigma[i] ? -1 : 1;
  return SignVector(std::move(eps));
}

Assignment assignment_of(const SignVector &eps) {
  Assignment a(eps.n(), false);
  for (int i = 0; i < eps.n(); ++i)
    a.set(i, eps[i] < 0);
  return a;
}

TotallyNullPlane plane_of(const SignVector &eps) {
  std::vector<WittVector> gens;
  for (int i = 0; i < eps.n(); ++i)
    gens.push_back({i, eps[i] > 0 ? WittKind::P : WittKind::Q});
  return TotallyNullPlane(std::move(gens));
}

EfbTerm assignment_term(const Assignment &sigma) {
  std::vector<EfbSymbol> syms;
  for (int i = 0; i < sigma.size(); ++i)
    syms.push_back(sigma[i] ? EfbSymbol::QP : EfbSymbol::PQ);
  return EfbTerm(std::move(syms));
}

namespace {

void require_clause(const Clause &c, int n) {
  if (c.is_tautology())
    throw InvalidArgument("tautological clause has no falsifying assignment");
  if (c.max_var() >= n)
    throw InvalidArgument("clause variable exceeds n");
}

} // namespace

TotallyNullPlane tnp_of_clause(const Clause &c, int n) {
  require_clause(c, n);
  std::vector<WittVector> gens;
  for (const auto &l : c.literals())
    gens.push_back({l.var, l.negated ? WittKind::Q : WittKind::P});
  return TotallyNullPlane(std::move(gens));
}

bool compatible_by_literals(const Clause &c, const Assignment &sigma) {
  // Every literal of z_j (the complement of each clause literal) occurs in
  // the assignment.
  for (const auto &l : c.literals())
    if (sigma[l.var] != l.negated)
      return false;
  return true;
}

bool compatible_by_idempotent(const Clause &c, const Assignment &sigma) {
  const int n = sigma.size();
  DiagPattern full{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1,
                   sigma.mask()};
  auto rho = DiagonalElement::from_terms(n, {{full, Integer(1)}});
  return diag_mul(rho, encode_clause(c, n)) == rho;
}

bool compatible_by_planes(const Clause &c, const Assignment &sigma) {
  TotallyNullPlane assignment_plane(mtnp_of_spinor(assignment_term(sigma)));
  TotallyNullPlane clause_plane = tnp_of_clause(c, sigma.size());
  return clause_plane.intersect(assignment_plane) == clause_plane;
}

bool compatible(const Clause &c, const Assignment &sigma, CheckMode mode) {
  bool by_literals = compatible_by_literals(c, sigma);
  if (mode == CheckMode::verify) {
    bool by_idempotent = compatible_by_idempotent(c, sigma);
    bool by_planes = compatible_by_planes(c, sigma);
    if (by_literals != by_idempotent || by_literals != by_planes)
      throw std::logic_error("compatibility readings disagree for assignment " +
                             sigma.to_string());
  }
  return by_literals;
}

TernaryPattern induced_pattern(const Clause &c, int n) {
  require_clause(c, n);
  std::vector<Slot> slots(static_cast<std::size_t>(n), Slot::free);
  for (const auto &l : c.literals())
    slots[static_cast<std::size_t>(l.var)] = l.negated ? Slot::minus : Slot::plus;
  return TernaryPattern(std::move(slots));
}

std::vector<TernaryPattern> cover_patterns(const CnfFormula &f) {
  std::vector<TernaryPattern> out;
  if (f.empty_clauses > 0)
    out.emplace_back(std::vector<Slot>(static_cast<std::size_t>(f.n), Slot::free));
  for (const auto &c : f.clauses)
    if (!c.is_tautology())
      out.push_back(induced_pattern(c, f.n));
  return out;
}

//===----------------------------------------------------------------------===//
// Cover check
//===----------------------------------------------------------------------===//

namespace {

struct Cube {
  std::uint64_t fixed;
  std::uint64_t minus;
};

// Returns the minus-mask of an uncovered sign vector, if any.
std::optional<std::uint64_t> uncovered_rec(std::vector<Cube> cubes, int n,
                                           std::uint64_t minus_so_far,
                                           CoverStats &stats) {
  for (const auto &c : cubes)
    if (c.fixed == 0)
      return std::nullopt;
  if (cubes.empty())
    return minus_so_far; // unassigned positions default to +1

  int best = -1, best_count = 0, best_plus = 0, best_minus = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t{1} << i;
    int plus = 0, minus = 0;
    for (const auto &c : cubes)
      if (c.fixed & bit)
        ++((c.minus & bit) ? minus : plus);
    if (plus + minus > best_count) {
      best = i;
      best_count = plus + minus;
      best_plus = plus;
      best_minus = minus;
    }
  }
  std::uint64_t bit = std::uint64_t{1} << best;

  auto cofactor = [&](bool minus_side) {
    std::vector<Cube> out;
    out.reserve(cubes.size());
    for (const auto &c : cubes) {
      if ((c.fixed & bit) && (((c.minus & bit) != 0) != minus_side))
        continue;
      out.push_back({c.fixed & ~bit, c.minus & ~bit});
    }
    return out;
  };

  // A variable fixed in one polarity only: the opposite cofactor is a subset
  // of the other, so it alone decides.
  if (best_minus == 0 || best_plus == 0) {
    ++stats.unate_steps;
    bool minus_side = best_minus == 0;
    return uncovered_rec(cofactor(minus_side), n,
                         minus_side ? (minus_so_far | bit) : minus_so_far,
                         stats);
  }

  ++stats.splits;
  if (auto w = uncovered_rec(cofactor(false), n, minus_so_far, stats))
    return w;
  return uncovered_rec(cofactor(true), n, minus_so_far | bit, stats);
}

} // namespace

std::optional<SignVector> witness_uncovered(std::span<const TernaryPattern> patterns,
                                            int n, CoverStats *stats) {
  if (n < 1)
    throw InvalidArgument("cover check needs n >= 1");
  if (n > 64)
    throw ResourceLimit("cover check supports at most 64 positions");
  std::vector<Cube> cubes;
  cubes.reserve(patterns.size());
  for (const auto &p : patterns) {
    if (p.n() != n)
      throw DimensionMismatch(static_cast<std::size_t>(n),
                              static_cast<std::size_t>(p.n()));
    Cube c{0, 0};
    for (int i = 0; i < n; ++i) {
      if (p[i] == Slot::free)
        continue;
      c.fixed |= std::uint64_t{1} << i;
      if (p[i] == Slot::minus)
        c.minus |= std::uint64_t{1} << i;
    }
    cubes.push_back(c);
  }
  CoverStats local;
  auto minus = uncovered_rec(std::move(cubes), n, 0, stats ? *stats : local);
  if (!minus)
    return std::nullopt;
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    eps[static_cast<std::size_t>(i)] = ((*minus >> i) & 1u) ? -1 : 1;
  return SignVector(std::move(eps));
}

bool covers(std::span<const TernaryPattern> patterns, int n, CoverStats *stats) {
  return !witness_uncovered(patterns, n, stats).has_value();
}

//===----------------------------------------------------------------------===//
// Clause spinor expansion
//===----------------------------------------------------------------------===//

std::vector<EfbTerm> psi_z_expansion(const Clause &c, int n) {
  require_clause(c, n);
  std::vector<EfbSymbol> base(static_cast<std::size_t>(n), EfbSymbol::QP);
  std::vector<int> free_positions;
  std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  for (const auto &l : c.literals()) {
    base[static_cast<std::size_t>(l.var)] = l.negated ? EfbSymbol::QP : EfbSymbol::PQ;
    fixed[static_cast<std::size_t>(l.var)] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!fixed[static_cast<std::size_t>(i)])
      free_positions.push_back(i);
  if (free_positions.size() > 24)
    throw ResourceLimit("clause spinor expansion has more than 2^24 terms");

  std::vector<EfbTerm> out;
  std::uint64_t count = std::uint64_t{1} << free_positions.size();
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    auto syms = base;
    for (std::size_t b = 0; b < free_positions.size(); ++b)
      syms[static_cast<std::size_t>(free_positions[b])] =
          ((mask >> b) & 1u) ? EfbSymbol::PQ : EfbSymbol::QP;
    out.emplace_back(std::move(syms));
  }
  return out;
}

bool check_intersection(const Clause &c, int n) {
  auto terms = psi_z_expansion(c, n);
  TotallyNullPlane common(mtnp_of_spinor(terms.front()));
  for (std::size_t i = 1; i < terms.size(); ++i)
    common = common.intersect(TotallyNullPlane(mtnp_of_spinor(terms[i])));
  return common == tnp_of_clause(c, n);
}

bool in_proved_regime(const Clause &c, int n) { return c.width() < n - 2; }

//===----------------------------------------------------------------------===//
// Pattern dumps
//===----------------------------------------------------------------------===//

std::vector<TernaryPattern> parse_pattern_dump(std::string_view text) {
  std::vector<TernaryPattern> out;
  std::size_t pos = 0, lineno = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == 'c' || line[first] == '#')
      continue;
    TernaryPattern p = parse_pattern_line(line, lineno);
    if (!out.empty() && p.n() != out.front().n())
      throw ParseError("pattern width " + std::to_string(p.n()) +
                           " differs from " + std::to_string(out.front().n()),
                       lineno);
    out.push_back(std::move(p));
  }
  return out;
}

std::string write_pattern_dump(std::span<const TernaryPattern> patterns) {
  std::string out;
  for (const auto &p : patterns)
    out += p.to_string() + "\n";
  return out;
}

} // namespace wittsat
