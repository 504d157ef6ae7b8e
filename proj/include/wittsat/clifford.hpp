#pragma once

// Exact symbolic fragment of the Clifford algebra of the neutral space R^{n,n}
// expressed in the Extended Fock Basis (EFB). Two families of elements live
// here:
//
//  * EfbTerm: a single basis element psi_1 psi_2 ... psi_n with
//    psi_i in {q_i p_i, p_i q_i, p_i, q_i} and an integer coefficient.
//  * DiagonalElement: an integer combination of products of the commuting
//    idempotents q_i p_i / p_i q_i, with the identity {q_i, p_i} allowed at
//    any position. This is the subalgebra in which the Boolean encoding lives.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wittsat/assignment.hpp"

namespace wittsat {

using Integer = boost::multiprecision::cpp_int;

//===----------------------------------------------------------------------===//
// Witt vectors and EFB symbols
//===----------------------------------------------------------------------===//

enum class WittKind : std::uint8_t { P, Q };

/// One null vector p_i or q_i of the Witt basis. `position` is 0-based.
struct WittVector {
  int position = 0;
  WittKind kind = WittKind::P;

  WittVector opposite() const {
    return {position, kind == WittKind::P ? WittKind::Q : WittKind::P};
  }
  /// "p3", "q1" (1-based).
  std::string to_string() const;

  friend auto operator<=>(const WittVector &, const WittVector &) = default;
};

/// The four EFB factors at a position; the high bit is the Clifford parity.
enum class EfbSymbol : std::uint8_t { QP = 0, PQ = 1, P = 2, Q = 3 };

constexpr int parity(EfbSymbol s) noexcept {
  return (static_cast<int>(s) >> 1) & 1;
}

std::string_view symbol_name(EfbSymbol s) noexcept;

//===----------------------------------------------------------------------===//
// EfbTerm
//===----------------------------------------------------------------------===//

/// A single EFB basis element times an integer, packed at 2 bits per position.
class EfbTerm {
public:
  EfbTerm(std::vector<EfbSymbol> symbols, Integer coeff = 1);

  int n() const noexcept { return n_; }
  EfbSymbol symbol(int position) const;
  const Integer &coeff() const noexcept { return coeff_; }

  /// Number of odd-grade symbols strictly before `position`.
  int odd_before(int position) const;

  EfbTerm with_symbol(int position, EfbSymbol s) const;
  EfbTerm negated() const;
  std::vector<EfbSymbol> symbols() const;

  friend bool operator==(const EfbTerm &, const EfbTerm &) = default;

private:
  int n_;
  std::vector<std::uint64_t> words_;
  Integer coeff_;
};

/// Left Clifford action v * t. Returns nullopt when the product vanishes.
std::optional<EfbTerm> vector_action(WittVector v, const EfbTerm &t);

/// True iff v * psi = 0.
bool annihilates(WittVector v, const EfbTerm &psi);

/// Generators of the maximal totally null plane M(psi): per position, the
/// null vector in first place of the factor (pq, p -> p; qp, q -> q).
std::vector<WittVector> mtnp_of_spinor(const EfbTerm &psi);

/// "coeff * s1 s2 ... sn" with s in {qp, pq, p, q}.
std::string to_string(const EfbTerm &t);
EfbTerm parse_efb_term(std::string_view line);

//===----------------------------------------------------------------------===//
// DiagonalElement
//===----------------------------------------------------------------------===//

/// Per-position factor of a diagonal pattern. ID is {q_i, p_i} = 1.
enum class DiagSymbol : std::uint8_t { QP, PQ, ID };

/// Widest pattern representable by DiagPattern.
inline constexpr int kMaxDiagWidth = 64;

/// A product of per-position factors packed as two masks: `care` has bit i
/// set when position i is QP or PQ, `value` has bit i set for QP.
struct DiagPattern {
  std::uint64_t care = 0;
  std::uint64_t value = 0;

  DiagSymbol at(int position) const noexcept;
  DiagPattern with(int position, DiagSymbol s) const noexcept;
  int fixed_count() const noexcept;
  /// True iff the primitive idempotent of `assignment_mask` lies in this pattern.
  bool matches(std::uint64_t assignment_mask) const noexcept {
    return ((value ^ assignment_mask) & care) == 0;
  }

  friend auto operator<=>(const DiagPattern &, const DiagPattern &) = default;
};

/// Product of two patterns, or nullopt if some position meets QP * PQ.
std::optional<DiagPattern> pattern_product(DiagPattern a, DiagPattern b) noexcept;

/// Sparse integer combination of diagonal patterns over n positions. The
/// stored form is sorted, merged and free of zero coefficients, but it is not
/// canonical: equality is semantic (see operator==).
class DiagonalElement {
public:
  using Term = std::pair<DiagPattern, Integer>;

  /// The zero element.
  explicit DiagonalElement(int n);

  /// Merges like patterns and drops zero coefficients.
  static DiagonalElement from_terms(int n, std::vector<Term> terms);

  int n() const noexcept { return n_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  /// True iff no terms are stored (sufficient, not necessary, for zero).
  bool empty() const noexcept { return terms_.empty(); }

  friend DiagonalElement operator+(const DiagonalElement &a,
                                   const DiagonalElement &b);
  friend DiagonalElement operator-(const DiagonalElement &a,
                                   const DiagonalElement &b);
  friend DiagonalElement operator*(const Integer &c, const DiagonalElement &a);
  friend DiagonalElement operator*(const DiagonalElement &a,
                                   const DiagonalElement &b);

  /// Semantic equality: evaluations agree on every primitive idempotent.
  friend bool operator==(const DiagonalElement &a, const DiagonalElement &b);

  /// Same stored terms.
  bool structurally_equal(const DiagonalElement &other) const {
    return n_ == other.n_ && terms_ == other.terms_;
  }

private:
  int n_;
  std::vector<Term> terms_;
};

DiagonalElement identity_element(int n);

/// omega = gamma_1 ... gamma_2n = [q_1,p_1] ... [q_n,p_n], fully expanded.
DiagonalElement omega_element(int n, int limit = 24);

/// rho_i (q_i p_i) when `truth` holds, else its complement p_i q_i.
DiagonalElement literal_element(int n, int position, bool truth);

/// Positionwise product; QP * PQ kills the term pair.
DiagonalElement diag_mul(const DiagonalElement &a, const DiagonalElement &b);

/// Coordinate on the primitive idempotent selected by `sigma`.
Integer eval_at(const DiagonalElement &a, const Assignment &sigma);
Integer eval_at_mask(const DiagonalElement &a, std::uint64_t sigma_mask);

/// Rewrites every ID as QP + PQ. Throws ResourceLimit when n > limit.
DiagonalElement expand_primitive(const DiagonalElement &a, int limit = 24);

struct ZeroTestStats {
  std::uint64_t splits = 0;
  std::uint64_t sign_prunes = 0;
};

/// Semantic zero test by recursive co-factor splitting on the most
/// constrained position.
bool is_zero(const DiagonalElement &a, ZeroTestStats *stats = nullptr);

/// One term per line: "coeff * s1 s2 ... sn" with s in {qp, pq, 1}.
std::string to_string(const DiagonalElement &a);
DiagonalElement parse_diagonal(std::string_view text);

} // namespace wittsat
