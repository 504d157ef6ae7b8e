#pragma once

// Null-plane geometry in the Witt coordinate frame. Every plane handled here
// is spanned by Witt vectors at distinct positions, so inclusion and
// intersection are computed on generator sets.
//
// Sign convention: +1 at position i selects p_i, -1 selects q_i. The plane
// P = span{p_i} is the all-plus sign vector; Q is all-minus.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wittsat/clifford.hpp"
#include "wittsat/cnf.hpp"

namespace wittsat {

enum class Slot : std::int8_t { minus = -1, free = 0, plus = 1 };

/// A diagonal isometry in O(1) x ... x O(1), i.e. the plane (1, lambda).
class SignVector {
public:
  SignVector() = default;
  explicit SignVector(std::vector<int> eps);
  static SignVector all(int n, int sign);

  int n() const noexcept { return static_cast<int>(eps_.size()); }
  int operator[](int i) const { return eps_[static_cast<std::size_t>(i)]; }
  const std::vector<int> &values() const noexcept { return eps_; }

  /// "+-+" form.
  std::string to_string() const;

  friend bool operator==(const SignVector &, const SignVector &) = default;

private:
  std::vector<int> eps_;
};

/// The set of sign vectors agreeing with every fixed slot.
class TernaryPattern {
public:
  TernaryPattern() = default;
  explicit TernaryPattern(std::vector<Slot> slots) : slots_(std::move(slots)) {}

  int n() const noexcept { return static_cast<int>(slots_.size()); }
  Slot operator[](int i) const { return slots_[static_cast<std::size_t>(i)]; }
  const std::vector<Slot> &slots() const noexcept { return slots_; }
  int fixed_count() const noexcept;
  bool matches(const SignVector &eps) const;
  /// Number of member sign vectors, 2^(n - fixed).
  std::uint64_t cardinality() const;

  /// One character per slot over {+,-,*}.
  std::string to_string() const;
  static TernaryPattern parse(std::string_view line);

  friend bool operator==(const TernaryPattern &, const TernaryPattern &) = default;

private:
  std::vector<Slot> slots_;
};

/// span of Witt vectors at pairwise distinct positions, sorted by position.
class TotallyNullPlane {
public:
  TotallyNullPlane() = default;
  /// Throws InvalidArgument if two generators share a position.
  explicit TotallyNullPlane(std::vector<WittVector> generators);

  int dimension() const noexcept { return static_cast<int>(generators_.size()); }
  const std::vector<WittVector> &generators() const noexcept { return generators_; }
  bool contains(WittVector v) const;
  bool is_subspace_of(const TotallyNullPlane &other) const;
  TotallyNullPlane intersect(const TotallyNullPlane &other) const;

  /// "span{p1, q2}".
  std::string to_string() const;

  friend bool operator==(const TotallyNullPlane &, const TotallyNullPlane &) = default;

private:
  std::vector<WittVector> generators_;
};

/// True iff the Witt vectors are mutually orthogonal under the neutral form,
/// i.e. no position carries both p_i and q_i.
bool spans_totally_null(std::span<const WittVector> vectors);

/// eps_i = -1 iff sigma_i is true.
SignVector mtnp_of_assignment(const Assignment &sigma);
Assignment assignment_of(const SignVector &eps);
TotallyNullPlane plane_of(const SignVector &eps);

/// The primitive idempotent (and simple spinor) of an assignment:
/// qp where true, pq where false.
EfbTerm assignment_term(const Assignment &sigma);

/// M(z_j): p at positive clause literals, q at negated ones. Throws
/// InvalidArgument for tautologies or variables beyond n.
TotallyNullPlane tnp_of_clause(const Clause &c, int n);

/// Compatibility of a clause and an assignment, three equivalent readings.
bool compatible_by_literals(const Clause &c, const Assignment &sigma);
bool compatible_by_idempotent(const Clause &c, const Assignment &sigma);
bool compatible_by_planes(const Clause &c, const Assignment &sigma);

enum class CheckMode { fast, verify };

/// True iff sigma falsifies c. In verify mode all three readings are
/// evaluated and a disagreement throws std::logic_error.
bool compatible(const Clause &c, const Assignment &sigma,
                CheckMode mode = CheckMode::fast);

/// T'_j as a pattern: -1 where z_j holds a plain literal, +1 where it holds
/// a complemented one, free elsewhere.
TernaryPattern induced_pattern(const Clause &c, int n);

/// Patterns of every non-tautological clause; an empty clause gives the
/// all-free pattern.
std::vector<TernaryPattern> cover_patterns(const CnfFormula &f);

struct CoverStats {
  std::uint64_t splits = 0;
  std::uint64_t unate_steps = 0;
};

/// Some sign vector matched by no pattern, or nullopt if the patterns cover
/// {+1,-1}^n. Throws DimensionMismatch on width mismatch.
std::optional<SignVector> witness_uncovered(std::span<const TernaryPattern> patterns,
                                            int n, CoverStats *stats = nullptr);
bool covers(std::span<const TernaryPattern> patterns, int n,
            CoverStats *stats = nullptr);

/// psi_{z_j}: the 2^(n-k) simple spinors agreeing with z_j on its k
/// positions; for k = n this is the single assignment term.
std::vector<EfbTerm> psi_z_expansion(const Clause &c, int n);

/// Intersection of the expansion's MTNPs equals M(z_j).
bool check_intersection(const Clause &c, int n);

/// k < n - 2, the regime in which the clause spinor is proved simple.
bool in_proved_regime(const Clause &c, int n);

/// One pattern per line; blank lines and lines starting with 'c' or '#'
/// are skipped. All patterns must share one width.
std::vector<TernaryPattern> parse_pattern_dump(std::string_view text);
std::string write_pattern_dump(std::span<const TernaryPattern> patterns);

} // namespace wittsat
