#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wittsat {

/// A total truth assignment. Position i (0-based) holds variable i+1.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}
  Assignment(int n, bool fill) : values_(static_cast<std::size_t>(n), fill) {}

  /// Bit i of `mask` is the value of variable i+1; requires n <= 64.
  static Assignment from_mask(int n, std::uint64_t mask);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  bool operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  void set(int i, bool v) { values_[static_cast<std::size_t>(i)] = v; }
  const std::vector<bool> &values() const noexcept { return values_; }

  std::uint64_t mask() const;

  /// Signed DIMACS literals, one per variable (v for true, -v for false).
  std::vector<int> to_dimacs() const;

  /// Compact form, e.g. "TFT".
  std::string to_string() const;

  friend bool operator==(const Assignment &, const Assignment &) = default;
  friend auto operator<=>(const Assignment &a, const Assignment &b) {
    return a.values_ <=> b.values_;
  }

private:
  std::vector<bool> values_;
};

} // namespace wittsat
