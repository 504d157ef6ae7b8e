#pragma once

// The embedded acceptance suite. Each criterion runs against an independent
// oracle and reports a single pass/fail line.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wittsat {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0x5eed2024;
  /// Run only these criteria (1..10); empty runs all.
  std::vector<int> only;
};

using CriterionCallback = std::function<void(const CriterionResult &)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options = {},
                                            const CriterionCallback &on_result = {});

/// "criterion  3  PASS  title (1.23 s): detail"
std::string format_result(const CriterionResult &r);

} // namespace wittsat
