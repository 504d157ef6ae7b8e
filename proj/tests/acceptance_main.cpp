// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "wittsat/acceptance.hpp"

int main(int argc, char **argv) {
  wittsat::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i)
    opts.only.push_back(std::atoi(argv[i]));

  int failed = 0;
  wittsat::run_acceptance(opts, [&](const wittsat::CriterionResult &r) {
    std::printf("%s\n", wittsat::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
