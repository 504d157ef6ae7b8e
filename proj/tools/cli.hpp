#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wittsat::cli {

enum ExitCode : int {
  kSat = 0,
  kUnsat = 1,
  kInputError = 2,
  kResourceLimit = 3,
  kDivergence = 4,
  kSolverSat = 10,
  kSolverUnsat = 20,
};

/// Runs `wittsat <args...>` (args excludes the program name). Input named
/// "-" is read from `in`. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        std::istream &in);

} // namespace wittsat::cli
