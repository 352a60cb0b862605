#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splinemod::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kBudgetExceeded = 3,
  kMismatch = 4,
};

/// Runs `splinemod <args...>` (args exclude the program name). Reports go to
/// out, diagnostics to err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splinemod::cli
