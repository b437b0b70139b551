#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otl::cli {

enum ExitCode : int {
  kOk = 0,
  kNonConvex = 1,        // check-loss only
  kInputError = 2,       // unreadable or malformed input, invalid data
  kOrderViolated = 3,    // io/pio with --policy error
  kInstanceTooLarge = 4, // brute force over its cap
  kUsage = 5,            // bad flags or flag combinations
  kRiskMismatch = 6,     // bench cross-check failed
  kInternal = 7,
};

/// Runs one command line (args excludes the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otl::cli
