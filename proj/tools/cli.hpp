#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace handelman::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kNotNormalizable = 3,
  kNotPositiveDefinite = 4,
  kMemoryCap = 5,
  kTimeLimit = 6,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace handelman::cli
