#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incwb::cli {

/// Stable exit-code contract.
enum ExitCode : int {
  kSuccess = 0,
  kViolated = 1,
  kInputError = 2,
  kIndeterminate = 3,
};

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Runs one command line (without the program name). Reports go to --out
/// when given, next to a "<out>.manifest.json" run manifest; otherwise to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incwb::cli
