#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace engel {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitVerificationFailure = 3,
  kExitBudgetExhausted = 4,
};

/// Parsed command line, echoed into every report.
struct ExperimentConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 42;
  int samples = 1000;
  int degree = 4;
  int restarts = 8;
  std::string out;
  std::string format = "json";
};

/// Runs one command line (without the program name). The JSON report goes
/// to `out` or to --out; diagnostics go to `err`. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace engel
