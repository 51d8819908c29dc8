#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engel/io.hpp"

namespace engel {

/// Seed of the reference run.
inline constexpr std::uint64_t kReferenceSeed = 42;

struct SuiteInfo {
  int id = 0;
  std::string name;
  double limit_seconds = 0.0;
};

/// The twelve acceptance suites in id order.
const std::vector<SuiteInfo>& acceptance_suites();
/// Throws std::invalid_argument for an unknown name.
const SuiteInfo& suite_info(std::string_view name);

struct SuiteResult {
  SuiteInfo info;
  std::uint64_t seed = 0;
  int cases = 0;
  int failures = 0;
  /// A sampled disc violated a lemma bound.
  bool counterexample = false;
  /// Set by the runner; kept out of the report so reports are reproducible.
  double seconds = 0.0;
  std::string summary;
  /// Deterministic for a fixed seed.
  Json report;

  bool checks_pass() const { return failures == 0; }
  bool in_time() const { return seconds < info.limit_seconds; }
  bool pass() const { return checks_pass() && in_time(); }
};

/// Runs one suite and times it.
SuiteResult run_suite(const SuiteInfo& info, std::uint64_t seed);

/// Search budget of the Finsler suite.
SearchConfig finsler_suite_config(std::uint64_t seed);

}  // namespace engel
