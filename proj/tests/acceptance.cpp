// Runs the twelve acceptance criteria at their stated tolerances and
// runtime limits; one line per criterion, nonzero exit if any fails.
// Usage: acceptance [seed] [suite-name]
#include <cstdio>
#include <cstdlib>
#include <string>

#include "engel/suites.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = engel::kReferenceSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const std::string only = argc > 2 ? argv[2] : "";
  int failed = 0, ran = 0;
  for (const auto& info : engel::acceptance_suites()) {
    if (!only.empty() && info.name != only) continue;
    ++ran;
    engel::SuiteResult r;
    try {
      r = engel::run_suite(info, seed);
    } catch (const std::exception& e) {
      r.info = info;
      r.failures = 1;
      r.summary = std::string("exception: ") + e.what();
    }
    failed += !r.pass();
    std::string verdict = r.pass() ? "PASS" : "FAIL";
    if (r.checks_pass() && !r.in_time()) r.summary += "; over the time limit";
    std::printf("[%s] %2d %-20s %8.2f s (limit %g s)  %s\n", verdict.c_str(), info.id, info.name.c_str(), r.seconds,
                info.limit_seconds, r.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed (seed %llu)\n", ran - failed, ran, static_cast<unsigned long long>(seed));
  return failed == 0 && ran > 0 ? 0 : 1;
}
