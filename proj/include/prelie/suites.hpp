#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prelie {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::string rerun;  // command line reproducing this run
  bool passed() const { return failures.empty(); }
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 4;  // size bound for randomly sampled trees
};

// Published suite names, in canonical run order.
const std::vector<std::string>& suite_names();

// Runs one named suite; throws unknown_suite. Output is a pure
// function of the config (suites draw every random choice from one
// seeded generator).
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<SuiteResult> run_all_suites(const SuiteConfig& cfg);

// Deterministic text report, one block per suite.
std::string render_report(const SuiteResult& r);

}  // namespace prelie
