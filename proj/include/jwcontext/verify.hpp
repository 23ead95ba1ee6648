#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jwcontext {

/// One invariant-suite row: worst observed error against its threshold.
struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

std::vector<CheckResult> verify_fock(std::uint64_t seed);
std::vector<CheckResult> verify_jw(std::uint64_t seed);
std::vector<CheckResult> verify_correlators(std::uint64_t seed);
std::vector<CheckResult> verify_inequalities(std::uint64_t seed);

/// scope: "all" | "fock" | "jw" | "correlators" | "inequalities".
std::vector<CheckResult> verify_scope(const std::string& scope, std::uint64_t seed);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace jwcontext
