#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selberg/randmodel.hpp"

namespace selberg {

struct CheckResult {
  std::string suite;
  std::string name;
  int criterion = 0;  // 1..10 for acceptance criteria, 0 otherwise
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;  // fewer Monte-Carlo and zeta-line samples
  bool include_criteria = true;
  std::uint64_t seed = kDefaultSeed;
};

inline constexpr int kCriterionCount = 10;

const std::vector<std::string>& suite_names();  // series ... zetaline, all
bool is_suite(const std::string& name);

CheckResult run_criterion(int id, const VerifyOptions& opts = {});
// All criteria in order, sharing one set of fixtures.
std::vector<CheckResult> run_criteria(const VerifyOptions& opts = {});
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

// Criteria that are computed faithfully but cannot hold at T = 1e6 (see
// README); the acceptance runner reports them without failing the build.
bool known_unattainable(int id);

}  // namespace selberg
