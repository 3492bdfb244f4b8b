#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace riesz {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;
  double seconds = 0;

  bool passed() const { return failures == 0; }
};

struct SelftestOptions {
  bool full = false;
  std::uint64_t seed = 1;
  /// Negative control: deliberately corrupts one lattice identity.
  bool mutate = false;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options);
nlohmann::json selftest_json(const std::vector<SuiteResult>& results);

}  // namespace riesz
