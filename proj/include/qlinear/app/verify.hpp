#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qlinear::app {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst deviation observed (or the measured quantity for one-sided checks).
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
  /// Machine-readable summary.
  std::string to_json() const;
};

/// Names of the checks, in execution order.
std::vector<std::string> verify_check_names();

/// Runs every invariant check. Randomized checks draw from a generator
/// seeded with `seed`. A check that throws counts as failed. `progress` is
/// called after each check.
VerifyReport run_verify(std::uint64_t seed,
                        const std::function<void(const CheckResult&)>& progress = {});

}  // namespace qlinear::app
