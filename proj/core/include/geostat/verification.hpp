#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace geostat {

/// Outcome of one end-to-end acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: no runtime limit
};

/// Number of acceptance criteria (ids 1..kCriterionCount).
inline constexpr int kCriterionCount = 10;

/// Runs a single criterion by id. Throws std::out_of_range for unknown ids.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs every criterion in order, invoking on_result after each one.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace geostat
