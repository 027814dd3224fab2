#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace koszul {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::size_t checks = 0;
  /// First failing checks (truncated).
  std::vector<std::string> failures;
  /// Recorded observations that do not affect pass/fail.
  std::vector<std::string> findings;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t budget = 10'000'000;
};

constexpr int kAcceptanceCriteria = 11;

std::string acceptance_title(int id);
/// Runs one criterion (1..kAcceptanceCriteria); exceptions become failures.
CriterionResult run_acceptance_criterion(int id, const AcceptanceOptions& opts = {});
/// Runs all criteria in order, calling `on_result` after each one.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace koszul
