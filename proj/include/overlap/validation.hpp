#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "overlap/closed_form.hpp"
#include "overlap/domain.hpp"

namespace overlap {

enum class ValidationGrid { kSmall, kFull };

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;  // worst gap seen
  double allowed = 0.0;   // tolerance it was held to
  std::string detail;
};

struct ValidationReport {
  ValidationGrid grid = ValidationGrid::kSmall;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

using Estimator = std::function<ProbabilityResult(const Scenario&)>;

struct ValidationOptions {
  ValidationGrid grid = ValidationGrid::kSmall;
  std::uint64_t trials = 200'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Replaceable so the harness can be exercised against a broken formula.
  Estimator universal = p_universal;
};

/// NORMAL scenarios with t_A n_A + t_B n_B <= T/2 used for the Monte Carlo
/// comparison. The full grid has 12 entries and varies all five parameters.
std::vector<Scenario> monte_carlo_grid(ValidationGrid grid);

/// Every DiscreteScenario in the box with placeable events, durations ordered.
struct OracleBox {
  std::int64_t max_t_prime;
  std::int64_t max_duration;
  std::int64_t max_count;
};
OracleBox oracle_box(ValidationGrid grid);

/// Three-way check: counting formula vs brute force, grid convergence, and
/// Monte Carlo vs the universal equation within its error bound.
ValidationReport run_validation(const ValidationOptions& options);

}  // namespace overlap
