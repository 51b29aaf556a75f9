#pragma once

#include <optional>
#include <string_view>

#include "overlap/domain.hpp"

namespace overlap {

enum class Method { kPrecise, kApprox, kUniversal, kRate };

std::string_view to_string(Method m);

struct DerivedQuantities {
  double t_plus = 0.0;   // T + (t_A + t_B) / 2
  double alpha_a = 0.0;  // T + t_A - t_A n_A - t_B n_B
  double alpha_b = 0.0;  // alpha_a - (t_A - t_B) / 2
  double tau = 0.0;      // max(t_A n_A, t_B n_B)
};

struct ProbabilityResult {
  double value = 0.0;
  double raw_value = 0.0;
  std::optional<double> error_bound;
  Method method = Method::kUniversal;
  // Set when a guard region short-circuited the formula.
  std::optional<FeasibilityClass> guard;
  // raw_value was outside [0, 1], or the estimator left its validity domain.
  bool clamped = false;
  bool swapped = false;
};

/// Expected-count parameterization: each event occurs rate * total_time times.
struct RateScenario {
  double total_time = 0.0;
  double duration_a = 0.0;
  double duration_b = 0.0;
  double rate_a = 0.0;
  double rate_b = 0.0;
};

DerivedQuantities derived_quantities(const Scenario& s);

/// Exact overlap probability for one occurrence of each event.
/// Throws DomainError unless n_A = n_B = 1.
ProbabilityResult p_star(const Scenario& s);

/// First-order approximation 1 - (1 - n_A (t_A + t_B) / T)^n_B.
/// Returns 1 with `clamped` set once the base drops to zero or below.
ProbabilityResult p_approx(const Scenario& s);

/// Universal equation with the end-overhang extension T+ and its error bound.
/// Evaluated in log space, so counts in the tens of thousands are fine.
ProbabilityResult p_universal(const Scenario& s);

/// Upper bound on the discrepancy of p_universal. std::nullopt when the bound
/// is unavailable: the scenario is not NORMAL, or alpha_B <= 0.
std::optional<double> error_bound(const Scenario& s);

/// p_universal with real-valued expected counts n = rate * T.
ProbabilityResult p_universal_rate(const RateScenario& r);

/// Probability of no overlap when the window is extended by `extension`:
///   (T+d - t_A n_A - t_B n_B)^(n_A+n_B) / ((T+d - t_A n_A)^n_A (T+d - t_B n_B)^n_B)
/// extension = 0 is the fully-inside limit, extension = (t_A+t_B)/2 the universal equation.
/// Returns 0 when the numerator base is <= 0. Counts may be fractional.
double no_overlap_extended(double total_time, double duration_a, double duration_b,
                           double count_a, double count_b, double extension);

/// Same quantity as p_universal's raw value, computed with plain std::pow.
/// Returns NaN once an intermediate power overflows. Used to cross-check the log-space path.
double p_universal_direct(const Scenario& s);

}  // namespace overlap
