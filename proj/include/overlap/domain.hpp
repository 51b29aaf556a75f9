#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace overlap {

/// Raised when a scenario violates a type invariant (non-positive time, negative count).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is called outside the parameter region it is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EventSpec {
  double duration = 0.0;
  std::int64_t count = 0;

  friend bool operator==(const EventSpec&, const EventSpec&) = default;
};

/// Total observation window plus the two recurring events. After normalize(),
/// event_a is the event with the longer (or equal) duration.
struct Scenario {
  double total_time = 0.0;
  EventSpec event_a;
  EventSpec event_b;
  bool swapped = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class FeasibilityClass {
  kNoEvent,
  kCertainOverlap,
  kNormal,
  kInfeasiblePlacement,
};

std::string_view to_string(FeasibilityClass c);

/// Throws ValidationError unless total_time > 0, both durations > 0 and both counts >= 0.
/// Non-finite values are rejected as well.
void validate(const Scenario& s);

/// Orders the events so that event_a has the longer duration (on a tie, the
/// larger count). Exchanging the events toggles `swapped`. Idempotent.
Scenario normalize(const Scenario& raw);

/// Guard regions are checked in order: no occurrence, certain overlap
/// (T <= t*n for either event), infeasible placement (T <= (n-1)*t).
FeasibilityClass classify(const Scenario& s);

/// True when `count` occurrences of length `duration` fit without self-overlap
/// under the continuous start-in-[0,T) model.
bool placeable(double total_time, double duration, std::int64_t count);

std::string describe(const Scenario& s);

}  // namespace overlap
