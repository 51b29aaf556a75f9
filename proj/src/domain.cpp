#include "overlap/domain.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace overlap {

std::string_view to_string(FeasibilityClass c) {
  switch (c) {
    case FeasibilityClass::kNoEvent:
      return "NO_EVENT";
    case FeasibilityClass::kCertainOverlap:
      return "CERTAIN_OVERLAP";
    case FeasibilityClass::kNormal:
      return "NORMAL";
    case FeasibilityClass::kInfeasiblePlacement:
      return "INFEASIBLE_PLACEMENT";
  }
  return "UNKNOWN";
}

void validate(const Scenario& s) {
  if (!std::isfinite(s.total_time) || s.total_time <= 0.0) {
    throw ValidationError("total time must be a finite positive number");
  }
  for (const auto* e : {&s.event_a, &s.event_b}) {
    if (!std::isfinite(e->duration) || e->duration <= 0.0) {
      throw ValidationError("event durations must be finite positive numbers");
    }
    if (e->count < 0) {
      throw ValidationError("event counts must be nonnegative");
    }
  }
}

Scenario normalize(const Scenario& raw) {
  validate(raw);
  Scenario s = raw;
  const bool shorter = s.event_a.duration < s.event_b.duration;
  const bool tie_fewer =
      s.event_a.duration == s.event_b.duration && s.event_a.count < s.event_b.count;
  if (shorter || tie_fewer) {
    std::swap(s.event_a, s.event_b);
    s.swapped = !s.swapped;
  }
  return s;
}

bool placeable(double total_time, double duration, std::int64_t count) {
  if (count <= 1) return true;
  return total_time > static_cast<double>(count - 1) * duration;
}

FeasibilityClass classify(const Scenario& raw) {
  const Scenario s = normalize(raw);
  const auto& a = s.event_a;
  const auto& b = s.event_b;
  if (a.count == 0 || b.count == 0) return FeasibilityClass::kNoEvent;
  const double T = s.total_time;
  if (T <= a.duration * static_cast<double>(a.count) ||
      T <= b.duration * static_cast<double>(b.count)) {
    return FeasibilityClass::kCertainOverlap;
  }
  // Unreachable while the certain-overlap guard above holds, since (n-1)t < nt.
  if (!placeable(T, a.duration, a.count) || !placeable(T, b.duration, b.count)) {
    return FeasibilityClass::kInfeasiblePlacement;
  }
  return FeasibilityClass::kNormal;
}

std::string describe(const Scenario& s) {
  std::ostringstream os;
  os << "(T=" << s.total_time << ", t_A=" << s.event_a.duration << ", t_B=" << s.event_b.duration
     << ", n_A=" << s.event_a.count << ", n_B=" << s.event_b.count << ")";
  return os.str();
}

}  // namespace overlap
