#include "overlap/discrete_oracle.hpp"

#include <cmath>
#include <string>

#include "overlap/closed_form.hpp"

namespace overlap {

namespace {

void check(const DiscreteScenario& d) {
  if (d.t_prime < 1 || d.dur_a < 1 || d.dur_b < 1) {
    throw ValidationError("grid length and durations must be positive integers");
  }
  if (d.n_a < 0 || d.n_b < 0) throw ValidationError("counts must be nonnegative");
}

// Occupied cells of one placement, packed into 64-bit words.
using Mask = std::vector<std::uint64_t>;

void enumerate_masks(std::int64_t t_prime, std::int64_t dur, std::int64_t remaining,
                     std::int64_t first_start, Mask& current, std::vector<Mask>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  // Leave room for the remaining occurrences after this one.
  const std::int64_t last_start = t_prime - dur * remaining;
  for (std::int64_t start = first_start; start <= last_start; ++start) {
    for (std::int64_t c = start; c < start + dur; ++c) current[c / 64] |= std::uint64_t{1} << (c % 64);
    enumerate_masks(t_prime, dur, remaining - 1, start + dur, current, out);
    for (std::int64_t c = start; c < start + dur; ++c) current[c / 64] &= ~(std::uint64_t{1} << (c % 64));
  }
}

std::vector<Mask> all_placements(std::int64_t t_prime, std::int64_t dur, std::int64_t n) {
  Mask current(static_cast<std::size_t>((t_prime + 63) / 64), 0);
  std::vector<Mask> out;
  enumerate_masks(t_prime, dur, n, 0, current, out);
  return out;
}

bool disjoint(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return false;
  }
  return true;
}

std::int64_t scaled(double value, std::int64_t factor, const char* what) {
  const double v = value * static_cast<double>(factor);
  const double r = std::nearbyint(v);
  if (r != v || r < 1.0) {
    throw ValidationError(std::string(what) + " is not a whole number of grid cells at refinement " +
                          std::to_string(factor));
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace

ExactProbability::ExactProbability(const BigInt& numerator, const BigInt& denominator) {
  if (denominator <= 0) throw DegenerateError("probability denominator must be positive");
  value_ = Rational(numerator, denominator);
}

ExactProbability::ExactProbability(Rational value) : value_(std::move(value)) {}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt count_placements(std::int64_t t_prime, std::int64_t dur, std::int64_t n) {
  if (t_prime < 1 || dur < 1 || n < 0) {
    throw ValidationError("count_placements needs t_prime >= 1, dur >= 1, n >= 0");
  }
  return binomial(t_prime - (dur - 1) * n, n);
}

ExactProbability exact_no_overlap_probability(const DiscreteScenario& d) {
  check(d);
  const BigInt placements_a = count_placements(d.t_prime, d.dur_a, d.n_a);
  const BigInt placements_b = count_placements(d.t_prime, d.dur_b, d.n_b);
  if (placements_a == 0 || placements_b == 0) {
    throw DegenerateError("an event cannot be placed on the grid without self-overlap");
  }
  const std::int64_t shrink_a = (d.dur_a - 1) * d.n_a;
  const std::int64_t shrink_b = (d.dur_b - 1) * d.n_b;
  const BigInt orders = binomial(d.n_a + d.n_b, d.n_a);
  const BigInt per_order = binomial(d.t_prime - shrink_a - shrink_b, d.n_a + d.n_b);
  return ExactProbability(orders * per_order, placements_a * placements_b);
}

ExactProbability brute_force_no_overlap(const DiscreteScenario& d, std::uint64_t cap) {
  check(d);
  const BigInt placements_a = count_placements(d.t_prime, d.dur_a, d.n_a);
  const BigInt placements_b = count_placements(d.t_prime, d.dur_b, d.n_b);
  if (placements_a == 0 || placements_b == 0) {
    throw DegenerateError("an event cannot be placed on the grid without self-overlap");
  }
  const BigInt configurations = placements_a * placements_b;
  if (configurations > cap) {
    throw CapExceeded("enumeration of " + configurations.str() +
                      " configurations exceeds the cap of " + std::to_string(cap));
  }
  const auto masks_a = all_placements(d.t_prime, d.dur_a, d.n_a);
  const auto masks_b = all_placements(d.t_prime, d.dur_b, d.n_b);
  std::uint64_t free = 0;
  for (const auto& a : masks_a) {
    for (const auto& b : masks_b) {
      if (disjoint(a, b)) ++free;
    }
  }
  return ExactProbability(BigInt(free), BigInt(masks_a.size()) * masks_b.size());
}

ExactProbability p_star_grid(std::int64_t t_prime, std::int64_t dur_a, std::int64_t dur_b) {
  if (dur_a < 1 || dur_b < 1 || t_prime < std::max(dur_a, dur_b)) {
    throw ValidationError("p_star_grid needs durations >= 1 and a grid at least as long as each");
  }
  // [x_a, x_a + dur_a) and [x_b, x_b + dur_b) share a cell iff x_b < x_a + dur_a and x_a < x_b + dur_b.
  std::uint64_t overlapping = 0;
  for (std::int64_t x_a = 0; x_a < t_prime; ++x_a) {
    for (std::int64_t x_b = 0; x_b < t_prime; ++x_b) {
      if (x_b < x_a + dur_a && x_a < x_b + dur_b) ++overlapping;
    }
  }
  return ExactProbability(BigInt(overlapping), BigInt(t_prime) * t_prime);
}

std::vector<ConvergencePoint> convergence_series(const Scenario& raw,
                                                 const std::vector<std::int64_t>& refinements) {
  const Scenario s = normalize(raw);
  const bool single = s.event_a.count == 1 && s.event_b.count == 1;
  double limit = 0.0;
  if (single) {
    limit = p_star(s).value;
  } else {
    limit = 1.0 - no_overlap_extended(s.total_time, s.event_a.duration, s.event_b.duration,
                                      static_cast<double>(s.event_a.count),
                                      static_cast<double>(s.event_b.count), 0.0);
  }
  std::vector<ConvergencePoint> series;
  series.reserve(refinements.size());
  for (const std::int64_t k : refinements) {
    if (k < 1) throw ValidationError("refinement factors must be positive integers");
    ConvergencePoint point;
    point.delta = Rational(1, k);
    const std::int64_t t_prime = scaled(s.total_time, k, "total time");
    const std::int64_t dur_a = scaled(s.event_a.duration, k, "duration of A");
    const std::int64_t dur_b = scaled(s.event_b.duration, k, "duration of B");
    if (single) {
      point.exact = p_star_grid(t_prime, dur_a, dur_b);
    } else {
      point.exact =
          exact_no_overlap_probability({t_prime, dur_a, dur_b, s.event_a.count, s.event_b.count})
              .complement();
    }
    point.closed_form = limit;
    point.gap = std::abs(point.exact.to_double() - limit);
    series.push_back(std::move(point));
  }
  return series;
}

}  // namespace overlap
