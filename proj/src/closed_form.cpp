#include "overlap/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace overlap {

namespace {

// Normalized parameters with real-valued counts, shared by the integer and rate entry points.
struct Params {
  double total_time;
  double duration_a;
  double duration_b;
  double count_a;
  double count_b;
};

Params to_params(const Scenario& s) {
  return {s.total_time, s.event_a.duration, s.event_b.duration,
          static_cast<double>(s.event_a.count), static_cast<double>(s.event_b.count)};
}

double half_overhang(const Params& p) { return 0.5 * (p.duration_a + p.duration_b); }

// log of the no-overlap ratio; requires the numerator base to be positive.
// M^(nA+nB) / (M_A^nA M_B^nB) = (M/M_A)^nA (M/M_B)^nB, and M/M_A = 1 - t_B n_B / M_A.
double log_no_overlap(const Params& p, double extension) {
  const double window = p.total_time + extension;
  const double busy_a = p.duration_a * p.count_a;
  const double busy_b = p.duration_b * p.count_b;
  double log_value = 0.0;
  if (p.count_a > 0.0) log_value += p.count_a * std::log1p(-busy_b / (window - busy_a));
  if (p.count_b > 0.0) log_value += p.count_b * std::log1p(-busy_a / (window - busy_b));
  return log_value;
}

bool base_positive(const Params& p, double extension) {
  return p.total_time + extension - p.duration_a * p.count_a - p.duration_b * p.count_b > 0.0;
}

std::optional<double> bound_from(const Params& p, double no_overlap) {
  const double busy_a = p.duration_a * p.count_a;
  const double busy_b = p.duration_b * p.count_b;
  const double alpha_a = p.total_time + p.duration_a - busy_a - busy_b;
  const double gap = 0.5 * (p.duration_a - p.duration_b);
  const double alpha_b = alpha_a - gap;
  const double tau = std::max(busy_a, busy_b);
  if (!(alpha_b > 0.0)) return std::nullopt;
  // alpha_a (alpha_b + tau) / (alpha_b (alpha_a + tau)) = 1 + tau (alpha_a - alpha_b) / (alpha_b (alpha_a + tau))
  const double log_ratio = std::log1p(tau * gap / (alpha_b * (alpha_a + tau)));
  const double growth = std::expm1((p.count_a + p.count_b) * log_ratio);
  // The worked example scales by P rather than P-bar; the larger of the two covers both readings.
  const double scale = std::max(no_overlap, 1.0 - no_overlap);
  return scale * growth;
}

ProbabilityResult guarded(Method method, FeasibilityClass guard, bool swapped) {
  ProbabilityResult r;
  r.method = method;
  r.guard = guard;
  r.value = r.raw_value = (guard == FeasibilityClass::kNoEvent) ? 0.0 : 1.0;
  r.swapped = swapped;
  return r;
}

ProbabilityResult finish(Method method, double raw, bool swapped) {
  ProbabilityResult r;
  r.method = method;
  r.raw_value = raw;
  r.value = std::clamp(raw, 0.0, 1.0);
  r.clamped = !(raw >= 0.0 && raw <= 1.0);
  r.swapped = swapped;
  return r;
}

// Universal equation on normalized real-valued parameters; the caller has handled guard classes.
ProbabilityResult universal_core(const Params& p, Method method, bool swapped) {
  const double ext = half_overhang(p);
  if (!base_positive(p, ext)) {
    return guarded(method, FeasibilityClass::kCertainOverlap, swapped);
  }
  const double log_pbar = log_no_overlap(p, ext);
  ProbabilityResult r = finish(method, -std::expm1(log_pbar), swapped);
  r.error_bound = bound_from(p, std::exp(log_pbar));
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kPrecise:
      return "precise";
    case Method::kApprox:
      return "approx";
    case Method::kUniversal:
      return "universal";
    case Method::kRate:
      return "rate";
  }
  return "unknown";
}

DerivedQuantities derived_quantities(const Scenario& raw) {
  const Params p = to_params(normalize(raw));
  DerivedQuantities d;
  d.t_plus = p.total_time + half_overhang(p);
  d.alpha_a = p.total_time + p.duration_a - p.duration_a * p.count_a - p.duration_b * p.count_b;
  d.alpha_b = d.alpha_a - 0.5 * (p.duration_a - p.duration_b);
  d.tau = std::max(p.duration_a * p.count_a, p.duration_b * p.count_b);
  return d;
}

ProbabilityResult p_star(const Scenario& raw) {
  const Scenario s = normalize(raw);
  if (s.event_a.count != 1 || s.event_b.count != 1) {
    throw DomainError("the precise equation requires exactly one occurrence of each event");
  }
  const auto cls = classify(s);
  if (cls != FeasibilityClass::kNormal) return guarded(Method::kPrecise, cls, s.swapped);
  const double T = s.total_time;
  const double ta = s.event_a.duration;
  const double tb = s.event_b.duration;
  return finish(Method::kPrecise, (ta + tb) / T - (ta * ta + tb * tb) / (2.0 * T * T), s.swapped);
}

ProbabilityResult p_approx(const Scenario& raw) {
  const Scenario s = normalize(raw);
  const auto cls = classify(s);
  if (cls != FeasibilityClass::kNormal) return guarded(Method::kApprox, cls, s.swapped);
  const Params p = to_params(s);
  const double base = 1.0 - p.count_a * (p.duration_a + p.duration_b) / p.total_time;
  const double raw_value = 1.0 - std::pow(base, p.count_b);
  if (base <= 0.0) {
    ProbabilityResult r = finish(Method::kApprox, raw_value, s.swapped);
    r.value = 1.0;
    r.clamped = true;
    return r;
  }
  return finish(Method::kApprox, raw_value, s.swapped);
}

ProbabilityResult p_universal(const Scenario& raw) {
  const Scenario s = normalize(raw);
  const auto cls = classify(s);
  if (cls != FeasibilityClass::kNormal) return guarded(Method::kUniversal, cls, s.swapped);
  return universal_core(to_params(s), Method::kUniversal, s.swapped);
}

std::optional<double> error_bound(const Scenario& raw) {
  const Scenario s = normalize(raw);
  if (classify(s) != FeasibilityClass::kNormal) return std::nullopt;
  const Params p = to_params(s);
  const double ext = half_overhang(p);
  if (!base_positive(p, ext)) return std::nullopt;
  return bound_from(p, std::exp(log_no_overlap(p, ext)));
}

ProbabilityResult p_universal_rate(const RateScenario& r) {
  for (double v : {r.total_time, r.duration_a, r.duration_b}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError("total time and durations must be finite positive numbers");
    }
  }
  for (double v : {r.rate_a, r.rate_b}) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("rates must be finite and nonnegative");
  }
  Params p{r.total_time, r.duration_a, r.duration_b, r.rate_a * r.total_time,
           r.rate_b * r.total_time};
  bool swapped = false;
  if (p.duration_a < p.duration_b) {
    std::swap(p.duration_a, p.duration_b);
    std::swap(p.count_a, p.count_b);
    swapped = true;
  }
  if (p.count_a == 0.0 || p.count_b == 0.0) {
    return guarded(Method::kRate, FeasibilityClass::kNoEvent, swapped);
  }
  if (p.total_time <= p.duration_a * p.count_a || p.total_time <= p.duration_b * p.count_b) {
    return guarded(Method::kRate, FeasibilityClass::kCertainOverlap, swapped);
  }
  return universal_core(p, Method::kRate, swapped);
}

double no_overlap_extended(double total_time, double duration_a, double duration_b,
                           double count_a, double count_b, double extension) {
  const Params p{total_time, duration_a, duration_b, count_a, count_b};
  if (!base_positive(p, extension)) return 0.0;
  return std::exp(log_no_overlap(p, extension));
}

double p_universal_direct(const Scenario& raw) {
  const Scenario s = normalize(raw);
  const Params p = to_params(s);
  const double tp = p.total_time + half_overhang(p);
  const double busy_a = p.duration_a * p.count_a;
  const double busy_b = p.duration_b * p.count_b;
  const double num = std::pow(tp - busy_a - busy_b, p.count_a + p.count_b);
  const double den = std::pow(tp - busy_a, p.count_a) * std::pow(tp - busy_b, p.count_b);
  if (!std::isfinite(num) || !std::isfinite(den) || den == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return 1.0 - num / den;
}

}  // namespace overlap
