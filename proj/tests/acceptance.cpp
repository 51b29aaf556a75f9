// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "overlap/closed_form.hpp"
#include "overlap/discrete_oracle.hpp"
#include "overlap/monte_carlo.hpp"
#include "overlap/validation.hpp"

using namespace overlap;

namespace {

Scenario make(double T, double ta, double tb, std::int64_t na, std::int64_t nb) {
  return Scenario{T, {ta, na}, {tb, nb}, false};
}

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }

  void note(const std::string& text) { note_ = text; }

  bool report(double seconds) const {
    std::printf("[%s] %-44s %5zu checks  %6.2fs  %s\n", failures_ == 0 ? "PASS" : "FAIL",
                name_.c_str(), checks_, seconds,
                failures_ == 0 ? note_.c_str() : first_failure_.c_str());
    return failures_ == 0;
  }

 private:
  std::string name_;
  std::string note_;
  std::string first_failure_;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// 1
void precise_examples(Criterion& c) {
  const double ex1 = p_star(make(60, 5, 2, 1, 1)).value;
  const double ex2 = p_star(make(3, 1, 1, 1, 1)).value;
  c.expect(std::abs(ex1 - 0.112639) <= 1e-4, fmt("P*(60,5,2) = %.6f", ex1));
  c.expect(std::abs(ex2 - 5.0 / 9.0) <= 1e-12, fmt("P*(3,1,1) = %.15f", ex2));
  c.note(fmt("P*(60,5,2)=%.6f P*(3,1,1)=%.12f", ex1, ex2));
}

// 2
void approx_example(Criterion& c) {
  const double v = p_approx(make(120, 3, 1, 5, 10)).value;
  c.expect(std::abs(v - 0.8385) <= 1e-4, fmt("approx(120,3,1,5,10) = %.6f", v));
  c.note(fmt("approx=%.6f", v));
}

// 3
void universal_examples(Criterion& c) {
  const auto ex1 = p_universal(make(120, 3, 1, 5, 10));
  const auto ex2 = p_universal(make(3, 1, 1, 1, 1));
  c.expect(std::abs(ex1.value - 0.8546) <= 1e-4, fmt("P(120,3,1,5,10) = %.6f", ex1.value));
  c.expect(ex1.error_bound && std::abs(*ex1.error_bound - 0.0177) <= 5e-4,
           fmt("E(120,3,1,5,10) = %.6f", ex1.error_bound.value_or(-1)));
  c.expect(std::abs(ex2.value - 5.0 / 9.0) <= 1e-12, fmt("P(3,1,1,1,1) = %.15f", ex2.value));
  c.expect(ex2.error_bound && *ex2.error_bound == 0.0,
           fmt("E(3,1,1,1,1) = %g", ex2.error_bound.value_or(-1)));
  c.note(fmt("P=%.6f E=%.6f P(II)=%.12f", ex1.value, ex1.error_bound.value_or(-1), ex2.value));
}

// 4
void reduction_identity(Criterion& c) {
  double worst = 0.0;
  int points = 0;
  for (double T : {0.5, 3.0, 40.0, 1000.0, 2.5e5}) {
    for (int k = 1; k <= 10; ++k) {
      const double t = T * 0.05 * k;  // up to T/2
      const Scenario s = make(T, t, t, 1, 1);
      const double exact = p_star(s).value;
      const double rel = std::abs(p_universal(s).value - exact) / exact;
      worst = std::max(worst, rel);
      c.expect(rel <= 1e-12, fmt("T=%g t=%g relative error %.3e", T, t, rel));
      ++points;
    }
  }
  c.expect(points == 50, "grid size");
  c.note(fmt("50 points, worst relative error %.2e", worst));
}

// 5
void oracle_equivalence(Criterion& c) {
  int cases = 0;
  for (std::int64_t t = 1; t <= 14; ++t) {
    for (std::int64_t da = 1; da <= 4; ++da) {
      for (std::int64_t db = 1; db <= 4; ++db) {
        for (std::int64_t na = 0; na <= 3; ++na) {
          for (std::int64_t nb = 0; nb <= 3; ++nb) {
            if (count_placements(t, da, na) == 0 || count_placements(t, db, nb) == 0) continue;
            const DiscreteScenario d{t, da, db, na, nb};
            std::ostringstream os;
            os << "T'=" << t << " t'=(" << da << "," << db << ") n=(" << na << "," << nb << ")";
            c.expect(exact_no_overlap_probability(d) == brute_force_no_overlap(d), os.str());
            ++cases;
          }
        }
      }
    }
  }
  c.expect(cases >= 300, "box should hold several hundred placeable cases");
  c.note(std::to_string(cases) + " exact rational matches");
}

// 6
void grid_convergence(Criterion& c) {
  const Rational limit(5, 9);
  std::vector<double> gaps;
  for (std::int64_t t_prime : {3, 6, 12, 24, 48}) {
    const Rational gap = limit - p_star_grid(t_prime, t_prime / 3, t_prime / 3).value();
    gaps.push_back(std::abs(gap.convert_to<double>()));
  }
  const std::vector<std::int64_t> grid = {3, 6, 12, 24, 48};
  std::string ratios;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    c.expect(gaps[i] < gaps[i - 1], fmt("gap did not shrink at T'=%g", double(grid[i])));
    if (grid[i] >= 12) {
      const double ratio = gaps[i] / gaps[i - 1];
      c.expect(ratio >= 0.3 && ratio <= 0.7, fmt("gap ratio %.4f at T'=%g", ratio, double(grid[i])));
      ratios += fmt(" %.3f", ratio);
    }
  }
  c.note("gap ratios" + ratios);
}

// 7
void monte_carlo_agreement(Criterion& c) {
  const auto grid = monte_carlo_grid(ValidationGrid::kFull);
  c.expect(grid.size() == 12, "grid must hold 12 scenarios");
  double worst_margin = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Scenario& s = grid[i];
    c.expect(classify(s) == FeasibilityClass::kNormal, describe(s) + " not NORMAL");
    c.expect(s.event_a.duration * s.event_a.count + s.event_b.duration * s.event_b.count <=
                 s.total_time / 2,
             describe(s) + " too busy");
    SimulationOptions opt;
    opt.trials = 1'000'000;
    opt.seed = 20261018 + i;
    opt.threads = 0;
    const auto mc = estimate(s, opt);
    const auto u = p_universal(s);
    const double allowed = u.error_bound.value_or(0.0) + 4 * mc.std_error;
    const double gap = std::abs(mc.estimate - u.value);
    worst_margin = std::max(worst_margin, gap / allowed);
    c.expect(gap <= allowed, describe(s) + fmt(": |%.5f - %.5f| > %.5f", mc.estimate, u.value, allowed));
    if (s.event_a.count == 1 && s.event_b.count == 1) {
      const double exact = p_star(s).value;
      c.expect(std::abs(mc.estimate - exact) <= 4 * mc.std_error,
               describe(s) + fmt(": MC %.5f vs precise %.5f", mc.estimate, exact));
    }
  }
  c.note(fmt("worst gap/allowance %.3f", worst_margin));
}

// 8
void property_suite(Criterion& c) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> time(0.5, 400.0);
  std::uniform_real_distribution<double> dur(0.01, 25.0);
  std::uniform_int_distribution<std::int64_t> count(0, 25);
  for (int i = 0; i < 20000; ++i) {
    const Scenario raw = make(time(rng), dur(rng), dur(rng), count(rng), count(rng));
    const Scenario mirrored{raw.total_time, raw.event_b, raw.event_a, false};
    const Scenario once = normalize(raw);
    c.expect(normalize(once) == once, "normalize not idempotent for " + describe(raw));
    c.expect(classify(raw) == classify(mirrored), "classify asymmetric for " + describe(raw));
    const auto u = p_universal(raw);
    const auto a = p_approx(raw);
    c.expect(u.value == p_universal(mirrored).value, "universal asymmetric for " + describe(raw));
    c.expect(u.value >= 0 && u.value <= 1 && a.value >= 0 && a.value <= 1,
             "estimate outside [0,1] for " + describe(raw));
    const auto cls = classify(raw);
    if (cls == FeasibilityClass::kNoEvent) {
      c.expect(u.value == 0.0 && a.value == 0.0, "NO_EVENT must give 0 for " + describe(raw));
    } else if (cls == FeasibilityClass::kCertainOverlap) {
      c.expect(u.value == 1.0 && a.value == 1.0, "CERTAIN_OVERLAP must give 1 for " + describe(raw));
    }
    if (const auto b = error_bound(raw)) {
      c.expect(*b >= 0.0, "negative error bound for " + describe(raw));
      c.expect((*b == 0.0) == (once.event_a.duration == once.event_b.duration),
               "bound zero iff equal durations, " + describe(raw));
    }
    if (raw.event_a.count == 1 && raw.event_b.count == 1) {
      const auto p = p_star(raw).value;
      c.expect(p >= 0 && p <= 1 && p == p_star(mirrored).value, "p_star property " + describe(raw));
    }
  }
  // Equal durations with random parameters hit the bound-equals-zero branch.
  for (int i = 0; i < 2000; ++i) {
    const double t = dur(rng);
    const Scenario s = make(time(rng) + 60 * t, t, t, 1 + count(rng) % 5, 1 + count(rng) % 5);
    if (const auto b = error_bound(s)) c.expect(*b == 0.0, "equal durations " + describe(s));
  }

  // Monotone sweeps on a lattice restricted to t_A n_A + t_B n_B <= T/2.
  auto light = [](const Scenario& s) {
    return s.event_a.duration * s.event_a.count + s.event_b.duration * s.event_b.count <=
           s.total_time / 2;
  };
  for (double T : {15.0, 30.0, 60.0, 120.0, 240.0}) {
    for (double ta : {0.5, 1.0, 2.0, 3.5}) {
      for (double tb : {0.25, 1.0, 2.5}) {
        for (std::int64_t na = 1; na <= 5; ++na) {
          for (std::int64_t nb = 1; nb <= 5; ++nb) {
            const Scenario s = make(T, ta, tb, na, nb);
            if (!light(s)) continue;
            const double p = p_universal(s).value;
            for (int k = 0; k < 4; ++k) {
              Scenario next = s;
              if (k == 0) next.event_a.duration += 0.5;
              if (k == 1) next.event_b.duration += 0.5;
              if (k == 2) next.event_a.count += 1;
              if (k == 3) next.event_b.count += 1;
              if (light(next)) {
                c.expect(p_universal(next).value >= p, "not nondecreasing from " + describe(s));
              }
            }
            Scenario longer = s;
            longer.total_time += 10.0;
            c.expect(p_universal(longer).value <= p, "not nonincreasing in T from " + describe(s));
          }
        }
      }
    }
  }

  // Monte Carlo determinism across repeated runs and thread counts.
  SimulationOptions opt;
  opt.trials = 300000;
  opt.seed = 99;
  opt.chunk_size = 10000;
  opt.threads = 1;
  const auto single = estimate(make(120, 3, 1, 5, 10), opt);
  for (unsigned threads : {1u, 2u, 4u, 8u}) {
    opt.threads = threads;
    const auto r = estimate(make(120, 3, 1, 5, 10), opt);
    c.expect(r.hits == single.hits && r.estimate == single.estimate &&
                 r.std_error == single.std_error && r.ci_low == single.ci_low &&
                 r.ci_high == single.ci_high,
             fmt("MC result changed with %g threads", threads));
  }
  c.note("idempotence, symmetry, range, bound sign, guards, monotonicity, determinism");
}

// 9
void rate_consistency(Criterion& c) {
  double worst = 0.0;
  for (const auto& s : monte_carlo_grid(ValidationGrid::kFull)) {
    const double T = s.total_time;
    const RateScenario r{T, s.event_a.duration, s.event_b.duration,
                         static_cast<double>(s.event_a.count) / T,
                         static_cast<double>(s.event_b.count) / T};
    const double expected = p_universal(s).value;
    const double rel = std::abs(p_universal_rate(r).value - expected) / expected;
    worst = std::max(worst, rel);
    c.expect(rel <= 1e-10, describe(s) + fmt(": relative error %.3e", rel));
  }
  c.note(fmt("worst relative error %.2e", worst));
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries = {
      {"1 precise equation examples", precise_examples},
      {"2 approximation example", approx_example},
      {"3 universal equation examples + bound", universal_examples},
      {"4 universal reduces to precise (n=1, t_A=t_B)", reduction_identity},
      {"5 counting formula == brute force", oracle_equivalence},
      {"6 grid convergence, first order", grid_convergence},
      {"7 Monte Carlo vs universal equation", monte_carlo_agreement},
      {"8 property suite", property_suite},
      {"9 rate variant consistency", rate_consistency},
  };
  bool all = true;
  for (const auto& e : entries) {
    Criterion c(e.name);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    all = c.report(took.count()) && all;
  }
  std::printf("%s\n", all ? "ALL ACCEPTANCE CRITERIA PASSED" : "ACCEPTANCE FAILURES PRESENT");
  return all ? 0 : 1;
}
