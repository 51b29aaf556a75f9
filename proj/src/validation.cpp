#include "overlap/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "overlap/discrete_oracle.hpp"
#include "overlap/monte_carlo.hpp"

namespace overlap {

namespace {

Scenario make(double T, double ta, double tb, std::int64_t na, std::int64_t nb) {
  return Scenario{T, {ta, na}, {tb, nb}, false};
}

CheckResult oracle_check(const OracleBox& box) {
  CheckResult check{"oracle_equivalence", true, 0.0, 0.0, {}};
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;
  for (std::int64_t t_prime = 1; t_prime <= box.max_t_prime; ++t_prime) {
    for (std::int64_t dur_a = 1; dur_a <= box.max_duration; ++dur_a) {
      for (std::int64_t dur_b = 1; dur_b <= dur_a; ++dur_b) {
        for (std::int64_t n_a = 0; n_a <= box.max_count; ++n_a) {
          for (std::int64_t n_b = 0; n_b <= box.max_count; ++n_b) {
            if (count_placements(t_prime, dur_a, n_a) == 0 ||
                count_placements(t_prime, dur_b, n_b) == 0) {
              continue;
            }
            const DiscreteScenario d{t_prime, dur_a, dur_b, n_a, n_b};
            ++cases;
            const auto formula = exact_no_overlap_probability(d);
            const auto brute = brute_force_no_overlap(d);
            if (!(formula == brute)) {
              if (mismatches++ == 0) {
                std::ostringstream os;
                os << "T'=" << t_prime << " t'_A=" << dur_a << " t'_B=" << dur_b << " n_A=" << n_a
                   << " n_B=" << n_b << ": formula " << formula.value() << " vs brute force "
                   << brute.value();
                first_mismatch = os.str();
              }
              check.observed = std::max(
                  check.observed, std::abs(formula.to_double() - brute.to_double()));
            }
          }
        }
      }
    }
  }
  check.passed = mismatches == 0;
  std::ostringstream os;
  os << cases << " cases, " << mismatches << " mismatches";
  if (mismatches > 0) os << "; first: " << first_mismatch;
  check.detail = os.str();
  return check;
}

CheckResult convergence_check(const std::string& name, const Scenario& s,
                              const std::vector<std::int64_t>& factors, bool check_rate) {
  CheckResult check{name, true, 0.0, 0.0, {}};
  const auto series = convergence_series(s, factors);
  std::ostringstream os;
  os << "gaps:";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << ' ' << series[i].gap;
    if (i > 0 && !(series[i].gap < series[i - 1].gap)) check.passed = false;
    const std::int64_t t_prime = static_cast<std::int64_t>(std::llround(s.total_time * factors[i]));
    if (check_rate && i > 0 && t_prime >= 12) {
      const double ratio = series[i].gap / series[i - 1].gap;
      if (ratio < 0.3 || ratio > 0.7) check.passed = false;
    }
  }
  check.observed = series.empty() ? 0.0 : series.back().gap;
  check.detail = os.str();
  return check;
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<Scenario> monte_carlo_grid(ValidationGrid grid) {
  std::vector<Scenario> scenarios = {
      make(120, 3, 1, 5, 10), make(60, 5, 2, 1, 1),  make(60, 5, 2, 2, 3),
      make(100, 2, 1, 3, 5),  make(50, 2, 2, 3, 3),  make(40, 3, 1, 1, 2),
  };
  if (grid == ValidationGrid::kFull) {
    const std::vector<Scenario> more = {
        make(200, 4, 1, 4, 8),    make(80, 6, 1, 2, 6), make(150, 5, 3, 3, 4),
        make(300, 10, 2, 2, 10),  make(30, 2, 1, 2, 2), make(100, 10, 1, 1, 1),
    };
    scenarios.insert(scenarios.end(), more.begin(), more.end());
  }
  return scenarios;
}

OracleBox oracle_box(ValidationGrid grid) {
  return grid == ValidationGrid::kFull ? OracleBox{14, 4, 3} : OracleBox{10, 3, 2};
}

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  report.grid = options.grid;
  report.trials = options.trials;
  report.seed = options.seed;

  report.checks.push_back(oracle_check(oracle_box(options.grid)));

  const std::vector<std::int64_t> single_factors = {1, 2, 4, 8, 16};
  report.checks.push_back(
      convergence_check("convergence_single_occurrence", make(3, 1, 1, 1, 1), single_factors, true));
  const std::vector<std::int64_t> counting_factors =
      options.grid == ValidationGrid::kFull ? std::vector<std::int64_t>{1, 2, 4}
                                            : std::vector<std::int64_t>{1, 2};
  report.checks.push_back(
      convergence_check("convergence_counting", make(12, 3, 2, 2, 2), counting_factors, false));

  // Worked examples: Example I and the single-occurrence reduction of Example II.
  {
    CheckResult check{"closed_form_examples", true, 0.0, 1e-4, {}};
    const double ex1 = options.universal(make(120, 3, 1, 5, 10)).value;
    const double ex2 = options.universal(make(3, 1, 1, 1, 1)).value;
    check.observed = std::max(std::abs(ex1 - 0.8546), std::abs(ex2 - 5.0 / 9.0));
    check.passed = check.observed <= check.allowed;
    std::ostringstream os;
    os << "P(120,3,1,5,10)=" << ex1 << " P(3,1,1,1,1)=" << ex2;
    check.detail = os.str();
    report.checks.push_back(check);
  }

  const auto scenarios = monte_carlo_grid(options.grid);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    SimulationOptions sim;
    sim.trials = options.trials;
    sim.seed = options.seed + i;
    sim.threads = options.threads;
    const auto mc = estimate(s, sim);
    const auto closed = options.universal(s);
    CheckResult check;
    check.name = "monte_carlo " + describe(s);
    check.observed = std::abs(mc.estimate - closed.value);
    check.allowed = closed.error_bound.value_or(0.0) + 4.0 * mc.std_error;
    check.passed = check.observed <= check.allowed;
    std::ostringstream os;
    os << "estimate " << mc.estimate << " universal " << closed.value;
    if (s.event_a.count == 1 && s.event_b.count == 1) {
      const double exact = p_star(s).value;
      const double gap = std::abs(mc.estimate - exact);
      const bool ok = gap <= 4.0 * mc.std_error;
      check.passed = check.passed && ok;
      os << " precise " << exact << (ok ? "" : " (precise gap exceeds 4 std errors)");
    }
    check.detail = os.str();
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace overlap
