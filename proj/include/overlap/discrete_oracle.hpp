#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "overlap/domain.hpp"

namespace overlap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid-unit scenario: all lengths are counts of grid cells of width Delta.
struct DiscreteScenario {
  std::int64_t t_prime = 1;
  std::int64_t dur_a = 1;
  std::int64_t dur_b = 1;
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
};

/// Exact probability stored as a reduced rational.
class ExactProbability {
 public:
  ExactProbability() = default;
  ExactProbability(const BigInt& numerator, const BigInt& denominator);
  explicit ExactProbability(Rational value);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const Rational& value() const { return value_; }
  double to_double() const { return value_.convert_to<double>(); }

  ExactProbability complement() const { return ExactProbability(Rational(1) - value_); }

  friend bool operator==(const ExactProbability&, const ExactProbability&) = default;

 private:
  Rational value_{0};
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// Exact binomial coefficient; 0 when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Number of ways to place n non-self-overlapping occurrences of length `dur`
/// fully inside a grid of t_prime cells: C(t_prime - (dur-1) n, n).
BigInt count_placements(std::int64_t t_prime, std::int64_t dur, std::int64_t n);

/// Exact no-overlap probability from the arrangement-counting formula
///   C(n_A+n_B, n_A) C(T' - N_A - N_B, n_A+n_B) / (C(T' - N_A, n_A) C(T' - N_B, n_B)).
/// Throws DegenerateError when either event cannot be placed.
ExactProbability exact_no_overlap_probability(const DiscreteScenario& d);

/// Same probability by direct enumeration of every pair of placements.
/// Throws CapExceeded if the number of placement pairs exceeds `cap`.
ExactProbability brute_force_no_overlap(const DiscreteScenario& d,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// Overlap probability for one occurrence each, starts anywhere in 0..T'-1 with
/// overhang past the end allowed, by direct enumeration of all T'^2 start pairs.
ExactProbability p_star_grid(std::int64_t t_prime, std::int64_t dur_a, std::int64_t dur_b);

struct ConvergencePoint {
  Rational delta;
  ExactProbability exact;  // overlap probability on the grid
  double closed_form = 0.0;
  double gap = 0.0;        // |exact - closed_form|
};

/// Refines the grid by each factor k (Delta = 1/k) and compares the grid
/// overlap probability against its continuum limit. The n_A = n_B = 1 case
/// uses p_star_grid against p_star; otherwise the fully-inside counting formula
/// against the unextended no-overlap limit. Every scaled time must be an integer.
std::vector<ConvergencePoint> convergence_series(const Scenario& s,
                                                 const std::vector<std::int64_t>& refinements);

}  // namespace overlap
