#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "overlap/domain.hpp"

namespace overlap {

using Rng = std::mt19937_64;

/// Sorted start times of one event. Starts lie in [0, T); each occurrence
/// may run past T.
struct PlacementSample {
  std::vector<double> starts;
  double duration = 0.0;
};

enum class IntervalKind { kNormal, kClopperPearson };

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  IntervalKind interval = IntervalKind::kNormal;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 0;
};

struct SimulationOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 1u << 16;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 1;
};

/// Draws a uniform point of the placement polytope
/// {0 <= x_1 < ... < x_n < T, x_{i+1} - x_i >= t}: n sorted uniforms on
/// [0, T - (n-1) t), then the i-th is shifted right by i*t.
/// Throws DomainError if no valid placement exists.
PlacementSample sample_placements(double total_time, double duration, std::int64_t count, Rng& rng);

/// True when some A interval [x, x+t_A) and B interval [y, y+t_B) intersect in
/// a set of positive length. Linear merge over the two sorted start lists.
bool has_overlap(const PlacementSample& a, const PlacementSample& b);

/// Substream for one chunk, seeded from (seed, chunk index).
Rng chunk_rng(std::uint64_t seed, std::uint64_t chunk);

/// Monte Carlo overlap probability with a 95% interval. Trials are split into
/// fixed chunks with independent substreams, so the report depends only on
/// (scenario, trials, seed, chunk_size).
SimulationReport estimate(const Scenario& s, const SimulationOptions& options);

/// 95% interval for hits/trials: normal approximation, or Clopper-Pearson
/// when fewer than 10 hits or misses.
void fill_interval(SimulationReport& report);

std::string_view to_string(IntervalKind k);

}  // namespace overlap
