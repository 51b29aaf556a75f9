#include "overlap/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

namespace overlap {

namespace {

constexpr double kZ95 = 1.959963984540054;

// 53 random bits mapped to [0, 1).
double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void fill_starts(std::vector<double>& starts, double total_time, double duration,
                 std::int64_t count, Rng& rng) {
  starts.resize(static_cast<std::size_t>(count));
  if (count == 0) return;
  const double room = total_time - static_cast<double>(count - 1) * duration;
  for (auto& y : starts) y = uniform01(rng) * room;
  std::sort(starts.begin(), starts.end());
  const double last_allowed = std::nextafter(total_time, 0.0);
  for (std::size_t i = 1; i < starts.size(); ++i) {
    // max() keeps the gap invariant exact under rounding.
    starts[i] = std::max(starts[i] + static_cast<double>(i) * duration, starts[i - 1] + duration);
  }
  starts.back() = std::min(starts.back(), last_allowed);
}

bool overlap_scan(const std::vector<double>& a, double dur_a, const std::vector<double>& b,
                  double dur_b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const double end_a = a[i] + dur_a;
    const double end_b = b[j] + dur_b;
    if (b[j] < end_a && a[i] < end_b) return true;
    // The interval that ends first cannot meet anything later in the other list.
    if (end_a <= end_b) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(IntervalKind k) {
  return k == IntervalKind::kNormal ? "normal" : "clopper-pearson";
}

PlacementSample sample_placements(double total_time, double duration, std::int64_t count, Rng& rng) {
  if (!(total_time > 0.0) || !(duration > 0.0) || count < 0) {
    throw DomainError("sampling needs positive total time and duration and a nonnegative count");
  }
  if (!placeable(total_time, duration, count)) {
    throw DomainError("occurrences cannot be placed without self-overlap");
  }
  PlacementSample sample;
  sample.duration = duration;
  fill_starts(sample.starts, total_time, duration, count, rng);
  return sample;
}

bool has_overlap(const PlacementSample& a, const PlacementSample& b) {
  return overlap_scan(a.starts, a.duration, b.starts, b.duration);
}

Rng chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

void fill_interval(SimulationReport& r) {
  const double n = static_cast<double>(r.trials);
  const double p = static_cast<double>(r.hits) / n;
  r.estimate = p;
  r.std_error = std::sqrt(p * (1.0 - p) / n);
  if (r.hits < 10 || r.trials - r.hits < 10) {
    constexpr double alpha = 0.05;
    const double h = static_cast<double>(r.hits);
    r.interval = IntervalKind::kClopperPearson;
    r.ci_low = r.hits == 0 ? 0.0 : boost::math::ibeta_inv(h, n - h + 1.0, alpha / 2);
    r.ci_high = r.hits == r.trials ? 1.0 : boost::math::ibeta_inv(h + 1.0, n - h, 1.0 - alpha / 2);
  } else {
    r.interval = IntervalKind::kNormal;
    r.ci_low = std::max(0.0, p - kZ95 * r.std_error);
    r.ci_high = std::min(1.0, p + kZ95 * r.std_error);
  }
}

SimulationReport estimate(const Scenario& raw, const SimulationOptions& options) {
  const Scenario s = normalize(raw);
  if (options.trials == 0) throw DomainError("at least one trial is required");
  if (options.chunk_size == 0) throw DomainError("chunk size must be positive");
  const auto& a = s.event_a;
  const auto& b = s.event_b;
  if (!placeable(s.total_time, a.duration, a.count) || !placeable(s.total_time, b.duration, b.count)) {
    throw DomainError("occurrences cannot be placed without self-overlap");
  }

  const std::uint64_t chunks = (options.trials + options.chunk_size - 1) / options.chunk_size;
  std::vector<std::uint64_t> chunk_hits(chunks, 0);

  auto run_chunk = [&](std::uint64_t c) {
    Rng rng = chunk_rng(options.seed, c);
    const std::uint64_t begin = c * options.chunk_size;
    const std::uint64_t n = std::min(options.chunk_size, options.trials - begin);
    std::vector<double> xs;
    std::vector<double> ys;
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
      fill_starts(xs, s.total_time, a.duration, a.count, rng);
      fill_starts(ys, s.total_time, b.duration, b.count, rng);
      if (overlap_scan(xs, a.duration, ys, b.duration)) ++hits;
    }
    chunk_hits[c] = hits;
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  SimulationReport report;
  report.trials = options.trials;
  report.seed = options.seed;
  report.chunk_size = options.chunk_size;
  for (auto h : chunk_hits) report.hits += h;
  fill_interval(report);
  return report;
}

}  // namespace overlap
