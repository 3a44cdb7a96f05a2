#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "avocado/metrics.hpp"
#include "avocado/scenario.hpp"

namespace avocado {

struct BatchResult {
  int runs = 0;
  int robots_counted = 0;
  std::optional<double> success_rate;       // sum(succ) / (runs * robots)
  std::optional<double> mean_time_to_goal;  // over all successful robots
  long collisions = 0;
  TimingStats timing;
  std::vector<RunMetrics> per_run;  // in run index order
};

struct EpisodeResult;

/// Runs spec.runs episodes with seeds run_seed(spec.seed, k). Several runs are
/// spread over `threads` workers; a single run uses them inside each tick.
/// Aggregation follows the run index, so the result does not depend on the
/// worker count. When `first` is set it receives the full record of run 0.
BatchResult run_batch(const ScenarioSpec& spec, int threads = 1, EpisodeResult* first = nullptr,
                      bool record_timing = true);

/// Pools per-run metrics in the given order.
BatchResult aggregate_runs(const std::vector<RunMetrics>& runs,
                           const std::vector<TimingAccumulator>& timings);

}  // namespace avocado
