#include "avocado/batch.hpp"

#include "avocado/simulator.hpp"

namespace avocado {

BatchResult aggregate_runs(const std::vector<RunMetrics>& runs,
                           const std::vector<TimingAccumulator>& timings) {
  BatchResult out;
  out.runs = static_cast<int>(runs.size());
  out.per_run = runs;
  int successes = 0;
  double time_sum = 0.0;
  for (const auto& m : runs) {
    out.collisions += m.collisions;
    for (const auto& r : m.per_robot) {
      ++out.robots_counted;
      if (!r.succ) continue;
      ++successes;
      time_sum += r.time_to_goal.value_or(0.0);
    }
  }
  if (out.robots_counted > 0) {
    out.success_rate = static_cast<double>(successes) / out.robots_counted;
  }
  if (successes > 0) out.mean_time_to_goal = time_sum / successes;

  TimingAccumulator pooled;
  for (const auto& t : timings) pooled.merge(t);
  out.timing = pooled.stats();
  return out;
}

BatchResult run_batch(const ScenarioSpec& spec, int threads, EpisodeResult* first,
                      bool record_timing) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.runs);
  std::vector<RunMetrics> metrics(n);
  std::vector<TimingAccumulator> timings(n);

  auto run_one = [&](std::size_t k, int tick_threads) {
    SimOptions options;
    options.threads = tick_threads;
    options.record_timing = record_timing;
    options.record_trajectory = first != nullptr && k == 0;
    options.record_opinions = options.record_trajectory;
    EpisodeResult r = run_episode(spec, run_seed(spec.seed, k), options);
    metrics[k] = r.metrics;
    timings[k] = r.timing;
    if (options.record_trajectory) *first = std::move(r);
  };

  if (n == 1) {
    run_one(0, threads);
  } else {
    WorkerPool pool(threads);
    pool.parallel_for(n, [&](std::size_t k) { run_one(k, 1); });
  }
  return aggregate_runs(metrics, timings);
}

}  // namespace avocado
