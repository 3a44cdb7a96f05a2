#pragma once

#include <optional>
#include <vector>

namespace avocado {

struct RobotOutcome {
  int id = 0;
  bool succ = false;
  std::optional<double> time_to_goal;  // s, set when succ
};

struct TimingStats {
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  double max_ms = 0.0;
  long samples = 0;
};

struct RunMetrics {
  std::optional<double> success_rate;        // unset when no robot was counted
  std::optional<double> mean_time_to_goal;   // over succ = 1 robots only
  int collisions = 0;
  std::vector<RobotOutcome> per_robot;
  std::optional<TimingStats> timing;         // per plan_step wall time
};

/// Success rate sum(succ)/count and mean time over successful robots.
RunMetrics compute_metrics(const std::vector<RobotOutcome>& robots, int collisions);

/// Running mean/variance/max (Welford).
class TimingAccumulator {
 public:
  void add(double ms);
  void merge(const TimingAccumulator& other);
  TimingStats stats() const;

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double max_ = 0.0;
};

}  // namespace avocado
