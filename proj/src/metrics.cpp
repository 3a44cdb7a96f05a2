#include "avocado/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace avocado {

RunMetrics compute_metrics(const std::vector<RobotOutcome>& robots, int collisions) {
  RunMetrics m;
  m.collisions = collisions;
  m.per_robot = robots;
  if (robots.empty()) return m;

  int successes = 0;
  double time_sum = 0.0;
  for (const auto& r : robots) {
    if (!r.succ) continue;
    ++successes;
    time_sum += r.time_to_goal.value_or(0.0);
  }
  m.success_rate = static_cast<double>(successes) / static_cast<double>(robots.size());
  if (successes > 0) m.mean_time_to_goal = time_sum / successes;
  return m;
}

void TimingAccumulator::add(double ms) {
  ++n_;
  const double delta = ms - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (ms - mean_);
  max_ = std::max(max_, ms);
}

void TimingAccumulator::merge(const TimingAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const long n = n_ + other.n_;
  const double delta = other.mean_ - mean_;
  mean_ += delta * static_cast<double>(other.n_) / static_cast<double>(n);
  m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(other.n_) /
                         static_cast<double>(n);
  max_ = std::max(max_, other.max_);
  n_ = n;
}

TimingStats TimingAccumulator::stats() const {
  TimingStats s;
  s.samples = n_;
  s.mean_ms = mean_;
  s.stddev_ms = n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0;
  s.max_ms = max_;
  return s;
}

}  // namespace avocado
