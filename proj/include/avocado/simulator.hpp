#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "avocado/metrics.hpp"
#include "avocado/planner.hpp"
#include "avocado/scenario.hpp"

namespace avocado {

/// Raised when the world breaks a kinematic or status invariant.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TrajectoryRecord {
  long tick = 0;
  double time = 0.0;
  int agent_id = 0;
  AgentKind kind = AgentKind::Robot;
  Vec2 position;
  Vec2 velocity;
  Status status = Status::Active;
};

struct OpinionTraceRecord {
  long tick = 0;
  int robot_id = 0;
  int neighbor_id = 0;
  double o = 0.0;
  double attention = 0.0;
  double e = 0.0;
  TimeToCollision tau;
  double alpha = 0.5;
};

struct CollisionEvent {
  long tick = 0;
  int first = 0;
  int second = 0;
  Vec2 first_position;
  Vec2 second_position;
};

struct SimOptions {
  int threads = 1;
  bool record_trajectory = true;
  bool record_opinions = true;
  bool record_timing = true;
};

/// Fixed set of worker threads running index-parallel loops. With one thread
/// the loop runs inline.
class WorkerPool {
 public:
  explicit WorkerPool(int threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  /// Calls fn(i) for every i in [0, n); returns after all calls finished.
  /// The first exception thrown by fn is rethrown here.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop();
  void drain();

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_size_ = 0;
  std::size_t next_index_ = 0;
  std::size_t finished_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

/// Marks overlapping pairs collided and robots near their goal arrived.
/// Bouncing agents swap goal and start instead of arriving. Pairs already in
/// `seen_pairs` are not reported again.
std::vector<CollisionEvent> detect_events(std::vector<AgentState>& world, long tick, double dt,
                                          double goal_tolerance,
                                          std::set<std::pair<int, int>>& seen_pairs);

/// Neighbours of `self` within the perception radius. Static discs are
/// perceived by surface distance, everything else by centre distance.
std::vector<NeighborObservation> perceive(const std::vector<AgentState>& world, std::size_t self,
                                          double perception_radius);

/// Planner configuration used for entities of `kind` in this scenario.
PlannerConfig planner_config_for(const ScenarioSpec& spec, AgentKind kind);

/// Seed of run k of a batch; a single episode uses k = 0.
std::uint64_t run_seed(std::uint64_t master, std::uint64_t k);

/// Synchronous world stepping with one planner per moving entity.
class Simulation {
 public:
  Simulation(const ScenarioSpec& spec, std::uint64_t seed, SimOptions options = {});
  Simulation(const ScenarioSpec& spec, std::vector<AgentState> world, std::uint64_t seed,
             SimOptions options = {});
  ~Simulation();

  /// Plans every active entity on the same snapshot, then advances them all.
  void step();
  /// True once no robot is active, or when there are no robots at all.
  bool finished() const;
  long tick() const { return tick_; }
  double time() const { return static_cast<double>(tick_) * spec_.dt; }
  long max_ticks() const;

  const std::vector<AgentState>& world() const { return world_; }
  const std::vector<TrajectoryRecord>& trajectory() const { return trajectory_; }
  const std::vector<OpinionTraceRecord>& opinion_trace() const { return opinion_trace_; }
  const std::vector<CollisionEvent>& collisions() const { return collisions_; }
  const TimingAccumulator& timing() const { return timing_; }
  Planner* planner_of(std::size_t index) { return planners_[index].get(); }

  RunMetrics metrics() const;

 private:
  void init();
  void record_trajectory();

  ScenarioSpec spec_;
  std::uint64_t seed_;
  SimOptions options_;
  std::vector<AgentState> world_;
  std::vector<std::unique_ptr<Planner>> planners_;
  std::unique_ptr<WorkerPool> pool_;
  long tick_ = 0;
  std::set<std::pair<int, int>> seen_pairs_;
  std::vector<TrajectoryRecord> trajectory_;
  std::vector<OpinionTraceRecord> opinion_trace_;
  std::vector<CollisionEvent> collisions_;
  TimingAccumulator timing_;
};

struct EpisodeResult {
  RunMetrics metrics;
  long ticks = 0;  // steps taken
  std::vector<AgentState> final_world;
  std::vector<TrajectoryRecord> trajectory;
  std::vector<OpinionTraceRecord> opinion_trace;
  std::vector<CollisionEvent> collisions;
  TimingAccumulator timing;
};

/// Runs until every robot is done or the timeout elapses.
EpisodeResult run_episode(const ScenarioSpec& spec, std::uint64_t seed, SimOptions options = {});
EpisodeResult run_episode(const ScenarioSpec& spec, SimOptions options = {});
EpisodeResult run_world(const ScenarioSpec& spec, std::vector<AgentState> world, std::uint64_t seed,
                        SimOptions options = {});

}  // namespace avocado
