#include "avocado/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "avocado/rng.hpp"

namespace avocado {

// ---------------------------------------------------------------- WorkerPool

WorkerPool::WorkerPool(int threads) {
  for (int i = 1; i < threads; ++i) workers_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& w : workers_) w.join();
}

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (workers_.empty() || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    job_ = &fn;
    job_size_ = n;
    next_index_ = 0;
    finished_ = 0;
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  drain();
  std::unique_lock lock(mutex_);
  done_.wait(lock, [&] { return finished_ == job_size_; });
  job_ = nullptr;
  if (error_) std::rethrow_exception(error_);
}

void WorkerPool::drain() {
  for (;;) {
    const std::function<void(std::size_t)>* job = nullptr;
    std::size_t index = 0;
    {
      std::lock_guard lock(mutex_);
      if (job_ == nullptr || next_index_ >= job_size_) return;
      job = job_;
      index = next_index_++;
    }
    std::exception_ptr err;
    try {
      (*job)(index);
    } catch (...) {
      err = std::current_exception();
    }
    bool all_done = false;
    {
      std::lock_guard lock(mutex_);
      if (err && !error_) error_ = err;
      all_done = ++finished_ == job_size_;
    }
    if (all_done) done_.notify_all();
  }
}

void WorkerPool::worker_loop() {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    drain();
  }
}

// ------------------------------------------------------------- world events

std::vector<CollisionEvent> detect_events(std::vector<AgentState>& world, long tick, double dt,
                                          double goal_tolerance,
                                          std::set<std::pair<int, int>>& seen_pairs) {
  std::vector<CollisionEvent> events;
  for (std::size_t i = 0; i < world.size(); ++i) {
    for (std::size_t j = i + 1; j < world.size(); ++j) {
      AgentState& a = world[i];
      AgentState& b = world[j];
      if (a.kind == AgentKind::StaticDisc && b.kind == AgentKind::StaticDisc) continue;
      const double reach = a.radius + b.radius;
      if (!(abs_sq(a.position - b.position) < reach * reach)) continue;
      for (AgentState* s : {&a, &b}) {
        if (s->kind != AgentKind::StaticDisc && s->status == Status::Active) {
          s->status = Status::Collided;
          s->velocity = {};
        }
      }
      const auto key = std::minmax(a.id, b.id);
      if (seen_pairs.insert(key).second) {
        events.push_back({tick, a.id, b.id, a.position, b.position});
      }
    }
  }

  const double now = static_cast<double>(tick) * dt;
  for (AgentState& s : world) {
    if (s.status != Status::Active || s.kind == AgentKind::StaticDisc) continue;
    if (!(norm(s.position - s.goal) < goal_tolerance)) continue;
    if (s.goal_bounce) {
      std::swap(s.goal, s.start);
      continue;
    }
    s.status = Status::Arrived;
    s.velocity = {};
    s.arrival_time = now;
  }
  return events;
}

std::vector<NeighborObservation> perceive(const std::vector<AgentState>& world, std::size_t self,
                                          double perception_radius) {
  std::vector<NeighborObservation> out;
  const AgentState& me = world[self];
  for (std::size_t k = 0; k < world.size(); ++k) {
    if (k == self) continue;
    const AgentState& other = world[k];
    double range = norm(other.position - me.position);
    if (other.kind == AgentKind::StaticDisc) range -= other.radius;
    if (!(range < perception_radius)) continue;
    out.push_back({other.id, other.position, other.velocity, other.radius, other.kind});
  }
  return out;
}

PlannerConfig planner_config_for(const ScenarioSpec& spec, AgentKind kind) {
  PlannerConfig cfg;
  cfg.params = spec.opinion;
  cfg.params.dt = spec.dt;
  cfg.vo_horizon = spec.vo_horizon;
  cfg.dt = spec.dt;
  cfg.goal_tolerance = spec.goal_tolerance;
  cfg.reference = spec.reference;
  if (kind == AgentKind::Robot) {
    cfg.mode = variant_mode(spec.variant);
    cfg.noise = spec.orca_noise;
  } else {
    cfg.mode = PlannerMode::NonCooperative;
    cfg.noise = false;
  }
  return cfg;
}

std::uint64_t run_seed(std::uint64_t master, std::uint64_t k) { return derive_seed(master, k, 0xE915ULL); }

// --------------------------------------------------------------- Simulation

Simulation::Simulation(const ScenarioSpec& spec, std::uint64_t seed, SimOptions options)
    : spec_(spec), seed_(seed), options_(options) {
  spec_.validate();
  world_ = generate_world(spec_, seed_);
  init();
}

Simulation::Simulation(const ScenarioSpec& spec, std::vector<AgentState> world, std::uint64_t seed,
                       SimOptions options)
    : spec_(spec), seed_(seed), options_(options), world_(std::move(world)) {
  init();
}

Simulation::~Simulation() = default;

void Simulation::init() {
  if (!(spec_.dt > 0.0)) throw std::invalid_argument("dt: must be > 0");
  planners_.resize(world_.size());
  for (std::size_t i = 0; i < world_.size(); ++i) {
    const AgentState& s = world_[i];
    if (s.kind == AgentKind::StaticDisc) {
      world_[i].velocity = {};
      continue;
    }
    planners_[i] = std::make_unique<Planner>(
        planner_config_for(spec_, s.kind),
        derive_seed(seed_, static_cast<std::uint64_t>(s.id), 1));
  }
  if (options_.threads > 1) pool_ = std::make_unique<WorkerPool>(options_.threads);

  bool any_robot = false;
  for (const auto& s : world_) any_robot = any_robot || s.kind == AgentKind::Robot;
  if (!any_robot) return;

  auto events = detect_events(world_, 0, spec_.dt, spec_.goal_tolerance, seen_pairs_);
  collisions_.insert(collisions_.end(), events.begin(), events.end());
  record_trajectory();
}

long Simulation::max_ticks() const {
  return static_cast<long>(std::llround(spec_.timeout / spec_.dt));
}

bool Simulation::finished() const {
  if (tick_ >= max_ticks()) return true;
  for (const auto& s : world_) {
    if (s.kind == AgentKind::Robot && s.status == Status::Active) return false;
  }
  return true;
}

void Simulation::step() {
  std::vector<std::size_t> movers;
  for (std::size_t i = 0; i < world_.size(); ++i) {
    if (planners_[i] && world_[i].status == Status::Active) movers.push_back(i);
  }

  std::vector<PlanOutput> plans(movers.size());
  std::vector<double> elapsed_ms(movers.size(), 0.0);
  auto plan_one = [&](std::size_t k) {
    const std::size_t i = movers[k];
    const AgentState& s = world_[i];
    PerceptionSnapshot snap;
    snap.self_id = s.id;
    snap.position = s.position;
    snap.velocity = s.velocity;
    snap.goal = s.goal;
    snap.radius = s.radius;
    snap.max_speed = s.max_speed;
    snap.neighbors = perceive(world_, i, spec_.perception_radius);
    const auto t0 = std::chrono::steady_clock::now();
    plans[k] = planners_[i]->plan_step(snap, tick_);
    const auto t1 = std::chrono::steady_clock::now();
    elapsed_ms[k] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  };
  if (pool_) {
    pool_->parallel_for(movers.size(), plan_one);
  } else {
    for (std::size_t k = 0; k < movers.size(); ++k) plan_one(k);
  }

  // Commit in index order so every output is independent of scheduling.
  for (std::size_t k = 0; k < movers.size(); ++k) {
    AgentState& s = world_[movers[k]];
    Vec2 v = plans[k].v_star;
    if (!is_finite(v)) throw InvariantViolation("non-finite velocity for entity " + std::to_string(s.id));
    const double speed = norm(v);
    if (speed > s.max_speed) v = (s.max_speed / speed) * v;
    s.velocity = v;
    s.position = s.position + spec_.dt * v;

    if (s.kind != AgentKind::Robot) continue;
    if (options_.record_timing) timing_.add(elapsed_ms[k]);
    if (!options_.record_opinions) continue;
    for (const auto& nd : plans[k].per_neighbor) {
      opinion_trace_.push_back({tick_, s.id, nd.id, nd.o, nd.attention, nd.e, nd.tau, nd.alpha});
    }
  }

  ++tick_;
  auto events = detect_events(world_, tick_, spec_.dt, spec_.goal_tolerance, seen_pairs_);
  collisions_.insert(collisions_.end(), events.begin(), events.end());
  record_trajectory();
}

void Simulation::record_trajectory() {
  if (!options_.record_trajectory) return;
  const double t = static_cast<double>(tick_) * spec_.dt;
  for (const auto& s : world_) {
    trajectory_.push_back({tick_, t, s.id, s.kind, s.position, s.velocity, s.status});
  }
}

RunMetrics Simulation::metrics() const {
  std::vector<RobotOutcome> robots;
  for (const auto& s : world_) {
    if (s.kind != AgentKind::Robot) continue;
    RobotOutcome r;
    r.id = s.id;
    r.succ = s.status == Status::Arrived;
    if (r.succ) r.time_to_goal = s.arrival_time;
    robots.push_back(r);
  }
  RunMetrics m = compute_metrics(robots, static_cast<int>(collisions_.size()));
  if (options_.record_timing) m.timing = timing_.stats();
  return m;
}

// ----------------------------------------------------------------- episodes

namespace {

EpisodeResult drive(Simulation& sim) {
  while (!sim.finished()) sim.step();
  EpisodeResult r;
  r.metrics = sim.metrics();
  r.ticks = sim.tick();
  r.final_world = sim.world();
  r.trajectory = sim.trajectory();
  r.opinion_trace = sim.opinion_trace();
  r.collisions = sim.collisions();
  r.timing = sim.timing();
  return r;
}

}  // namespace

EpisodeResult run_episode(const ScenarioSpec& spec, std::uint64_t seed, SimOptions options) {
  Simulation sim(spec, seed, options);
  return drive(sim);
}

EpisodeResult run_episode(const ScenarioSpec& spec, SimOptions options) {
  return run_episode(spec, run_seed(spec.seed, 0), options);
}

EpisodeResult run_world(const ScenarioSpec& spec, std::vector<AgentState> world, std::uint64_t seed,
                        SimOptions options) {
  Simulation sim(spec, std::move(world), seed, options);
  return drive(sim);
}

}  // namespace avocado
