#include <gtest/gtest.h>

#include <cmath>

#include "avocado/batch.hpp"
#include "avocado/simulator.hpp"

using namespace avocado;

namespace {

AgentState entity(int id, AgentKind kind, Vec2 p, Vec2 goal = {}, double radius = 0.2) {
  AgentState a;
  a.id = id;
  a.kind = kind;
  a.position = a.start = p;
  a.goal = goal;
  a.radius = radius;
  a.max_speed = kind == AgentKind::Robot ? 1.0 : (kind == AgentKind::Agent ? 0.75 : 0.0);
  return a;
}

ScenarioSpec custom_spec() {
  ScenarioSpec s;
  s.family = Family::Custom;
  return s;
}

}  // namespace

TEST(DetectEvents, ContactIsNotCollision) {
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {5, 5}),
                               entity(1, AgentKind::Agent, {0.4, 0.0}, {5, 5})};
  std::set<std::pair<int, int>> seen;
  EXPECT_TRUE(detect_events(w, 0, 0.05, 0.1, seen).empty());
  EXPECT_EQ(w[0].status, Status::Active);
}

TEST(DetectEvents, JustInsideIsCollision) {
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {5, 5}),
                               entity(1, AgentKind::Agent, {0.4 - 1e-6, 0.0}, {5, 5})};
  std::set<std::pair<int, int>> seen;
  const auto ev = detect_events(w, 3, 0.05, 0.1, seen);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].tick, 3);
  EXPECT_EQ(w[0].status, Status::Collided);
  EXPECT_EQ(w[1].status, Status::Collided);
  // Reported once per pair.
  EXPECT_TRUE(detect_events(w, 4, 0.05, 0.1, seen).empty());
}

TEST(DetectEvents, StaticDiscStaysPutAndStaticPairsIgnored) {
  std::vector<AgentState> w = {entity(0, AgentKind::StaticDisc, {0, 0}, {0, 0}, 0.5),
                               entity(1, AgentKind::StaticDisc, {0.5, 0}, {0.5, 0}, 0.5),
                               entity(2, AgentKind::Robot, {0, 0.6}, {5, 5})};
  std::set<std::pair<int, int>> seen;
  const auto ev = detect_events(w, 0, 0.05, 0.1, seen);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].first, 0);
  EXPECT_EQ(ev[0].second, 2);
  EXPECT_EQ(w[0].status, Status::Active);
  EXPECT_EQ(w[2].status, Status::Collided);
}

TEST(DetectEvents, ArrivalWithinTolerance) {
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {1.0, 0.0}, {1.05, 0.0})};
  std::set<std::pair<int, int>> seen;
  detect_events(w, 7, 0.05, 0.1, seen);
  EXPECT_EQ(w[0].status, Status::Arrived);
  ASSERT_TRUE(w[0].arrival_time.has_value());
  EXPECT_DOUBLE_EQ(*w[0].arrival_time, 7 * 0.05);
}

TEST(DetectEvents, BouncingAgentRetargets) {
  auto a = entity(0, AgentKind::Agent, {1.0, 0.0}, {1.02, 0.0});
  a.start = {-1.0, 0.0};
  a.goal_bounce = true;
  std::vector<AgentState> w = {a};
  std::set<std::pair<int, int>> seen;
  detect_events(w, 1, 0.05, 0.1, seen);
  EXPECT_EQ(w[0].status, Status::Active);
  EXPECT_EQ(w[0].goal, Vec2(-1.0, 0.0));
  EXPECT_EQ(w[0].start, Vec2(1.02, 0.0));
}

TEST(Perception, RadiusFilter) {
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}),
                               entity(1, AgentKind::Agent, {2.4, 0}),
                               entity(2, AgentKind::Agent, {2.6, 0}),
                               entity(3, AgentKind::StaticDisc, {3.0, 0}, {3.0, 0}, 1.0)};
  const auto seen = perceive(w, 0, 2.5);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0].id, 1);
  EXPECT_EQ(seen[1].id, 3);
}

TEST(StepWorld, SingleRobotArrivesByKinematics) {
  auto spec = custom_spec();
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {1, 0})};
  const auto r = run_world(spec, w, 1);
  ASSERT_EQ(r.final_world[0].status, Status::Arrived);
  // Replay the 0.05 m steps in the same arithmetic to find the first tick
  // strictly inside the 0.1 m tolerance.
  double x = 0.0;
  long expected = 0;
  while (!(std::fabs(1.0 - x) < 0.1)) {
    x += 0.05 * 1.0;
    ++expected;
  }
  EXPECT_GE(expected, 18);
  EXPECT_LE(expected, 19);
  EXPECT_EQ(r.ticks, expected);
  EXPECT_NEAR(*r.final_world[0].arrival_time, expected * 0.05, 1e-12);
  ASSERT_TRUE(r.metrics.success_rate.has_value());
  EXPECT_DOUBLE_EQ(*r.metrics.success_rate, 1.0);
  for (const auto& rec : r.trajectory) {
    if (rec.status == Status::Active && rec.tick > 0) EXPECT_NEAR(rec.position.x, 0.05 * rec.tick, 1e-12);
  }
}

TEST(StepWorld, StaticDiscsNeverMove) {
  auto spec = custom_spec();
  std::vector<AgentState> w = {entity(0, AgentKind::StaticDisc, {0, 0}, {0, 0}, 0.5),
                               entity(1, AgentKind::StaticDisc, {3, 0}, {3, 0}, 0.5)};
  Simulation sim(spec, w, 1);
  for (int i = 0; i < 5; ++i) sim.step();
  EXPECT_EQ(sim.world()[0].position, w[0].position);
  EXPECT_EQ(sim.world()[1].position, w[1].position);
}

TEST(StepWorld, NoRobotsMeansNoTicks) {
  auto spec = custom_spec();
  std::vector<AgentState> w = {entity(0, AgentKind::Agent, {0, 0}, {3, 0})};
  const auto r = run_world(spec, w, 1);
  EXPECT_EQ(r.ticks, 0);
  EXPECT_TRUE(r.trajectory.empty());
  EXPECT_FALSE(r.metrics.success_rate.has_value());
}

TEST(StepWorld, CollidedEntityFreezes) {
  auto spec = custom_spec();
  spec.perception_radius = 0.01;  // blind, so they drive into each other
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {3, 0}),
                               entity(1, AgentKind::Robot, {1, 0}, {-3, 0}),
                               entity(2, AgentKind::Robot, {0, 5}, {1, 5})};
  Simulation sim(spec, w, 1);
  while (sim.world()[0].status == Status::Active) sim.step();
  const Vec2 frozen0 = sim.world()[0].position;
  const Vec2 frozen1 = sim.world()[1].position;
  ASSERT_EQ(sim.collisions().size(), 1u);
  for (int i = 0; i < 5 && !sim.finished(); ++i) sim.step();
  EXPECT_EQ(sim.world()[0].position, frozen0);
  EXPECT_EQ(sim.world()[1].position, frozen1);
  EXPECT_EQ(sim.world()[0].velocity, Vec2(0.0, 0.0));
}

TEST(StepWorld, TimeoutLeavesRobotUnsuccessful) {
  auto spec = custom_spec();
  spec.timeout = 1.0;
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {10, 0}),
                               entity(1, AgentKind::Robot, {0, 2}, {0.5, 2})};
  const auto r = run_world(spec, w, 1);
  EXPECT_EQ(r.ticks, 20);
  ASSERT_EQ(r.metrics.per_robot.size(), 2u);
  EXPECT_FALSE(r.metrics.per_robot[0].succ);
  EXPECT_TRUE(r.metrics.per_robot[1].succ);
  EXPECT_DOUBLE_EQ(*r.metrics.success_rate, 0.5);
  EXPECT_NEAR(*r.metrics.mean_time_to_goal, *r.metrics.per_robot[1].time_to_goal, 0.0);
}

TEST(StepWorld, Synchronous) {
  // Two robots each see the other's position from the start of the tick, so
  // swapping their order in the world cannot change anyone's trajectory.
  auto spec = custom_spec();
  auto a = entity(0, AgentKind::Robot, {-2, 0.1}, {2, 0.1});
  auto b = entity(1, AgentKind::Robot, {2, -0.1}, {-2, -0.1});
  const auto r1 = run_world(spec, {a, b}, 1);
  const auto r2 = run_world(spec, {b, a}, 1);
  ASSERT_EQ(r1.ticks, r2.ticks);
  for (const auto& x : r1.final_world) {
    for (const auto& y : r2.final_world) {
      if (x.id == y.id) EXPECT_EQ(x.position, y.position);
    }
  }
}

TEST(Episode, InvariantsOnMixedCircle) {
  ScenarioSpec s;
  s.family = Family::Circle;
  s.n_agents = 10;
  s.proportion = 0.5;
  s.timeout = 30.0;
  s.seed = 5;
  const auto r = run_episode(s);
  std::map<int, TrajectoryRecord> last;
  for (const auto& rec : r.trajectory) {
    EXPECT_DOUBLE_EQ(rec.time, rec.tick * s.dt);
    auto it = last.find(rec.agent_id);
    if (it != last.end()) {
      const auto& prev = it->second;
      EXPECT_EQ(rec.tick, prev.tick + 1);
      const double limit = (rec.kind == AgentKind::Robot ? 1.0 : 0.75) * s.dt + 1e-12;
      EXPECT_LE(norm(rec.position - prev.position), limit);
      if (prev.status != Status::Active) {
        EXPECT_EQ(rec.status, prev.status);
        EXPECT_EQ(rec.position, prev.position);
      }
    }
    last[rec.agent_id] = rec;
  }
  for (const auto& o : r.opinion_trace) {
    EXPECT_GE(o.attention, 0.0);
    EXPECT_LE(o.attention, 1.0);
    EXPECT_NEAR(o.alpha, std::clamp((o.o + 1.0) / 2.0, 0.0, 1.0), 1e-15);
  }
}

TEST(Episode, DeterministicAcrossThreadCounts) {
  ScenarioSpec s;
  s.family = Family::Crossing;
  s.n_agents = 13;
  s.proportion = 0.5;
  s.timeout = 20.0;
  s.seed = 99;
  SimOptions one;
  SimOptions four;
  four.threads = 4;
  const auto a = run_episode(s, one);
  const auto b = run_episode(s, four);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    EXPECT_EQ(a.trajectory[i].position, b.trajectory[i].position);
    EXPECT_EQ(a.trajectory[i].status, b.trajectory[i].status);
  }
  ASSERT_EQ(a.opinion_trace.size(), b.opinion_trace.size());
  for (std::size_t i = 0; i < a.opinion_trace.size(); ++i) {
    EXPECT_EQ(a.opinion_trace[i].o, b.opinion_trace[i].o);
  }
}

TEST(Episode, NonFiniteVelocityIsInvariantViolation) {
  auto spec = custom_spec();
  std::vector<AgentState> w = {entity(0, AgentKind::Robot, {0, 0}, {1e308, 1e308})};
  w[0].max_speed = std::numeric_limits<double>::infinity();
  EXPECT_THROW(run_world(spec, w, 1), InvariantViolation);
}

TEST(Batch, SingleRunMatchesEpisode) {
  ScenarioSpec s;
  s.seed = 3;
  const auto ep = run_episode(s);
  const auto b = run_batch(s);
  EXPECT_EQ(b.runs, 1);
  EXPECT_EQ(b.success_rate, ep.metrics.success_rate);
  EXPECT_EQ(b.mean_time_to_goal, ep.metrics.mean_time_to_goal);
  EXPECT_EQ(b.collisions, ep.metrics.collisions);
}

TEST(Batch, RepeatableAndThreadIndependent) {
  ScenarioSpec s;
  s.family = Family::Circle;
  s.n_agents = 6;
  s.proportion = 0.5;
  s.runs = 4;
  s.timeout = 20.0;
  s.seed = 11;
  const auto a = run_batch(s, 1, nullptr, false);
  const auto b = run_batch(s, 3, nullptr, false);
  EXPECT_EQ(a.success_rate, b.success_rate);
  EXPECT_EQ(a.mean_time_to_goal, b.mean_time_to_goal);
  EXPECT_EQ(a.collisions, b.collisions);
  EXPECT_EQ(a.robots_counted, 4 * s.robot_count());
  ASSERT_EQ(a.per_run.size(), 4u);
}

TEST(Seeds, RunSeedsDiffer) {
  EXPECT_NE(run_seed(0, 0), run_seed(0, 1));
  EXPECT_NE(run_seed(0, 0), run_seed(1, 0));
  EXPECT_EQ(run_seed(7, 3), run_seed(7, 3));
}

TEST(WorkerPool, RunsEveryIndexAndPropagatesErrors) {
  WorkerPool pool(3);
  std::vector<int> hits(100, 0);
  pool.parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(pool.parallel_for(10, [](std::size_t i) {
    if (i == 4) throw std::runtime_error("boom");
  }),
               std::runtime_error);
  pool.parallel_for(5, [&](std::size_t i) { hits[i] += 1; });
  EXPECT_EQ(hits[0], 2);
}
