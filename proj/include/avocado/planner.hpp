#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "avocado/geometry.hpp"
#include "avocado/opinion.hpp"
#include "avocado/velocity_program.hpp"

namespace avocado {

enum class AgentKind { Robot, Agent, StaticDisc };

enum class PlannerMode {
  Avocado,         // adaptive cooperation estimate per neighbour
  OrcaFixed,       // alpha = 0.5 for every neighbour
  NonCooperative,  // OrcaFixed, but robots are never considered
};

/// Which own velocity anchors the relative velocity fed to the VO and the
/// constraint lines. The preferred velocity always drives time to collision
/// and the program objective.
enum class ReferenceVelocity { Current, Preferred };

struct PlannerConfig {
  PlannerMode mode = PlannerMode::Avocado;
  OpinionParams params;
  double vo_horizon = 5.0;  // s
  double dt = 0.05;         // s
  double goal_tolerance = 0.1;
  ReferenceVelocity reference = ReferenceVelocity::Current;
  bool noise = true;        // OrcaFixed only; Avocado always perturbs with params.sigma
  bool freeze_opinions = false;
  long forget_after_ticks = 20;
};

struct NeighborObservation {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  double radius = 0.2;
  AgentKind kind = AgentKind::Agent;
};

struct PerceptionSnapshot {
  int self_id = 0;
  Vec2 position;
  Vec2 velocity;  // velocity executed in the previous tick
  Vec2 goal;
  double radius = 0.2;
  double max_speed = 1.0;
  std::vector<NeighborObservation> neighbors;
};

struct NeighborDiagnostics {
  int id = 0;
  double o = 0.0;
  double attention = 0.0;
  double e = 0.0;
  TimeToCollision tau;
  double alpha = 0.5;
  HalfPlane constraint;
};

struct PlanOutput {
  Vec2 v_star;
  Vec2 v_pre;
  bool feasible = true;
  bool overlap = false;  // some neighbour disc already intersects ours
  std::vector<NeighborDiagnostics> per_neighbor;
};

/// Pipeline stages, in the order a tick visits them for one neighbour.
enum class Stage { TimeToCollision, Attention, Noise, Escape, Estimate, Opinion, Constraint, Solve, Store };

/// max_speed towards the goal, or zero once within tolerance.
Vec2 preferred_velocity(const Vec2& position, const Vec2& goal, double max_speed,
                        double goal_tolerance);

/// One robot's collision-avoidance planner. Owns its per-neighbour opinion
/// store and its random stream; not shared between robots.
class Planner {
 public:
  Planner(PlannerConfig config, std::uint64_t seed);

  PlanOutput plan_step(const PerceptionSnapshot& snapshot, long tick,
                       std::vector<Stage>* trace = nullptr);

  const PlannerConfig& config() const { return config_; }
  const std::map<int, OpinionState>& opinions() const { return opinions_; }
  std::map<int, OpinionState>& opinions() { return opinions_; }

 private:
  PlannerConfig config_;
  std::uint64_t seed_;
  RandomStream rng_;
  std::map<int, OpinionState> opinions_;
};

}  // namespace avocado
