#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avocado/planner.hpp"

namespace avocado {

enum class Status { Active, Arrived, Collided };

struct AgentState {
  int id = 0;
  AgentKind kind = AgentKind::Robot;
  Vec2 position;
  Vec2 velocity;
  double radius = 0.2;
  double max_speed = 1.0;
  Vec2 goal;
  Vec2 start;
  Status status = Status::Active;
  bool goal_bounce = false;
  std::optional<double> arrival_time;  // s, robots and non-bouncing agents
};

enum class Family { HeadOn, Circle, Crossing, Custom };

struct DiscObstacle {
  Vec2 center;
  double radius = 0.5;

  bool operator==(const DiscObstacle&) const = default;
};

/// Entity of a custom scenario. Unset radius/max_speed fall back to the
/// scenario defaults for the kind.
struct CustomEntity {
  AgentKind kind = AgentKind::Robot;
  Vec2 position;
  Vec2 goal;
  std::optional<double> radius;
  std::optional<double> max_speed;

  bool operator==(const CustomEntity&) const = default;
};

/// Declarative benchmark input.
struct ScenarioSpec {
  Family family = Family::HeadOn;
  int n_agents = 2;          // total robots + agents
  double proportion = 1.0;   // robots = ceil(proportion * n_agents)
  std::string variant = "AVOCADO_1";
  OpinionParams opinion;
  AgentKind headon_counterpart = AgentKind::Agent;
  double headon_half_distance = 2.5;  // m
  std::uint64_t seed = 0;
  double dt = 0.05;
  double timeout = 100.0;
  double goal_tolerance = 0.1;
  double vo_horizon = 5.0;
  double perception_radius = 2.5;
  double agent_radius = 0.2;
  double robot_max_speed = 1.0;
  double agent_max_speed = 0.75;
  ReferenceVelocity reference = ReferenceVelocity::Current;
  bool orca_noise = false;
  int runs = 1;
  std::vector<DiscObstacle> obstacles;
  std::vector<CustomEntity> entities;

  /// ceil(P*N), at least 1 when P > 0 and never more than N.
  int robot_count() const;

  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;

  bool operator==(const ScenarioSpec&) const = default;
};

/// Planner variants: AVOCADO_1..AVOCADO_4 and ORCA.
bool is_known_variant(const std::string& name);
/// Opinion gains of a variant, starting from the nominal tuning.
OpinionParams variant_params(const std::string& name);
PlannerMode variant_mode(const std::string& name);

/// Radius of the circle scenario: max(2.5, 2.3*N*r/pi).
double circle_radius(int n, double agent_radius);
/// Side of the crossing square: 1.5*N*r.
double crossing_side(int n, double agent_radius);

std::vector<AgentState> gen_headon(const ScenarioSpec& spec);
std::vector<AgentState> gen_circle(const ScenarioSpec& spec, std::uint64_t run_seed);
std::vector<AgentState> gen_crossing(const ScenarioSpec& spec, std::uint64_t run_seed);
std::vector<AgentState> gen_custom(const ScenarioSpec& spec);

/// Dispatch on spec.family; appends static obstacles with the next free ids.
std::vector<AgentState> generate_world(const ScenarioSpec& spec, std::uint64_t run_seed);

std::string to_string(Family f);
std::string to_string(AgentKind k);
std::string to_string(Status s);

}  // namespace avocado
