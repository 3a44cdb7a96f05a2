#include "avocado/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "avocado/rng.hpp"

namespace avocado {
namespace {

AgentState make_entity(int id, AgentKind kind, Vec2 position, Vec2 goal, const ScenarioSpec& spec) {
  AgentState a;
  a.id = id;
  a.kind = kind;
  a.position = position;
  a.start = position;
  a.goal = goal;
  a.radius = spec.agent_radius;
  a.max_speed = kind == AgentKind::Robot ? spec.robot_max_speed : spec.agent_max_speed;
  return a;
}

// Evenly spaced slot centres along one side of the crossing square.
std::vector<double> side_slots(double side, double radius, std::size_t needed) {
  const double margin = std::max(2.0 * radius, 0.4);
  const double usable = side - 2.0 * margin;
  double spacing = 2.0 * radius + 0.1;
  std::size_t count = usable > 0.0 ? static_cast<std::size_t>(std::floor(usable / spacing)) + 1 : 1;
  if (count < needed) {
    if (needed < 2 || usable / static_cast<double>(needed - 1) < 2.0 * radius + 0.02) {
      throw std::invalid_argument("crossing square too small for the requested population");
    }
    count = needed;
    spacing = usable / static_cast<double>(needed - 1);
  }
  std::vector<double> slots(count);
  const double first = -0.5 * spacing * static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) slots[i] = first + spacing * static_cast<double>(i);
  return slots;
}

}  // namespace

int ScenarioSpec::robot_count() const {
  if (proportion <= 0.0) return 0;
  // Guard against ceil(0.3*10) = 4 from representation error.
  const double raw = proportion * n_agents;
  const int robots = static_cast<int>(std::ceil(raw - 1e-9));
  return std::clamp(robots, 1, n_agents);
}

void ScenarioSpec::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!is_known_variant(variant)) fail("variant: unknown planner variant");
  if (family != Family::Custom && n_agents < 2) fail("n_agents: must be >= 2");
  if (family == Family::HeadOn && n_agents != 2) fail("n_agents: head-on needs exactly 2");
  if (!(proportion >= 0.0 && proportion <= 1.0)) fail("proportion: must lie in [0, 1]");
  if (!(dt > 0.0)) fail("dt_s: must be > 0");
  if (!(timeout >= 0.0)) fail("timeout_s: must be >= 0");
  if (!(goal_tolerance > 0.0)) fail("goal_tolerance_m: must be > 0");
  if (!(vo_horizon > 0.0)) fail("vo_horizon_s: must be > 0");
  if (!(perception_radius > 0.0)) fail("perception_radius_m: must be > 0");
  if (!(agent_radius > 0.0)) fail("agent_radius_m: must be > 0");
  if (!(robot_max_speed > 0.0)) fail("robot_max_speed_mps: must be > 0");
  if (!(agent_max_speed > 0.0)) fail("agent_max_speed_mps: must be > 0");
  if (!(headon_half_distance > 0.0)) fail("headon_half_distance_m: must be > 0");
  if (runs < 1) fail("runs: must be >= 1");
  for (const auto& o : obstacles) {
    if (!(o.radius > 0.0)) fail("obstacles: radius_m must be > 0");
  }
  for (const auto& e : entities) {
    if (e.radius && !(*e.radius > 0.0)) fail("agents: radius_m must be > 0");
    if (e.max_speed && !(*e.max_speed > 0.0)) fail("agents: max_speed_mps must be > 0");
  }
  try {
    opinion.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("opinion.") + e.what());
  }
}

bool is_known_variant(const std::string& name) {
  return name == "AVOCADO_1" || name == "AVOCADO_2" || name == "AVOCADO_3" ||
         name == "AVOCADO_4" || name == "ORCA";
}

OpinionParams variant_params(const std::string& name) {
  OpinionParams p;
  if (name == "AVOCADO_2") {
    p.d = 5.0;
  } else if (name == "AVOCADO_3") {
    p.b = 1.0;
  } else if (name == "AVOCADO_4") {
    p.b = -1.0;
  } else if (!is_known_variant(name)) {
    throw std::invalid_argument("variant: unknown planner variant '" + name + "'");
  }
  return p;
}

PlannerMode variant_mode(const std::string& name) {
  return name == "ORCA" ? PlannerMode::OrcaFixed : PlannerMode::Avocado;
}

double circle_radius(int n, double agent_radius) {
  return std::max(2.5, 2.3 * n * agent_radius / std::numbers::pi);
}

double crossing_side(int n, double agent_radius) { return 1.5 * n * agent_radius; }

std::vector<AgentState> gen_headon(const ScenarioSpec& spec) {
  const double L = spec.headon_half_distance;
  return {make_entity(0, AgentKind::Robot, {-L, 0.0}, {L, 0.0}, spec),
          make_entity(1, spec.headon_counterpart, {L, 0.0}, {-L, 0.0}, spec)};
}

std::vector<AgentState> gen_circle(const ScenarioSpec& spec, std::uint64_t run_seed) {
  const int n = spec.n_agents;
  const double radius = circle_radius(n, spec.agent_radius);

  std::vector<int> slots(static_cast<std::size_t>(n));
  std::iota(slots.begin(), slots.end(), 0);
  RandomStream rng(derive_seed(run_seed, 0xC1C1EULL));
  rng.shuffle(slots.begin(), slots.end());
  const int robots = spec.robot_count();
  std::vector<bool> is_robot(static_cast<std::size_t>(n), false);
  for (int k = 0; k < robots; ++k) is_robot[static_cast<std::size_t>(slots[static_cast<std::size_t>(k)])] = true;

  std::vector<AgentState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    const Vec2 p{radius * std::cos(angle), radius * std::sin(angle)};
    out.push_back(make_entity(k, is_robot[static_cast<std::size_t>(k)] ? AgentKind::Robot : AgentKind::Agent,
                              p, -p, spec));
  }
  return out;
}

std::vector<AgentState> gen_crossing(const ScenarioSpec& spec, std::uint64_t run_seed) {
  const int n = spec.n_agents;
  const int robots = spec.robot_count();
  const int agents = n - robots;
  const double half = 0.5 * crossing_side(n, spec.agent_radius);
  RandomStream rng(derive_seed(run_seed, 0xC2055ULL));

  // Robots start on the x = -half / x = +half sides, agents on y = -half / +half.
  const auto per_side = [](int count) {
    return std::array<std::size_t, 2>{static_cast<std::size_t>((count + 1) / 2),
                                      static_cast<std::size_t>(count / 2)};
  };
  const double jitter = 0.04;

  std::vector<AgentState> out;
  out.reserve(static_cast<std::size_t>(n));
  int next_id = 0;

  auto place_group = [&](AgentKind kind, int count, bool x_sides) {
    const auto sizes = per_side(count);
    const std::size_t need = std::max(sizes[0], sizes[1]);
    const std::vector<double> slots = side_slots(2.0 * half, spec.agent_radius, need);
    for (int side = 0; side < 2; ++side) {
      std::vector<std::size_t> starts(slots.size());
      std::vector<std::size_t> goals(slots.size());
      std::iota(starts.begin(), starts.end(), std::size_t{0});
      std::iota(goals.begin(), goals.end(), std::size_t{0});
      rng.shuffle(starts.begin(), starts.end());
      rng.shuffle(goals.begin(), goals.end());
      const double sign = side == 0 ? -1.0 : 1.0;
      for (std::size_t k = 0; k < sizes[static_cast<std::size_t>(side)]; ++k) {
        const double s0 = slots[starts[k]] + rng.uniform(-jitter, jitter);
        const double s1 = slots[goals[k]] + rng.uniform(-jitter, jitter);
        const Vec2 start = x_sides ? Vec2{sign * half, s0} : Vec2{s0, sign * half};
        const Vec2 goal = x_sides ? Vec2{-sign * half, s1} : Vec2{s1, -sign * half};
        AgentState a = make_entity(next_id++, kind, start, goal, spec);
        a.goal_bounce = kind == AgentKind::Agent;
        out.push_back(a);
      }
    }
  };
  place_group(AgentKind::Robot, robots, true);
  place_group(AgentKind::Agent, agents, false);
  return out;
}

std::vector<AgentState> gen_custom(const ScenarioSpec& spec) {
  std::vector<AgentState> out;
  int id = 0;
  for (const auto& e : spec.entities) {
    AgentState a = make_entity(id++, e.kind, e.position, e.goal, spec);
    if (e.radius) a.radius = *e.radius;
    if (e.max_speed) a.max_speed = *e.max_speed;
    if (e.kind == AgentKind::StaticDisc) {
      a.goal = a.position;
      a.max_speed = 0.0;
    }
    out.push_back(a);
  }
  return out;
}

std::vector<AgentState> generate_world(const ScenarioSpec& spec, std::uint64_t run_seed) {
  std::vector<AgentState> world;
  switch (spec.family) {
    case Family::HeadOn:
      world = gen_headon(spec);
      break;
    case Family::Circle:
      world = gen_circle(spec, run_seed);
      break;
    case Family::Crossing:
      world = gen_crossing(spec, run_seed);
      break;
    case Family::Custom:
      world = gen_custom(spec);
      break;
  }
  int id = static_cast<int>(world.size());
  for (const auto& ob : spec.obstacles) {
    AgentState s;
    s.id = id++;
    s.kind = AgentKind::StaticDisc;
    s.position = s.start = s.goal = ob.center;
    s.radius = ob.radius;
    s.max_speed = 0.0;
    world.push_back(s);
  }
  return world;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::HeadOn: return "headon";
    case Family::Circle: return "circle";
    case Family::Crossing: return "crossing";
    case Family::Custom: return "custom";
  }
  return "?";
}

std::string to_string(AgentKind k) {
  switch (k) {
    case AgentKind::Robot: return "robot";
    case AgentKind::Agent: return "agent";
    case AgentKind::StaticDisc: return "static";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Active: return "active";
    case Status::Arrived: return "arrived";
    case Status::Collided: return "collided";
  }
  return "?";
}

}  // namespace avocado
