#include "avocado/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "avocado/rng.hpp"

namespace avocado {
namespace {

void mark(std::vector<Stage>* trace, Stage s) {
  if (trace != nullptr) trace->push_back(s);
}

}  // namespace

Vec2 preferred_velocity(const Vec2& position, const Vec2& goal, double max_speed,
                        double goal_tolerance) {
  if (!(max_speed > 0.0)) throw std::invalid_argument("max_speed must be positive");
  const Vec2 to_goal = goal - position;
  const double dist = norm(to_goal);
  if (dist < goal_tolerance || dist == 0.0) return {};
  return (max_speed / dist) * to_goal;
}

Planner::Planner(PlannerConfig config, std::uint64_t seed)
    : config_(std::move(config)), seed_(seed), rng_(mix_seed(seed)) {
  if (!(config_.vo_horizon > 0.0)) throw std::invalid_argument("vo_horizon must be positive");
  if (!(config_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  config_.params.validate();
}

PlanOutput Planner::plan_step(const PerceptionSnapshot& snapshot, long tick,
                              std::vector<Stage>* trace) {
  const OpinionParams& params = config_.params;
  const bool adaptive = config_.mode == PlannerMode::Avocado;
  const bool noisy = adaptive || (config_.mode == PlannerMode::OrcaFixed && config_.noise);

  PlanOutput out;
  out.v_pre = preferred_velocity(snapshot.position, snapshot.goal, snapshot.max_speed,
                                 config_.goal_tolerance);
  const Vec2 reference =
      config_.reference == ReferenceVelocity::Current ? snapshot.velocity : out.v_pre;

  std::vector<const NeighborObservation*> neighbors;
  neighbors.reserve(snapshot.neighbors.size());
  for (const auto& nb : snapshot.neighbors) {
    if (config_.mode == PlannerMode::NonCooperative && nb.kind == AgentKind::Robot) continue;
    neighbors.push_back(&nb);
  }
  std::sort(neighbors.begin(), neighbors.end(),
            [](const auto* l, const auto* r) { return l->id < r->id; });

  VelocityProgram program;
  program.preferred = out.v_pre;
  program.max_speed = snapshot.max_speed;
  program.constraints.reserve(neighbors.size());

  for (const NeighborObservation* nb : neighbors) {
    const bool is_static = nb->kind == AgentKind::StaticDisc;
    const double combined = snapshot.radius + nb->radius;

    NeighborDiagnostics diag;
    diag.id = nb->id;

    OpinionState* state = nullptr;
    if (adaptive) {
      auto [it, inserted] = opinions_.try_emplace(nb->id, OpinionState::initial(params));
      state = &it->second;
      if (is_static) state->o = -1.0;
    }

    mark(trace, Stage::TimeToCollision);
    diag.tau = time_to_collision(snapshot.position, nb->position, out.v_pre - nb->velocity, combined);

    if (state != nullptr && !is_static) {
      mark(trace, Stage::Attention);
      *state = update_attention(*state, diag.tau, params);
    }

    Vec2 sensed = nb->velocity;
    if (noisy && !is_static) {
      mark(trace, Stage::Noise);
      sensed = perturb_velocity(nb->velocity, state != nullptr ? state->attention : 0.0, params, rng_);
    }

    mark(trace, Stage::Escape);
    const Vec2 offset = nb->position - snapshot.position;
    const bool overlapping = abs_sq(offset) <= combined * combined;
    out.overlap = out.overlap || overlapping;
    auto escape_for = [&](const Vec2& rel_vel) {
      return overlapping ? overlap_escape(rel_vel, offset, combined, config_.dt)
                         : closest_escape(rel_vel, VOCone{offset, combined, config_.vo_horizon});
    };
    const EscapeResult escape = escape_for(reference - sensed);

    double alpha = 0.5;
    if (state != nullptr && !is_static) {
      mark(trace, Stage::Estimate);
      // Judged against the escape from the preferred velocity, which keeps a
      // usable direction after the executed velocity has settled on the VO edge.
      // The neighbour's share of the change in relative velocity is -dv_i.
      if (state->prev_neighbor_vel) {
        const Vec2 probe = config_.reference == ReferenceVelocity::Current
                               ? escape_for(out.v_pre - sensed).u
                               : escape.u;
        diag.e = estimate_e(*state->prev_neighbor_vel - nb->velocity, probe, params);
      }
      if (!config_.freeze_opinions) {
        mark(trace, Stage::Opinion);
        *state = update_opinion(*state, diag.e, params);
      }
      alpha = cooperation_from_opinion(state->o);
    } else if (is_static) {
      alpha = 0.0;
    }

    mark(trace, Stage::Constraint);
    diag.alpha = alpha;
    diag.constraint = build_oca_line(escape.u, escape.n, alpha, reference);
    if (state != nullptr) {
      diag.o = state->o;
      diag.attention = state->attention;
    } else {
      diag.o = shift(alpha);
    }
    program.constraints.push_back(diag.constraint);
    out.per_neighbor.push_back(diag);
  }

  mark(trace, Stage::Solve);
  const ProgramSolution sol =
      solve(program, derive_seed(seed_, static_cast<std::uint64_t>(tick), 0x5EEDULL));
  out.v_star = sol.velocity;
  out.feasible = sol.feasible;

  mark(trace, Stage::Store);
  if (adaptive) {
    for (const NeighborObservation* nb : neighbors) {
      OpinionState& s = opinions_.at(nb->id);
      s.prev_neighbor_vel = nb->velocity;
      s.last_seen_tick = tick;
    }
    std::erase_if(opinions_, [&](const auto& kv) {
      return tick - kv.second.last_seen_tick > config_.forget_after_ticks;
    });
  }
  return out;
}

}  // namespace avocado
