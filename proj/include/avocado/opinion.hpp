#pragma once

#include <optional>
#include <vector>

#include "avocado/geometry.hpp"
#include "avocado/rng.hpp"
#include "avocado/vec2.hpp"

namespace avocado {

enum class AttentionMode {
  Smoothing,  // A <- delta*A + (1-delta)*tanh(kappa/tau)
  Ode,        // forward Euler on dA/dt = -delta*A + (1-delta)*tanh(kappa/tau)
};

enum class ProjectionMode { Signed, Unsigned };

/// Gains of the cooperation-estimation law. Defaults are the nominal tuning.
struct OpinionParams {
  double a = 0.3;        // self-reinforcement gain
  double b = 0.0;        // bias, in [-1, 1]
  double c = 0.7;        // weight of the neighbour estimate
  double d = 2.0;        // forgetting rate (1/s)
  double delta = 0.57;   // attention smoothing, in [0, 1)
  double kappa = 14.15;  // attention gain (s)
  double epsilon = 3.22; // estimator sensitivity
  double sigma = 1e-4;   // deadlock-breaking noise bound (m/s)
  double dt = 0.05;      // sample time (s)
  AttentionMode attention_mode = AttentionMode::Smoothing;
  ProjectionMode projection_mode = ProjectionMode::Signed;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Largest |o| reachable: |b|/d + 1.
  double opinion_bound() const;

  bool operator==(const OpinionParams&) const = default;
};

/// Per-(robot, neighbour) adaptive state.
struct OpinionState {
  double o = 0.0;  // shifted degree of cooperation
  double attention = 0.0;
  std::optional<Vec2> prev_neighbor_vel;
  long last_seen_tick = 0;

  /// Fresh state sitting at the pre-bifurcation equilibrium o = b/d.
  static OpinionState initial(const OpinionParams& params);
};

/// o = 2*alpha - 1. Throws std::out_of_range outside [0, 1].
double shift(double alpha);
/// alpha = (o + 1)/2. Throws std::out_of_range outside [-1, 1].
double unshift(double o);

/// Cooperation degree used in a constraint: (o+1)/2 clamped to [0, 1].
double cooperation_from_opinion(double o);

OpinionState update_attention(OpinionState state, const TimeToCollision& tau,
                              const OpinionParams& params);

/// Projection estimate of the neighbour's opinion, tanh(eps*(s - 1/2)) with
/// s the (signed or unsigned) projection of delta_v on u over |u|. Returns
/// 0 when |u| is degenerate.
double estimate_e(const Vec2& delta_v, const Vec2& u, const OpinionParams& params);

/// One forward-Euler step of
///   do/dt = -d*o + d*A*tanh(a*o + c*e) + b,
/// clamped to |o| <= |b|/d + 1.
OpinionState update_opinion(OpinionState state, double e, const OpinionParams& params);

/// v + (1 - A)*mu with mu uniform in [-sigma, sigma] per component.
Vec2 perturb_velocity(const Vec2& v, double attention, const OpinionParams& params,
                      RandomStream& rng);

/// All fixed points of o = A*tanh(a*o + c*e) + b/d, ascending.
std::vector<double> equilibrium_solve(double e, double attention, const OpinionParams& params);

/// Eigenvalue of the opinion law linearised at o = b/d:
///   -d + d*A*a*sech^2(a*b/d).
double linearization_eigenvalue(double attention, const OpinionParams& params);

/// Attention above which o = b/d loses stability: 1/(a*sech^2(a*b/d)).
double bifurcation_threshold(const OpinionParams& params);

}  // namespace avocado
