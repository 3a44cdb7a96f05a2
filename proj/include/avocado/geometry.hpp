#pragma once

#include <stdexcept>

#include "avocado/vec2.hpp"

namespace avocado {

/// Guard for near-zero directions (m/s).
inline constexpr double kDegenerateEps = 1e-9;

class GeometryError : public std::domain_error {
 public:
  enum class Code { AlreadyColliding, DegenerateDirection, NonFinite };

  GeometryError(Code code, const char* what) : std::domain_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Velocity obstacle of a neighbour truncated at a time horizon, expressed in
/// relative-velocity space. The truncating disc has centre apex_offset/horizon
/// and radius combined_radius/horizon.
struct VOCone {
  Vec2 apex_offset;        // p_i - p_r (m)
  double combined_radius;  // r_s + r_i (m)
  double horizon;          // s

  Vec2 cutoff_center() const { return apex_offset / horizon; }
  double cutoff_radius() const { return combined_radius / horizon; }
};

struct EscapeResult {
  Vec2 u;             // minimal change moving relVel onto the VO boundary
  Vec2 n;             // unit outward normal of the boundary at relVel + u
  bool inside_vo = false;
};

struct TimeToCollision {
  enum class Kind { Finite, NoCollision, AlreadyColliding };

  Kind kind = Kind::NoCollision;
  double value = 0.0;  // seconds, meaningful for Finite only

  bool finite() const { return kind == Kind::Finite; }
};

/// True when rel_vel lies in the truncated VO (boundary counts as inside).
bool in_velocity_obstacle(const Vec2& rel_vel, const VOCone& cone);

/// Nearest point of the VO boundary to rel_vel, returned as the offset u and
/// the outward normal there. Throws GeometryError::AlreadyColliding when the
/// discs already overlap (|apex_offset| <= combined_radius).
EscapeResult closest_escape(const Vec2& rel_vel, const VOCone& cone);

/// Escape used once two discs overlap: project onto the cutoff circle of
/// horizon dt so the overlap is resolved within one step.
EscapeResult overlap_escape(const Vec2& rel_vel, const Vec2& apex_offset,
                            double combined_radius, double dt);

/// First contact time of the robot disc with the neighbour disc when their
/// relative velocity is held constant. `rel_vel` is robot minus neighbour.
TimeToCollision time_to_collision(const Vec2& robot_pos, const Vec2& neighbor_pos,
                                  const Vec2& rel_vel, double combined_radius);

/// Signed component of a along b divided by |b|, i.e. (a.b)/|b|^2.
/// Throws GeometryError::DegenerateDirection when |b| <= kDegenerateEps.
double scalar_projection(const Vec2& a, const Vec2& b);

}  // namespace avocado
