#include "avocado/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace avocado {
namespace {

void require_finite(const Vec2& v) {
  if (!is_finite(v)) throw GeometryError(GeometryError::Code::NonFinite, "non-finite vector");
}

void require_valid(const VOCone& cone) {
  require_finite(cone.apex_offset);
  if (!(cone.combined_radius > 0.0) || !(cone.horizon > 0.0) ||
      !std::isfinite(cone.combined_radius) || !std::isfinite(cone.horizon)) {
    throw std::invalid_argument("VOCone needs positive finite radius and horizon");
  }
}

Vec2 rotate(const Vec2& v, double cos_a, double sin_a) {
  return {v.x * cos_a - v.y * sin_a, v.x * sin_a + v.y * cos_a};
}

}  // namespace

bool in_velocity_obstacle(const Vec2& rel_vel, const VOCone& cone) {
  require_valid(cone);
  require_finite(rel_vel);
  const double speed_sq = abs_sq(rel_vel);
  const double r_sq = cone.combined_radius * cone.combined_radius;
  if (speed_sq == 0.0) return abs_sq(cone.apex_offset) <= r_sq;
  // Closest approach of the ray t*rel_vel, t in [0, horizon], to the offset.
  const double t = std::clamp(dot(rel_vel, cone.apex_offset) / speed_sq, 0.0, cone.horizon);
  return abs_sq(t * rel_vel - cone.apex_offset) <= r_sq;
}

EscapeResult closest_escape(const Vec2& rel_vel, const VOCone& cone) {
  require_valid(cone);
  require_finite(rel_vel);

  const double dist_sq = abs_sq(cone.apex_offset);
  const double radius = cone.combined_radius;
  if (dist_sq <= radius * radius) {
    throw GeometryError(GeometryError::Code::AlreadyColliding, "discs already overlap");
  }

  const double dist = std::sqrt(dist_sq);
  const Vec2 axis = cone.apex_offset / dist;
  const Vec2 center = cone.cutoff_center();
  const double cut_r = cone.cutoff_radius();

  const double sin_half = radius / dist;
  const double cos_half = std::sqrt(dist_sq - radius * radius) / dist;
  const Vec2 left_dir = rotate(axis, cos_half, sin_half);
  const Vec2 right_dir = rotate(axis, cos_half, -sin_half);
  // Distance from the origin to the tangent points along either leg.
  const double leg_start = std::sqrt(dist_sq - radius * radius) / cone.horizon;

  Vec2 best_point;
  Vec2 best_normal;
  double best_d2 = std::numeric_limits<double>::infinity();

  // Front arc of the cutoff disc, between the two tangent points.
  const Vec2 w = rel_vel - center;
  const double w_len = norm(w);
  if (w_len <= kDegenerateEps * cut_r) {
    best_point = center - cut_r * axis;
    best_normal = -axis;
    best_d2 = abs_sq(best_point - rel_vel);
  } else if (dot(w, -axis) >= w_len * sin_half) {
    best_normal = w / w_len;
    best_point = center + cut_r * best_normal;
    best_d2 = abs_sq(best_point - rel_vel);
  }

  // Legs; projections before the tangent point clamp onto it.
  const double t_left = std::max(dot(rel_vel, left_dir), leg_start);
  const Vec2 q_left = t_left * left_dir;
  const double d2_left = abs_sq(q_left - rel_vel);
  const double t_right = std::max(dot(rel_vel, right_dir), leg_start);
  const Vec2 q_right = t_right * right_dir;
  const double d2_right = abs_sq(q_right - rel_vel);

  if (d2_left < best_d2 && (d2_left < d2_right || det(cone.apex_offset, w) > 0.0)) {
    best_d2 = d2_left;
    best_point = q_left;
    best_normal = perp(left_dir);
  }
  if (d2_right < best_d2) {
    best_d2 = d2_right;
    best_point = q_right;
    best_normal = -perp(right_dir);
  }

  EscapeResult out;
  out.u = best_point - rel_vel;
  out.n = best_normal;
  out.inside_vo = in_velocity_obstacle(rel_vel, cone);
  return out;
}

EscapeResult overlap_escape(const Vec2& rel_vel, const Vec2& apex_offset, double combined_radius,
                            double dt) {
  require_finite(rel_vel);
  require_finite(apex_offset);
  const Vec2 w = rel_vel - apex_offset / dt;
  const double w_len = norm(w);
  EscapeResult out;
  out.inside_vo = true;
  if (w_len <= kDegenerateEps) {
    const double d = norm(apex_offset);
    out.n = d > kDegenerateEps ? -(apex_offset / d) : Vec2{1.0, 0.0};
    out.u = (combined_radius / dt) * out.n;
    return out;
  }
  out.n = w / w_len;
  out.u = (combined_radius / dt - w_len) * out.n;
  return out;
}

TimeToCollision time_to_collision(const Vec2& robot_pos, const Vec2& neighbor_pos,
                                  const Vec2& rel_vel, double combined_radius) {
  require_finite(robot_pos);
  require_finite(neighbor_pos);
  require_finite(rel_vel);
  if (!(combined_radius > 0.0)) throw std::invalid_argument("combined radius must be positive");

  const Vec2 sep = robot_pos - neighbor_pos;
  const double b1 = abs_sq(rel_vel);
  const double b2 = 2.0 * dot(rel_vel, sep);
  const double b3 = abs_sq(sep) - combined_radius * combined_radius;

  using Kind = TimeToCollision::Kind;
  if (b3 < 0.0) return {Kind::AlreadyColliding, 0.0};
  // Exact contact while closing counts as already colliding.
  if (b3 == 0.0) return b2 < 0.0 ? TimeToCollision{Kind::AlreadyColliding, 0.0}
                                  : TimeToCollision{Kind::NoCollision, 0.0};
  if (b1 == 0.0) return {Kind::NoCollision, 0.0};

  const double disc = b2 * b2 - 4.0 * b1 * b3;
  if (disc < 0.0 || b2 >= 0.0) return {Kind::NoCollision, 0.0};

  // b3 > 0 so both roots share the sign of -b2; the smaller one is b3/q.
  const double q = 0.5 * (-b2 + std::sqrt(disc));
  return {Kind::Finite, b3 / q};
}

double scalar_projection(const Vec2& a, const Vec2& b) {
  require_finite(a);
  require_finite(b);
  const double b_sq = abs_sq(b);
  if (std::sqrt(b_sq) <= kDegenerateEps) {
    throw GeometryError(GeometryError::Code::DegenerateDirection, "projection onto a zero vector");
  }
  return dot(a, b) / b_sq;
}

}  // namespace avocado
