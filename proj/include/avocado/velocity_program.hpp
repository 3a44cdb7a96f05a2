#pragma once

#include <cstdint>
#include <vector>

#include "avocado/vec2.hpp"

namespace avocado {

/// Admissible velocities {v : (v - point).normal >= 0}.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;  // unit

  /// Signed violation (point - v).normal; <= 0 means v is admissible.
  double violation(const Vec2& v) const { return dot(point - v, normal); }
  bool contains(const Vec2& v, double tol = 0.0) const { return violation(v) <= tol; }
};

struct VelocityProgram {
  Vec2 preferred;
  double max_speed = 1.0;
  std::vector<HalfPlane> constraints;
};

struct ProgramSolution {
  Vec2 velocity;
  bool feasible = true;
};

/// Constraint tolerance used when reporting feasibility (m/s).
inline constexpr double kConstraintTol = 1e-9;

/// Half-plane through reference + (1 - alpha)*u with normal n. With alpha =
/// 0.5 this is the reciprocal (ORCA) line.
HalfPlane build_oca_line(const Vec2& u, const Vec2& n, double alpha, const Vec2& reference);

/// Velocity in the max-speed disc closest to the preferred one that satisfies
/// every half-plane. When the constraints have no common point inside the
/// disc, returns the disc velocity minimising the largest violation and
/// feasible = false. Constraints are inserted in a pseudo-random order drawn
/// from `order_seed`, so equal inputs give bit-identical outputs.
ProgramSolution solve(const VelocityProgram& program, std::uint64_t order_seed = 0);

}  // namespace avocado
