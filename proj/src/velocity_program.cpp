#include "avocado/velocity_program.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "avocado/rng.hpp"

namespace avocado {
namespace {

constexpr double kParallelEps = 1e-12;

// Boundary line of a half-plane; the admissible side is to the left of dir.
struct Line {
  Vec2 point;
  Vec2 dir;
};

Line to_line(const HalfPlane& h) { return {h.point, Vec2{h.normal.y, -h.normal.x}}; }

// Positive when v lies on the inadmissible (right) side of the line.
double violation(const Line& l, const Vec2& v) { return det(l.dir, l.point - v); }

// Optimum on line `idx` subject to lines [0, idx) and the disc. With
// direction_opt the objective is the extreme point along `target`, else the
// closest point to `target`.
bool solve_on_line(const std::vector<Line>& lines, std::size_t idx, double radius,
                   const Vec2& target, bool direction_opt, Vec2& result) {
  const Line& line = lines[idx];
  const double along = dot(line.point, line.dir);
  const double disc = along * along + radius * radius - abs_sq(line.point);
  if (disc < 0.0) return false;

  const double root = std::sqrt(disc);
  double t_left = -along - root;
  double t_right = -along + root;

  for (std::size_t i = 0; i < idx; ++i) {
    const double denom = det(line.dir, lines[i].dir);
    const double numer = det(lines[i].dir, line.point - lines[i].point);
    if (std::abs(denom) <= kParallelEps) {
      if (numer < 0.0) return false;
      continue;
    }
    const double t = numer / denom;
    if (denom >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = line.point + (dot(target, line.dir) > 0.0 ? t_right : t_left) * line.dir;
  } else {
    const double t = std::clamp(dot(line.dir, target - line.point), t_left, t_right);
    result = line.point + t * line.dir;
  }
  return true;
}

// Returns the index of the first line that could not be satisfied, or
// lines.size() on success.
std::size_t solve_incremental(const std::vector<Line>& lines, double radius, const Vec2& target,
                              bool direction_opt, Vec2& result) {
  if (direction_opt) {
    result = target * radius;
  } else if (abs_sq(target) > radius * radius) {
    result = normalize(target) * radius;
  } else {
    result = target;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (violation(lines[i], result) > 0.0) {
      const Vec2 previous = result;
      if (!solve_on_line(lines, i, radius, target, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Minimise the largest violation over the disc, starting from the line at
// which the incremental pass failed.
void minimise_violation(const std::vector<Line>& lines, std::size_t begin, double radius,
                        Vec2& result) {
  double depth = 0.0;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (violation(lines[i], result) <= depth) continue;

    std::vector<Line> projected;
    projected.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      Line bisector;
      const double d = det(lines[i].dir, lines[j].dir);
      if (std::abs(d) <= kParallelEps) {
        if (dot(lines[i].dir, lines[j].dir) > 0.0) continue;
        bisector.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        bisector.point =
            lines[i].point + (det(lines[j].dir, lines[i].point - lines[j].point) / d) * lines[i].dir;
      }
      bisector.dir = normalize(lines[j].dir - lines[i].dir);
      projected.push_back(bisector);
    }

    const Vec2 previous = result;
    if (solve_incremental(projected, radius, Vec2{-lines[i].dir.y, lines[i].dir.x}, true,
                          result) < projected.size()) {
      // Only reachable through round-off; the previous point is already optimal.
      result = previous;
    }
    depth = violation(lines[i], result);
  }
}

}  // namespace

HalfPlane build_oca_line(const Vec2& u, const Vec2& n, double alpha, const Vec2& reference) {
  return {reference + (1.0 - alpha) * u, n};
}

ProgramSolution solve(const VelocityProgram& program, std::uint64_t order_seed) {
  if (!(program.max_speed > 0.0)) throw std::invalid_argument("max_speed must be positive");

  std::vector<std::size_t> order(program.constraints.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomStream rng(mix_seed(order_seed));
  rng.shuffle(order.begin(), order.end());

  std::vector<Line> lines;
  lines.reserve(order.size());
  for (std::size_t k : order) lines.push_back(to_line(program.constraints[k]));

  ProgramSolution out;
  const std::size_t failed =
      solve_incremental(lines, program.max_speed, program.preferred, false, out.velocity);
  if (failed < lines.size()) {
    out.feasible = false;
    minimise_violation(lines, failed, program.max_speed, out.velocity);
  }
  return out;
}

}  // namespace avocado
