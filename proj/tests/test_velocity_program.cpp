#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "avocado/velocity_program.hpp"
#include "oracles.hpp"

using namespace avocado;

namespace {

VelocityProgram random_program(std::mt19937_64& rng, int max_constraints = 12) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> count(0, max_constraints);
  VelocityProgram prog;
  prog.max_speed = 0.5 + std::fabs(u(rng));
  prog.preferred = Vec2{u(rng), u(rng)} * (1.5 * prog.max_speed);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const double a = 3.14159265358979 * u(rng);
    HalfPlane h;
    h.normal = {std::cos(a), std::sin(a)};
    h.point = Vec2{u(rng), u(rng)} * prog.max_speed;
    prog.constraints.push_back(h);
  }
  return prog;
}

}  // namespace

TEST(OcaLine, CooperationEndpoints) {
  const Vec2 u{0.2, -0.4}, n{0.0, -1.0}, v{1.0, 0.5};
  EXPECT_EQ(build_oca_line(u, n, 0.5, v).point, v + 0.5 * u);
  EXPECT_EQ(build_oca_line(u, n, 1.0, v).point, v);
  EXPECT_EQ(build_oca_line(u, n, 0.0, v).point, v + u);
  EXPECT_EQ(build_oca_line(u, n, 0.3, v).normal, n);
}

TEST(Solve, UnconstrainedIdentity) {
  VelocityProgram prog;
  prog.preferred = {0.3, 0.4};
  prog.max_speed = 1.0;
  const auto sol = solve(prog);
  EXPECT_TRUE(sol.feasible);
  EXPECT_EQ(sol.velocity, prog.preferred);
}

TEST(Solve, UnconstrainedClampsToSpeedDisc) {
  VelocityProgram prog;
  prog.preferred = {3.0, 4.0};
  prog.max_speed = 1.0;
  const auto sol = solve(prog);
  EXPECT_TRUE(sol.feasible);
  EXPECT_NEAR(sol.velocity.x, 0.6, 1e-15);
  EXPECT_NEAR(sol.velocity.y, 0.8, 1e-15);
}

TEST(Solve, InactiveConstraint) {
  VelocityProgram prog;
  prog.preferred = {0.3, 0.4};
  prog.constraints.push_back({{0.0, 0.0}, {0.0, 1.0}});
  EXPECT_EQ(solve(prog).velocity, prog.preferred);
}

TEST(Solve, SingleActiveConstraintFrozen) {
  VelocityProgram prog;
  prog.preferred = {0.8, 0.0};
  prog.max_speed = 1.0;
  prog.constraints.push_back({{0.0, 0.5}, {0.0, 1.0}});
  const auto sol = solve(prog);
  EXPECT_TRUE(sol.feasible);
  EXPECT_NEAR(sol.velocity.x, 0.8, 1e-12);
  EXPECT_NEAR(sol.velocity.y, 0.5, 1e-12);
  const auto grid = oracle::polar_grid_optimum(prog, 1000, 1000);
  ASSERT_TRUE(grid.has_value());
  EXPECT_NEAR(norm(sol.velocity - prog.preferred), norm(*grid - prog.preferred), 2e-3);
}

TEST(Solve, FeasibleSolutionsRespectConstraints) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) {
    const auto prog = random_program(rng);
    const auto sol = solve(prog, static_cast<std::uint64_t>(i));
    if (!sol.feasible) continue;
    EXPECT_LE(norm(sol.velocity), prog.max_speed + 1e-9);
    for (const auto& h : prog.constraints) EXPECT_GE(dot(sol.velocity - h.point, h.normal), -1e-9);
  }
}

TEST(Solve, OptimalAgainstEnumeration) {
  std::mt19937_64 rng(2);
  int feasible = 0, infeasible = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto prog = random_program(rng);
    const auto sol = solve(prog, static_cast<std::uint64_t>(i));
    const auto best = oracle::enumerate_optimum(prog);
    if (sol.feasible) {
      ++feasible;
      ASSERT_TRUE(best.has_value()) << i;
      EXPECT_LE(norm(prog.preferred - sol.velocity), norm(prog.preferred - *best) + 2e-3) << i;
    } else {
      ++infeasible;
      // Enumeration may only find a point within its own looser tolerance.
      if (best) EXPECT_GT(oracle::max_violation(prog, *best), -1e-6) << i;
      EXPECT_LE(oracle::max_violation(prog, sol.velocity), oracle::min_max_violation(prog, 30, 120) + 2e-3) << i;
      EXPECT_LE(norm(sol.velocity), prog.max_speed + 1e-9);
    }
  }
  EXPECT_GT(feasible, 100);
  EXPECT_GT(infeasible, 100);
}

TEST(Solve, DeterministicForEqualInputs) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto prog = random_program(rng);
    const auto a = solve(prog, 77);
    const auto b = solve(prog, 77);
    EXPECT_EQ(a.velocity, b.velocity);
    EXPECT_EQ(a.feasible, b.feasible);
  }
}

TEST(Solve, DeviationNonIncreasingInCooperation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = 3.14159 * u(rng);
    const Vec2 n{std::cos(a), std::sin(a)};
    const Vec2 escape = std::fabs(u(rng)) * n;
    const Vec2 pref{0.7 * u(rng), 0.7 * u(rng)};
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha = 0.0; alpha <= 1.0 + 1e-12; alpha += 0.05) {
      VelocityProgram prog;
      prog.preferred = pref;
      prog.max_speed = 1.0;
      prog.constraints.push_back(build_oca_line(escape, n, alpha, pref));
      const double dev = norm(solve(prog).velocity - pref);
      EXPECT_LE(dev, prev + 1e-12);
      prev = dev;
    }
  }
}

TEST(Solve, InfeasibleFallbackBalancesViolation) {
  // Two opposing half-planes with an empty intersection.
  VelocityProgram prog;
  prog.preferred = {0.5, 0.0};
  prog.max_speed = 1.0;
  prog.constraints.push_back({{0.0, 0.3}, {0.0, 1.0}});
  prog.constraints.push_back({{0.0, -0.3}, {0.0, -1.0}});
  const auto sol = solve(prog);
  EXPECT_FALSE(sol.feasible);
  EXPECT_NEAR(sol.velocity.y, 0.0, 1e-9);
  EXPECT_NEAR(oracle::max_violation(prog, sol.velocity), 0.3, 1e-9);
}
