#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "avocado/scenario.hpp"

using namespace avocado;

TEST(ScenarioSize, CircleRadius) {
  EXPECT_DOUBLE_EQ(circle_radius(10, 0.2), 2.5);
  EXPECT_NEAR(circle_radius(25, 0.2), 2.3 * 25 * 0.2 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(circle_radius(25, 0.2), 3.6606, 1e-4);
}

TEST(ScenarioSize, CrossingSide) { EXPECT_NEAR(crossing_side(10, 0.2), 3.0, 1e-12); }

TEST(ScenarioSpec, RobotCountIsCeiling) {
  ScenarioSpec s;
  s.n_agents = 10;
  for (const auto& [p, robots] : std::vector<std::pair<double, int>>{
           {0.01, 1}, {0.25, 3}, {0.3, 3}, {0.5, 5}, {0.75, 8}, {1.0, 10}}) {
    s.proportion = p;
    EXPECT_EQ(s.robot_count(), robots) << p;
  }
  s.proportion = 0.0;
  EXPECT_EQ(s.robot_count(), 0);
}

TEST(ScenarioSpec, ValidationMessages) {
  ScenarioSpec s;
  s.n_agents = 3;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.variant = "RVO";
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.dt = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_NO_THROW(ScenarioSpec{}.validate());
}

TEST(Variants, Gains) {
  EXPECT_EQ(variant_params("AVOCADO_1"), OpinionParams{});
  EXPECT_DOUBLE_EQ(variant_params("AVOCADO_2").d, 5.0);
  EXPECT_DOUBLE_EQ(variant_params("AVOCADO_3").b, 1.0);
  EXPECT_DOUBLE_EQ(variant_params("AVOCADO_4").b, -1.0);
  EXPECT_EQ(variant_mode("ORCA"), PlannerMode::OrcaFixed);
  EXPECT_EQ(variant_mode("AVOCADO_3"), PlannerMode::Avocado);
  EXPECT_THROW(variant_params("nope"), std::invalid_argument);
}

TEST(HeadOn, Construction) {
  ScenarioSpec s;
  const auto w = gen_headon(s);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].kind, AgentKind::Robot);
  EXPECT_EQ(w[0].position, Vec2(-2.5, 0.0));
  EXPECT_EQ(w[0].goal, Vec2(2.5, 0.0));
  EXPECT_EQ(w[1].kind, AgentKind::Agent);
  EXPECT_EQ(w[1].position, Vec2(2.5, 0.0));
  EXPECT_EQ(w[1].goal, Vec2(-2.5, 0.0));
  EXPECT_DOUBLE_EQ(w[0].max_speed, 1.0);
  EXPECT_DOUBLE_EQ(w[1].max_speed, 0.75);
  s.headon_counterpart = AgentKind::Robot;
  EXPECT_EQ(gen_headon(s)[1].kind, AgentKind::Robot);
}

TEST(Circle, AntipodalGoalsAndSpacing) {
  for (int n : {2, 5, 10, 13, 25}) {
    ScenarioSpec s;
    s.family = Family::Circle;
    s.n_agents = n;
    s.proportion = 0.5;
    const auto w = gen_circle(s, 17);
    ASSERT_EQ(static_cast<int>(w.size()), n);
    const double r = circle_radius(n, 0.2);
    int robots = 0;
    for (const auto& a : w) {
      EXPECT_NEAR(norm(a.position), r, 1e-12);
      EXPECT_EQ(a.goal, -a.position);
      EXPECT_FALSE(a.goal_bounce);
      robots += a.kind == AgentKind::Robot;
    }
    EXPECT_EQ(robots, s.robot_count());
    const double chord = 2.0 * r * std::sin(std::numbers::pi / n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        EXPECT_GE(norm(w[i].position - w[j].position), chord - 1e-12);
      }
    }
  }
}

TEST(Circle, IdentityShuffleDependsOnSeed) {
  ScenarioSpec s;
  s.family = Family::Circle;
  s.n_agents = 10;
  s.proportion = 0.5;
  auto kinds = [&](std::uint64_t seed) {
    std::vector<AgentKind> k;
    for (const auto& a : gen_circle(s, seed)) k.push_back(a.kind);
    return k;
  };
  EXPECT_EQ(kinds(1), kinds(1));
  bool differs = false;
  for (std::uint64_t seed = 2; seed < 10 && !differs; ++seed) differs = kinds(seed) != kinds(1);
  EXPECT_TRUE(differs);
}

TEST(Crossing, RobotsCrossAgentFlow) {
  ScenarioSpec s;
  s.family = Family::Crossing;
  s.n_agents = 10;
  s.proportion = 0.5;
  const auto w = gen_crossing(s, 3);
  ASSERT_EQ(w.size(), 10u);
  const double half = 1.5;
  for (const auto& a : w) {
    if (a.kind == AgentKind::Robot) {
      EXPECT_NEAR(std::fabs(a.position.x), half, 1e-12);
      EXPECT_NEAR(a.goal.x, -a.position.x, 1e-12);
      EXPECT_LT(std::fabs(a.position.y), half);
      EXPECT_FALSE(a.goal_bounce);
    } else {
      EXPECT_NEAR(std::fabs(a.position.y), half, 1e-12);
      EXPECT_NEAR(a.goal.y, -a.position.y, 1e-12);
      EXPECT_LT(std::fabs(a.position.x), half);
      EXPECT_TRUE(a.goal_bounce);
    }
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      EXPECT_GE(norm(w[i].position - w[j].position), 0.4) << i << "," << j;
    }
  }
}

TEST(Crossing, LargePopulationsFit) {
  for (int n = 10; n <= 25; n += 3) {
    for (double p : {0.01, 0.25, 0.5, 0.75, 1.0}) {
      ScenarioSpec s;
      s.family = Family::Crossing;
      s.n_agents = n;
      s.proportion = p;
      EXPECT_NO_THROW(gen_crossing(s, 1)) << n << " " << p;
    }
  }
}

TEST(Obstacles, AppendedAsStaticDiscs) {
  ScenarioSpec s;
  s.obstacles.push_back({{0.0, 1.0}, 0.5});
  const auto w = generate_world(s, 0);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2].kind, AgentKind::StaticDisc);
  EXPECT_EQ(w[2].id, 2);
  EXPECT_DOUBLE_EQ(w[2].radius, 0.5);
}

TEST(Custom, EntityOverrides) {
  ScenarioSpec s;
  s.family = Family::Custom;
  s.entities.push_back({AgentKind::Robot, {0, 0}, {1, 0}, std::nullopt, 0.5});
  s.entities.push_back({AgentKind::StaticDisc, {3, 0}, {9, 9}, 0.7, std::nullopt});
  const auto w = gen_custom(s);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_DOUBLE_EQ(w[0].max_speed, 0.5);
  EXPECT_DOUBLE_EQ(w[0].radius, 0.2);
  EXPECT_DOUBLE_EQ(w[1].radius, 0.7);
  EXPECT_EQ(w[1].goal, w[1].position);
}
