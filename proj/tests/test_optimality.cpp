#include <gtest/gtest.h>

#include "heron/bundled_scenes.hpp"
#include "heron/optimality.hpp"
#include "heron/solver.hpp"
#include "support.hpp"

using namespace heron;

namespace {

ProblemInstance two_balls() { return {{ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({5, 0}, 1)}}; }

SolverRun solve_scene(const std::string &name) {
  const auto scene = bundled_scene(name);
  return solve(scene.instance(), initial_configuration(scene), solver_options(scene));
}

} // namespace

TEST(Certificate, CollinearTwoBalls) {
  const auto rep = check_optimality(two_balls(), {{{1, 0}}, {{4, 0}}});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.implied_normals.xs[0], (Point{1, 0}));
  EXPECT_EQ(rep.implied_normals.ys[0], (Point{-1, 0}));
  EXPECT_DOUBLE_EQ(rep.o3_residual, 0.0);
  EXPECT_DOUBLE_EQ(rep.min_pair_distance, 3.0);
}

TEST(Certificate, InteriorPointWithNonzeroNormalFails) {
  const auto rep = check_optimality(two_balls(), {{{0.5, 0}}, {{4, 0}}});
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(rep.feasible_in_cone[0]);
  EXPECT_TRUE(rep.target_in_cone[0]);
  EXPECT_NEAR(rep.o1_residuals[0], 1.0, 1e-12);
}

TEST(Certificate, BoundaryPointOffTheAxisFails) {
  const auto rep = check_optimality(two_balls(), {{{0, 1}}, {{5, 1}}});
  EXPECT_FALSE(rep.passed);
}

TEST(Certificate, Example51SolverOutputPasses) {
  const auto scene = bundled_scene("example_5_1");
  const auto run = solve_scene("example_5_1");
  const auto rep = check_optimality(scene.instance(), run.best, 1e-3);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.o3_residual, 1e-9);
  EXPECT_TRUE(boundary_check(scene.instance(), run.best).all());
}

TEST(Certificate, Example52SolverOutputPasses) {
  const auto scene = bundled_scene("example_5_2");
  const auto run = solve_scene("example_5_2");
  EXPECT_TRUE(check_optimality(scene.instance(), run.best, 1e-3).passed);
  EXPECT_TRUE(boundary_check(scene.instance(), run.best).all());
}

TEST(Certificate, PerturbedOptimumFails) {
  const auto scene = bundled_scene("example_5_1");
  auto z = solve_scene("example_5_1").best;
  // Slide x_1 along its circle, away from the optimal contact point.
  const Point c{8, 5};
  const Point d = z.xs[0] - c;
  const double a = std::atan2(d[1], d[0]) + 0.3;
  z.xs[0] = c + Point{std::cos(a), std::sin(a)};
  const auto rep = check_optimality(scene.instance(), z, 1e-3);
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(rep.feasible_in_cone[0]);
}

TEST(Certificate, ScalingAndTranslationInvariant) {
  const auto inst = two_balls();
  const Configuration z{{{1, 0}}, {{4, 0}}};
  const Point shift{-3, 7};
  const auto moved = translated(inst, shift);
  EXPECT_TRUE(check_optimality(moved, {{z.xs[0] + shift}, {z.ys[0] + shift}}).passed);
  const auto big = scaled(inst, 4.0);
  EXPECT_TRUE(check_optimality(big, {{z.xs[0] * 4.0}, {z.ys[0] * 4.0}}).passed);
}

TEST(Certificate, ClassicalHeronReflectionPoint) {
  const auto scene = bundled_scene("classical_heron");
  const auto rep = check_optimality(scene.instance(), {{{2, 0}}, {{0, 2}, {4, 2}}});
  EXPECT_TRUE(rep.passed);
  EXPECT_FALSE(check_optimality(scene.instance(), {{{1, 0}}, {{0, 2}, {4, 2}}}).passed);
}

TEST(Certificate, Errors) {
  try {
    check_optimality(two_balls(), {{{3, 0}}, {{4, 0}}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
  const ProblemInstance overlap({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({1, 0}, 1)});
  try {
    check_optimality(overlap, {{{0.5, 0}}, {{0.5, 0}}});
    FAIL();
  } catch (const DegenerateConfiguration &e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateConfiguration);
    EXPECT_EQ(e.feasible_index(), 0u);
    EXPECT_EQ(e.target_index(), 0u);
  }
  EXPECT_THROW(check_optimality(two_balls(), {{{1, 0}}, {{4, 0}}}, 0.0), Error);
}

TEST(Boundary, Examples) {
  const ProblemInstance inst({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::box({4, 2}, 1.0)});
  const auto rep = boundary_check(inst, {{{0, 0}}, {{3, 3}}});
  EXPECT_FALSE(rep.feasible_on_boundary[0]);
  EXPECT_TRUE(rep.target_on_boundary[0]);
  EXPECT_FALSE(rep.all());
}

TEST(Certificate, RandomSolverOutputsPassOnSeparatedBalls) {
  // Well separated discs: PSA converges and the certificate accepts its output.
  heron::testing::Gen gen(heron::testing::kSeed + 31);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ConvexSet> f, t;
    for (int i = 0; i < 2; ++i) f.push_back(ConvexSet::ball(gen.point(2, 3) + Point{-20, 0}, gen.uniform(0.5, 2)));
    for (int j = 0; j < 2; ++j) t.push_back(ConvexSet::ball(gen.point(2, 3) + Point{20, 0}, gen.uniform(0.5, 2)));
    const ProblemInstance inst(f, t);
    const auto run = solve(inst, project(inst, gen.configuration(2, 2, 2)), StepSchedule::inverse_t(),
                           StoppingRule{1e-15, 200000});
    EXPECT_TRUE(check_optimality(inst, run.best).passed) << "trial " << trial;
  }
}
