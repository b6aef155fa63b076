#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "heron/bundled_scenes.hpp"
#include "heron/problem.hpp"
#include "support.hpp"

using namespace heron;
using heron::testing::Gen;

namespace {

ProblemInstance points_instance(std::vector<Point> xs, std::vector<Point> ys) {
  std::vector<ConvexSet> f, t;
  for (auto &p : xs) f.push_back(ConvexSet::singleton(p));
  for (auto &p : ys) t.push_back(ConvexSet::singleton(p));
  return {std::move(f), std::move(t)};
}

Configuration example_5_1_optimum() {
  return {{{7.0399, 5.2796}, {1.9216, 8.0031}, {-1.4238, 11.1827}, {-6.0103, 7.8565}},
          {{3, 3}, {5, 11}, {-2, 7}}};
}

Configuration example_5_2_optimum() {
  return {{{-2.4585, 0.6055, 1.2576}, {0.8422, 3.3061, 3.2974}, {3.3092, 0.5701, 1.4186}},
          {{-2, 0, -1}, {2, -2, -1}}};
}

} // namespace

TEST(Instance, RejectsEmptyAndMixedDimensions) {
  EXPECT_THROW(ProblemInstance({}, {ConvexSet::singleton({0, 0})}), Error);
  EXPECT_THROW(ProblemInstance({ConvexSet::singleton({0, 0})}, {}), Error);
  try {
    ProblemInstance({ConvexSet::singleton({0, 0})}, {ConvexSet::singleton({0, 0, 0})});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Instance, ExistenceNeedsOneBoundedSet) {
  const ProblemInstance unbounded({ConvexSet::halfspace({0, 1}, 0)}, {ConvexSet::halfspace({0, -1}, -3)});
  EXPECT_FALSE(unbounded.existence_guaranteed());
  const ProblemInstance ok({ConvexSet::halfspace({0, 1}, 0)}, {ConvexSet::ball({0, 5}, 1)});
  EXPECT_TRUE(ok.existence_guaranteed());
  EXPECT_FALSE(ok.all_bounded());
}

TEST(Objective, SinglePair) {
  const auto inst = points_instance({{0, 0}}, {{3, 4}});
  EXPECT_DOUBLE_EQ(objective(inst, {{{0, 0}}, {{3, 4}}}), 5.0);
}

TEST(Objective, AllPointsEqual) {
  const auto inst = points_instance({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}});
  EXPECT_DOUBLE_EQ(objective(inst, {{{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}}), 0.0);
}

TEST(Objective, ReferenceOptimaOfBundledExamples) {
  EXPECT_NEAR(objective(bundled_scene("example_5_1").instance(), example_5_1_optimum()), 79.113613, 1e-3);
  EXPECT_NEAR(objective(bundled_scene("example_5_2").instance(), example_5_2_optimum()), 30.691348, 1e-3);
}

TEST(Objective, ShapeMismatchThrows) {
  const auto inst = points_instance({{0, 0}}, {{3, 4}});
  try {
    objective(inst, {{{0, 0}, {1, 1}}, {{3, 4}}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
  EXPECT_THROW(objective(inst, {{{0, 0, 0}}, {{3, 4, 0}}}), Error);
}

TEST(Subgradient, UnitDirection) {
  const auto inst = points_instance({{0, 0}}, {{3, 4}});
  const auto g = subgradient(inst, {{{0, 0}}, {{3, 4}}});
  EXPECT_NEAR(g.xs[0][0], -0.6, 1e-15);
  EXPECT_NEAR(g.xs[0][1], -0.8, 1e-15);
  EXPECT_NEAR(g.ys[0][0], 0.6, 1e-15);
  EXPECT_NEAR(g.ys[0][1], 0.8, 1e-15);
}

TEST(Subgradient, CoincidentPairContributesZero) {
  const auto inst = points_instance({{2, 2}}, {{2, 2}});
  const auto g = subgradient(inst, {{{2, 2}}, {{2, 2}}});
  EXPECT_TRUE(is_zero(g.xs[0]));
  EXPECT_TRUE(is_zero(g.ys[0]));
}

TEST(Subgradient, OpposingDirectionsCancel) {
  const auto inst = points_instance({{0, 0}}, {{1, 0}, {-1, 0}});
  const auto g = subgradient(inst, {{{0, 0}}, {{1, 0}, {-1, 0}}});
  EXPECT_TRUE(is_zero(g.xs[0]));
}

TEST(Subgradient, NormBoundValues) {
  EXPECT_NEAR(subgradient_norm_bound(4, 3), std::sqrt(84.0), 1e-12);
  EXPECT_NEAR(subgradient_norm_bound(4, 3), 9.16515, 1e-5);
  EXPECT_NEAR(subgradient_norm_bound(1, 1), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(subgradient_norm_bound(3, 2), 5.47723, 1e-5);
  EXPECT_THROW(subgradient_norm_bound(0, 2), Error);
}

TEST(Subgradient, MatchesCentralDifferencesAwayFromCoincidence) {
  Gen gen(heron::testing::kSeed + 11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    const auto k = static_cast<std::size_t>(gen.integer(1, 4)), m = static_cast<std::size_t>(gen.integer(1, 4));
    const auto inst = gen.instance(k, m, n);
    const auto z = gen.configuration(k, m, n);
    const auto g = subgradient(inst, z);
    const double h = 1e-6;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        Configuration up = z, down = z;
        up.xs[i][c] += h;
        down.xs[i][c] -= h;
        EXPECT_NEAR(g.xs[i][c], (objective(inst, up) - objective(inst, down)) / (2 * h), 1e-5);
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t c = 0; c < n; ++c) {
        Configuration up = z, down = z;
        up.ys[j][c] += h;
        down.ys[j][c] -= h;
        EXPECT_NEAR(g.ys[j][c], (objective(inst, up) - objective(inst, down)) / (2 * h), 1e-5);
      }
    }
  }
}

TEST(Subgradient, InequalityHoldsOnRandomPairs) {
  Gen gen(heron::testing::kSeed + 12);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    const auto k = static_cast<std::size_t>(gen.integer(1, 5)), m = static_cast<std::size_t>(gen.integer(1, 5));
    const auto inst = gen.instance(k, m, n);
    const auto z = gen.configuration(k, m, n);
    const auto w = gen.configuration(k, m, n);
    const double slack = objective(inst, w) - objective(inst, z) - dot(subgradient(inst, z), w - z);
    worst = std::min(worst, slack);
  }
  EXPECT_GE(worst, -1e-9);
}

TEST(Subgradient, NormWithinBoundForAllSmallShapes) {
  Gen gen(heron::testing::kSeed + 13);
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::size_t m = 1; m <= 5; ++m) {
      const double bound = subgradient_norm_bound(k, m);
      for (int trial = 0; trial < 20; ++trial) {
        const auto inst = gen.instance(k, m, 2);
        auto z = gen.configuration(k, m, 2);
        // Collinear clusters push the norm toward the bound.
        if (trial % 2 == 0) {
          for (auto &x : z.xs) x = Point{-50.0 + gen.uniform(0, 1e-3), 0};
          for (auto &y : z.ys) y = Point{50.0, gen.uniform(0, 1e-3)};
        }
        EXPECT_LE(norm(subgradient(inst, z)), bound + 1e-12) << "k=" << k << " m=" << m;
      }
    }
  }
}

TEST(Objective, MidpointConvexityOnRandomScenes) {
  Gen gen(heron::testing::kSeed + 14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
    const auto k = static_cast<std::size_t>(gen.integer(1, 4)), m = static_cast<std::size_t>(gen.integer(1, 4));
    const auto inst = gen.instance(k, m, n);
    const auto a = gen.member(inst), b = gen.member(inst);
    EXPECT_LE(objective(inst, (a + b) * 0.5), 0.5 * (objective(inst, a) + objective(inst, b)) + 1e-9);
  }
}

TEST(Objective, TranslationInvariance) {
  Gen gen(heron::testing::kSeed + 15);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = gen.instance(3, 2, 2);
    const auto z = gen.member(inst);
    const Point shift = gen.point(2);
    Configuration moved = z;
    for (auto &x : moved.xs) x += shift;
    for (auto &y : moved.ys) y += shift;
    const auto tinst = translated(inst, shift);
    EXPECT_TRUE(is_feasible(tinst, moved, 1e-9));
    EXPECT_NEAR(objective(tinst, moved), objective(inst, z), 1e-9);
  }
}

TEST(Project, BlockwiseProjectionIsFeasible) {
  Gen gen(heron::testing::kSeed + 16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = gen.instance(3, 3, 3, false);
    const auto p = project(inst, gen.configuration(3, 3, 3));
    EXPECT_TRUE(is_feasible(inst, p));
  }
}

TEST(Feasibility, NamesFirstViolation) {
  const ProblemInstance inst({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({5, 0}, 1), ConvexSet::ball({0, 5}, 1)});
  const auto bad = find_infeasible(inst, {{{1, 0}}, {{4, 0}, {0, 0}}});
  ASSERT_TRUE(bad.has_value());
  EXPECT_TRUE(bad->target);
  EXPECT_EQ(bad->index, 1u);
  EXPECT_DOUBLE_EQ(bad->distance, 4.0);
  EXPECT_NE(describe(*bad).find("C_2"), std::string::npos);
}

TEST(Reduction, HalfspaceToSingleton) {
  const ProblemInstance inst({ConvexSet::halfspace({0, 1}, 0)}, {ConvexSet::singleton({0, 3})});
  const auto r = reduce_to_generalized_heron(inst, {0, 0});
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_EQ(r.ys[0], (Point{0, 3}));
}

TEST(Reduction, BallTargetRadial) {
  const ProblemInstance inst({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({5, 0}, 1)});
  const auto r = reduce_to_generalized_heron(inst, {0, 0});
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  EXPECT_EQ(r.ys[0], (Point{4, 0}));
}

TEST(Reduction, Errors) {
  const ProblemInstance two({ConvexSet::ball({0, 0}, 1), ConvexSet::ball({3, 0}, 1)}, {ConvexSet::ball({5, 0}, 1)});
  try {
    reduce_to_generalized_heron(two, {0, 0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedReduction);
  }
  const ProblemInstance one({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({5, 0}, 1)});
  try {
    reduce_to_generalized_heron(one, {3, 0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Reduction, MatchesGridMinimizationPerTarget) {
  // Each inner minimization over y_j is compared against a dense sample of C_j.
  Gen gen(heron::testing::kSeed + 17);
  const ProblemInstance inst({ConvexSet::box({0, 0}, Point{2, 1})},
                             {ConvexSet::ball({6, 1}, 1.5), ConvexSet::box({-5, 4}, Point{1, 2}),
                              ConvexSet::segment({1, -6}, {4, -3})});
  std::vector<std::vector<Point>> samples(inst.m());
  constexpr int kGrid = 400;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    const auto &c = inst.target(j);
    if (const auto *b = c.as<Ball>()) {
      for (int s = 0; s < kGrid * 8; ++s) {
        const double a = 2 * M_PI * s / (kGrid * 8);
        samples[j].push_back(b->center + Point{std::cos(a), std::sin(a)} * b->radius);
      }
    } else if (const auto *b = c.as<Box>()) {
      for (int s = 0; s <= kGrid; ++s)
        for (int r = 0; r <= kGrid; ++r)
          samples[j].push_back(b->center + Point{(2.0 * s / kGrid - 1) * b->half_widths[0],
                                                 (2.0 * r / kGrid - 1) * b->half_widths[1]});
    } else if (const auto *sg = c.as<Segment>()) {
      for (int s = 0; s <= kGrid * 8; ++s) samples[j].push_back(sg->a + (sg->b - sg->a) * (double(s) / (kGrid * 8)));
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Point x = gen.member(inst.feasible(0));
    double grid_value = 0.0;
    for (std::size_t j = 0; j < inst.m(); ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto &y : samples[j]) best = std::min(best, heron::distance(x, y));
      grid_value += best;
    }
    const double v = reduce_to_generalized_heron(inst, x).value;
    EXPECT_LE(v, grid_value + 1e-12);
    EXPECT_NEAR(v, grid_value, 0.02);
  }
}

TEST(Reduction, LowerBoundsObjectiveOverFeasibleTargets) {
  Gen gen(heron::testing::kSeed + 18);
  const auto inst = gen.instance(1, 4, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const Point x = gen.member(inst.feasible(0));
    const auto r = reduce_to_generalized_heron(inst, x);
    double expected = 0.0;
    for (const auto &c : inst.targets()) expected += distance(c, x);
    EXPECT_EQ(r.value, expected);
    for (int s = 0; s < 20; ++s) {
      Configuration z{{x}, {}};
      for (const auto &c : inst.targets()) z.ys.push_back(gen.member(c));
      EXPECT_LE(r.value, objective(inst, z) + 1e-12);
    }
  }
}
