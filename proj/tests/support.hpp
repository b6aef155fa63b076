#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "heron/convex_set.hpp"
#include "heron/problem.hpp"

namespace heron::testing {

inline constexpr std::uint64_t kSeed = 20251019;

class Gen {
public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Point point(std::size_t n, double spread = 10.0) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = uniform(-spread, spread);
    return p;
  }

  Point direction(std::size_t n) {
    Point d(n);
    do {
      for (std::size_t i = 0; i < n; ++i) d[i] = normal();
    } while (norm(d) < 1e-6);
    return d / norm(d);
  }

  ConvexSet shape(ShapeKind kind, std::size_t n, const Point &where) {
    switch (kind) {
    case ShapeKind::Ball: return ConvexSet::ball(where, uniform(0.3, 3.0));
    case ShapeKind::Box: {
      Point h(n);
      for (std::size_t i = 0; i < n; ++i) h[i] = uniform(0.3, 3.0);
      return ConvexSet::box(where, h);
    }
    case ShapeKind::Halfspace: return ConvexSet::halfspace(direction(n), dot(direction(n), where) + uniform(-2, 2));
    case ShapeKind::Segment: return ConvexSet::segment(where, where + direction(n) * uniform(0.5, 4.0));
    case ShapeKind::Singleton: return ConvexSet::singleton(where);
    }
    return ConvexSet::singleton(where);
  }

  ConvexSet shape(std::size_t n, bool bounded_only = false) {
    static constexpr ShapeKind all[] = {ShapeKind::Ball, ShapeKind::Box, ShapeKind::Halfspace, ShapeKind::Segment,
                                        ShapeKind::Singleton};
    static constexpr ShapeKind bounded[] = {ShapeKind::Ball, ShapeKind::Box, ShapeKind::Segment, ShapeKind::Singleton};
    const ShapeKind kind = bounded_only ? bounded[integer(0, 3)] : all[integer(0, 4)];
    return shape(kind, n, point(n));
  }

  /// A point of the set (not uniformly distributed; covers interior and boundary).
  Point member(const ConvexSet &set) {
    const std::size_t n = set.dim();
    if (const auto *b = set.as<Ball>()) {
      const double r = integer(0, 4) == 0 ? b->radius : b->radius * std::pow(uniform(0, 1), 1.0 / n);
      return b->center + direction(n) * r;
    }
    if (const auto *b = set.as<Box>()) {
      Point p = b->center;
      for (std::size_t i = 0; i < n; ++i) p[i] += uniform(-1, 1) * b->half_widths[i];
      if (integer(0, 3) == 0) {
        const std::size_t axis = static_cast<std::size_t>(integer(0, static_cast<int>(n) - 1));
        p[axis] = b->center[axis] + (integer(0, 1) ? 1 : -1) * b->half_widths[axis];
      }
      return p;
    }
    if (const auto *h = set.as<Halfspace>()) {
      Point p = project(set, point(n));
      return p - h->normal * (uniform(0, 3) * (integer(0, 3) == 0 ? 0.0 : 1.0) / norm(h->normal));
    }
    if (const auto *s = set.as<Segment>()) return s->a + (s->b - s->a) * uniform(0, 1);
    return set.as<Singleton>()->p;
  }

  ProblemInstance instance(std::size_t k, std::size_t m, std::size_t n, bool bounded_only = true) {
    std::vector<ConvexSet> f, t;
    for (std::size_t i = 0; i < k; ++i) f.push_back(shape(n, bounded_only));
    for (std::size_t j = 0; j < m; ++j) t.push_back(shape(n, bounded_only));
    return {std::move(f), std::move(t)};
  }

  Configuration member(const ProblemInstance &inst) {
    Configuration z;
    for (const auto &s : inst.feasible()) z.xs.push_back(member(s));
    for (const auto &s : inst.targets()) z.ys.push_back(member(s));
    return z;
  }

  /// Arbitrary (not necessarily feasible) configuration.
  Configuration configuration(std::size_t k, std::size_t m, std::size_t n) {
    Configuration z;
    for (std::size_t i = 0; i < k; ++i) z.xs.push_back(point(n));
    for (std::size_t j = 0; j < m; ++j) z.ys.push_back(point(n));
    return z;
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const Point &a, const Point &b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

} // namespace heron::testing
