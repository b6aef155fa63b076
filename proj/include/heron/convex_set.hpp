#pragma once

// Closed convex shapes with closed-form Euclidean projection, distance,
// boundary classification and normal-cone membership.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "heron/error.hpp"
#include "heron/point.hpp"

namespace heron {

inline constexpr double kDefaultTolerance = 1e-9;

struct Ball {
  Point center;
  double radius;
};

/// Axis-aligned box: center +- half_widths[i] along axis i.
struct Box {
  Point center;
  Point half_widths;
};

/// {z : <normal, z> <= offset}
struct Halfspace {
  Point normal;
  double offset;
};

struct Segment {
  Point a;
  Point b;
};

struct Singleton {
  Point p;
};

namespace detail {
template <class... Fs> struct overloaded : Fs... { using Fs::operator()...; };
template <class... Fs> overloaded(Fs...) -> overloaded<Fs...>;

inline void require_finite(const Point &p, const char *what) {
  if (p.dim() == 0) throw Error(ErrorKind::InvalidSet, std::string(what) + " has dimension 0");
  if (!p.is_finite()) throw Error(ErrorKind::InvalidSet, std::string(what) + " is not finite");
}
} // namespace detail

enum class ShapeKind { Ball, Box, Halfspace, Segment, Singleton };

inline const char *to_string(ShapeKind kind) {
  switch (kind) {
  case ShapeKind::Ball: return "ball";
  case ShapeKind::Box: return "box";
  case ShapeKind::Halfspace: return "halfspace";
  case ShapeKind::Segment: return "segment";
  case ShapeKind::Singleton: return "singleton";
  }
  return "?";
}

/// Immutable, validated closed convex set. Construct through the named factories.
class ConvexSet {
public:
  using Shape = std::variant<Ball, Box, Halfspace, Segment, Singleton>;

  static ConvexSet ball(Point center, double radius) {
    detail::require_finite(center, "ball center");
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw Error(ErrorKind::InvalidSet, "ball radius must be positive and finite");
    return ConvexSet(Ball{std::move(center), radius});
  }

  static ConvexSet box(Point center, Point half_widths) {
    detail::require_finite(center, "box center");
    center.check_same(half_widths);
    for (double h : half_widths)
      if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorKind::InvalidSet, "box half-widths must be positive and finite");
    return ConvexSet(Box{std::move(center), std::move(half_widths)});
  }

  static ConvexSet box(Point center, double half_width) {
    Point hw(center.dim(), half_width);
    return box(std::move(center), std::move(hw));
  }

  static ConvexSet halfspace(Point normal, double offset) {
    detail::require_finite(normal, "halfspace normal");
    if (is_zero(normal)) throw Error(ErrorKind::InvalidSet, "halfspace normal must be nonzero");
    if (!std::isfinite(offset)) throw Error(ErrorKind::InvalidSet, "halfspace offset not finite");
    return ConvexSet(Halfspace{std::move(normal), offset});
  }

  static ConvexSet segment(Point a, Point b) {
    detail::require_finite(a, "segment endpoint");
    detail::require_finite(b, "segment endpoint");
    a.check_same(b);
    if (a == b) throw Error(ErrorKind::InvalidSet, "segment endpoints must differ");
    return ConvexSet(Segment{std::move(a), std::move(b)});
  }

  static ConvexSet singleton(Point p) {
    detail::require_finite(p, "singleton point");
    return ConvexSet(Singleton{std::move(p)});
  }

  const Shape &shape() const noexcept { return shape_; }
  ShapeKind kind() const noexcept { return static_cast<ShapeKind>(shape_.index()); }

  template <class T> const T *as() const noexcept { return std::get_if<T>(&shape_); }

  std::size_t dim() const {
    return std::visit(detail::overloaded{
                          [](const Ball &s) { return s.center.dim(); },
                          [](const Box &s) { return s.center.dim(); },
                          [](const Halfspace &s) { return s.normal.dim(); },
                          [](const Segment &s) { return s.a.dim(); },
                          [](const Singleton &s) { return s.p.dim(); },
                      },
                      shape_);
  }

  bool is_bounded() const noexcept { return kind() != ShapeKind::Halfspace; }

  friend bool operator==(const ConvexSet &a, const ConvexSet &b) {
    return std::visit(
        [&](const auto &sa) {
          using T = std::decay_t<decltype(sa)>;
          const T *sb = b.as<T>();
          if (!sb) return false;
          if constexpr (std::is_same_v<T, Ball>) return sa.center == sb->center && sa.radius == sb->radius;
          else if constexpr (std::is_same_v<T, Box>) return sa.center == sb->center && sa.half_widths == sb->half_widths;
          else if constexpr (std::is_same_v<T, Halfspace>) return sa.normal == sb->normal && sa.offset == sb->offset;
          else if constexpr (std::is_same_v<T, Segment>) return sa.a == sb->a && sa.b == sb->b;
          else return sa.p == sb->p;
        },
        a.shape_);
  }

private:
  explicit ConvexSet(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

namespace detail {
inline void check_dim(const ConvexSet &set, const Point &z) {
  if (set.dim() != z.dim())
    throw Error(ErrorKind::DimensionMismatch, "set has dimension " + std::to_string(set.dim()) +
                                                  ", point has dimension " +
                                                  std::to_string(z.dim()));
}

inline double segment_parameter(const Segment &s, const Point &z) {
  const Point d = s.b - s.a;
  return std::clamp(dot(z - s.a, d) / squared_norm(d), 0.0, 1.0);
}
} // namespace detail

/// Unique nearest point of `set` to `z`.
inline Point project(const ConvexSet &set, const Point &z) {
  detail::check_dim(set, z);
  return std::visit(
      detail::overloaded{
          [&](const Ball &s) {
            Point d = z - s.center;
            const double n = norm(d);
            if (n <= s.radius) return z;
            return s.center + d * s.radius / n;
          },
          [&](const Box &s) {
            Point out = z;
            for (std::size_t i = 0; i < z.dim(); ++i)
              out[i] = std::clamp(z[i], s.center[i] - s.half_widths[i], s.center[i] + s.half_widths[i]);
            return out;
          },
          [&](const Halfspace &s) {
            const double excess = dot(s.normal, z) - s.offset;
            if (excess <= 0.0) return z;
            return z - s.normal * (excess / squared_norm(s.normal));
          },
          [&](const Segment &s) { return s.a + (s.b - s.a) * detail::segment_parameter(s, z); },
          [&](const Singleton &s) { return s.p; },
      },
      set.shape());
}

inline double distance(const ConvexSet &set, const Point &z) {
  detail::check_dim(set, z);
  if (const auto *h = set.as<Halfspace>())
    return std::max(0.0, dot(h->normal, z) - h->offset) / norm(h->normal);
  return distance(z, project(set, z));
}

inline bool contains(const ConvexSet &set, const Point &z, double tol = kDefaultTolerance) {
  return distance(set, z) <= tol;
}

/// Distance from `z` to the topological boundary of `set` (for z inside or outside).
/// Sets with empty interior (segments and singletons in n >= 2) are all boundary.
inline double boundary_distance(const ConvexSet &set, const Point &z) {
  detail::check_dim(set, z);
  return std::visit(
      detail::overloaded{
          [&](const Ball &s) { return std::abs(distance(z, s.center) - s.radius); },
          [&](const Box &s) {
            const double outside = distance(set, z);
            if (outside > 0.0) return outside;
            double slack = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < z.dim(); ++i)
              slack = std::min(slack, s.half_widths[i] - std::abs(z[i] - s.center[i]));
            return slack;
          },
          [&](const Halfspace &s) { return std::abs(dot(s.normal, z) - s.offset) / norm(s.normal); },
          [&](const Segment &s) {
            if (z.dim() == 1 && contains(set, z, 0.0))
              return std::min(std::abs(z[0] - s.a[0]), std::abs(z[0] - s.b[0]));
            return distance(set, z);
          },
          [&](const Singleton &) { return distance(set, z); },
      },
      set.shape());
}

/// Euclidean distance from `v` to the normal cone N_set(base). Faces within
/// `face_tol` of `base` count as active. Assumes base lies in the set.
inline double normal_cone_residual(const ConvexSet &set, const Point &base, const Point &v,
                                   double face_tol = kDefaultTolerance) {
  detail::check_dim(set, base);
  detail::check_dim(set, v);
  // Distance from v to the ray {lambda * dir : lambda >= 0}.
  auto ray_residual = [&](const Point &dir) {
    const Point u = dir / norm(dir);
    const double along = dot(v, u);
    return along >= 0.0 ? norm(v - u * along) : norm(v);
  };
  return std::visit(
      detail::overloaded{
          [&](const Ball &s) {
            const Point radial = base - s.center;
            const double r0 = norm(radial);
            if (r0 >= s.radius - face_tol && r0 > 0.0) return ray_residual(radial);
            return norm(v);
          },
          [&](const Box &s) {
            double sq = 0.0;
            for (std::size_t i = 0; i < v.dim(); ++i) {
              const bool upper = base[i] >= s.center[i] + s.half_widths[i] - face_tol;
              const bool lower = base[i] <= s.center[i] - s.half_widths[i] + face_tol;
              double r = v[i];
              if (upper && !lower) r = std::min(v[i], 0.0);
              else if (lower && !upper) r = std::max(v[i], 0.0);
              else if (upper && lower) r = 0.0;
              sq += r * r;
            }
            return std::sqrt(sq);
          },
          [&](const Halfspace &s) {
            const double gap = s.offset - dot(s.normal, base);
            if (gap <= face_tol * norm(s.normal)) return ray_residual(s.normal);
            return norm(v);
          },
          [&](const Segment &s) {
            const Point d = s.b - s.a;
            const double along = dot(v, d) / norm(d);
            if (distance(base, s.a) <= face_tol) return std::max(0.0, along);
            if (distance(base, s.b) <= face_tol) return std::max(0.0, -along);
            return std::abs(along);
          },
          [&](const Singleton &) { return 0.0; },
      },
      set.shape());
}

/// Decides v in N_set(base) up to tolerance. Ball, box and halfspace use the
/// explicit cone (residual <= tol * max(1, |v|)); segments and singletons use
/// <v, y - base> <= tol * |v| over their extreme points.
inline bool in_normal_cone(const ConvexSet &set, const Point &base, const Point &v,
                           double tol = kDefaultTolerance) {
  detail::check_dim(set, base);
  detail::check_dim(set, v);
  if (!contains(set, base, tol))
    throw Error(ErrorKind::Precondition, "normal-cone base point " + to_string(base) +
                                             " is not in the " + to_string(set.kind()));
  const double vn = norm(v);
  if (const auto *s = set.as<Segment>()) {
    return dot(v, s->a - base) <= tol * vn && dot(v, s->b - base) <= tol * vn;
  }
  if (const auto *s = set.as<Singleton>()) return dot(v, s->p - base) <= tol * vn;
  return normal_cone_residual(set, base, v, tol) <= tol * std::max(1.0, vn);
}

/// Subdifferential of the distance function d_set at a point.
/// Outside the set it is the single unit vector (z - proj(z)) / d(z);
/// inside it is N_set(z) intersected with the closed unit ball.
class DistanceSubdifferential {
public:
  DistanceSubdifferential(ConvexSet set, Point base, std::optional<Point> gradient)
      : set_(std::move(set)), base_(std::move(base)), gradient_(std::move(gradient)) {}

  bool is_singleton() const noexcept { return gradient_.has_value(); }
  const std::optional<Point> &gradient() const noexcept { return gradient_; }
  const Point &base() const noexcept { return base_; }

  bool contains(const Point &v, double tol = kDefaultTolerance) const {
    if (gradient_) return distance(v, *gradient_) <= tol;
    return norm(v) <= 1.0 + tol && in_normal_cone(set_, base_, v, tol);
  }

private:
  ConvexSet set_;
  Point base_;
  std::optional<Point> gradient_;
};

inline DistanceSubdifferential subdifferential_distance(const ConvexSet &set, const Point &z) {
  const Point p = project(set, z);
  const double d = distance(z, p);
  if (d > 0.0) return {set, z, (z - p) / d};
  return {set, z, std::nullopt};
}

/// Largest distance between two points of the set; infinite when unbounded.
inline double diameter(const ConvexSet &set) {
  return std::visit(detail::overloaded{
                        [](const Ball &s) { return 2.0 * s.radius; },
                        [](const Box &s) { return 2.0 * norm(s.half_widths); },
                        [](const Halfspace &) { return std::numeric_limits<double>::infinity(); },
                        [](const Segment &s) { return distance(s.a, s.b); },
                        [](const Singleton &) { return 0.0; },
                    },
                    set.shape());
}

/// A representative point: center for balls and boxes, midpoint for segments,
/// the point itself for singletons, the projection of the origin for halfspaces.
inline Point anchor(const ConvexSet &set) {
  return std::visit(detail::overloaded{
                        [](const Ball &s) { return s.center; },
                        [](const Box &s) { return s.center; },
                        [&](const Halfspace &s) { return project(set, Point(s.normal.dim())); },
                        [](const Segment &s) { return (s.a + s.b) * 0.5; },
                        [](const Singleton &s) { return s.p; },
                    },
                    set.shape());
}

inline ConvexSet translated(const ConvexSet &set, const Point &shift) {
  detail::check_dim(set, shift);
  return std::visit(
      detail::overloaded{
          [&](const Ball &s) { return ConvexSet::ball(s.center + shift, s.radius); },
          [&](const Box &s) { return ConvexSet::box(s.center + shift, s.half_widths); },
          [&](const Halfspace &s) { return ConvexSet::halfspace(s.normal, s.offset + dot(s.normal, shift)); },
          [&](const Segment &s) { return ConvexSet::segment(s.a + shift, s.b + shift); },
          [&](const Singleton &s) { return ConvexSet::singleton(s.p + shift); },
      },
      set.shape());
}

inline ConvexSet scaled(const ConvexSet &set, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidParameter, "scale factor must be positive");
  return std::visit(
      detail::overloaded{
          [&](const Ball &s) { return ConvexSet::ball(s.center * factor, s.radius * factor); },
          [&](const Box &s) { return ConvexSet::box(s.center * factor, s.half_widths * factor); },
          [&](const Halfspace &s) { return ConvexSet::halfspace(s.normal, s.offset * factor); },
          [&](const Segment &s) { return ConvexSet::segment(s.a * factor, s.b * factor); },
          [&](const Singleton &s) { return ConvexSet::singleton(s.p * factor); },
      },
      set.shape());
}

} // namespace heron
