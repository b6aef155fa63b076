#pragma once

// The (k,m)-Heron problem: k feasible sets S_i, m target sets C_j, and the
// objective F(Z) = sum_i sum_j |x_i - y_j| over Z = (x_1..x_k, y_1..y_m).

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heron/convex_set.hpp"
#include "heron/error.hpp"
#include "heron/point.hpp"

namespace heron {

class ProblemInstance {
public:
  ProblemInstance(std::vector<ConvexSet> feasible, std::vector<ConvexSet> targets)
      : feasible_(std::move(feasible)), targets_(std::move(targets)) {
    if (feasible_.empty()) throw Error(ErrorKind::InvalidParameter, "need at least one feasible set");
    if (targets_.empty()) throw Error(ErrorKind::InvalidParameter, "need at least one target set");
    dim_ = feasible_.front().dim();
    auto check = [&](const std::vector<ConvexSet> &sets, const char *label) {
      for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i].dim() != dim_)
          throw Error(ErrorKind::DimensionMismatch,
                      std::string(label) + "[" + std::to_string(i) + "] has dimension " +
                          std::to_string(sets[i].dim()) + ", expected " + std::to_string(dim_));
    };
    check(feasible_, "feasible");
    check(targets_, "targets");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t k() const noexcept { return feasible_.size(); }
  std::size_t m() const noexcept { return targets_.size(); }
  const std::vector<ConvexSet> &feasible() const noexcept { return feasible_; }
  const std::vector<ConvexSet> &targets() const noexcept { return targets_; }
  const ConvexSet &feasible(std::size_t i) const { return feasible_.at(i); }
  const ConvexSet &target(std::size_t j) const { return targets_.at(j); }

  /// At least one bounded set guarantees a minimizer exists. Instances without
  /// one are still accepted; callers may surface this as a warning.
  bool existence_guaranteed() const {
    for (const auto &s : feasible_)
      if (s.is_bounded()) return true;
    for (const auto &s : targets_)
      if (s.is_bounded()) return true;
    return false;
  }

  bool all_bounded() const {
    for (const auto &s : feasible_)
      if (!s.is_bounded()) return false;
    for (const auto &s : targets_)
      if (!s.is_bounded()) return false;
    return true;
  }

private:
  std::size_t dim_ = 0;
  std::vector<ConvexSet> feasible_;
  std::vector<ConvexSet> targets_;
};

/// Block vector Z = (x_1..x_k, y_1..y_m). Also used for subgradients and
/// normal-vector collections, which share the same block layout.
struct Configuration {
  std::vector<Point> xs;
  std::vector<Point> ys;

  friend bool operator==(const Configuration &, const Configuration &) = default;

  Configuration &operator+=(const Configuration &o) {
    check_layout(o);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += o.xs[i];
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] += o.ys[j];
    return *this;
  }
  Configuration &operator-=(const Configuration &o) {
    check_layout(o);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] -= o.xs[i];
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] -= o.ys[j];
    return *this;
  }
  Configuration &operator*=(double s) {
    for (auto &x : xs) x *= s;
    for (auto &y : ys) y *= s;
    return *this;
  }
  friend Configuration operator+(Configuration a, const Configuration &b) { return a += b; }
  friend Configuration operator-(Configuration a, const Configuration &b) { return a -= b; }
  friend Configuration operator*(Configuration a, double s) { return a *= s; }
  friend Configuration operator*(double s, Configuration a) { return a *= s; }

  bool is_finite() const {
    for (const auto &x : xs)
      if (!x.is_finite()) return false;
    for (const auto &y : ys)
      if (!y.is_finite()) return false;
    return true;
  }

  void check_layout(const Configuration &o) const {
    if (o.xs.size() != xs.size() || o.ys.size() != ys.size())
      throw Error(ErrorKind::ShapeMismatch, "configurations have different block counts");
  }
};

using Subgradient = Configuration;

inline double dot(const Configuration &a, const Configuration &b) {
  a.check_layout(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.xs.size(); ++i) s += dot(a.xs[i], b.xs[i]);
  for (std::size_t j = 0; j < a.ys.size(); ++j) s += dot(a.ys[j], b.ys[j]);
  return s;
}
inline double squared_norm(const Configuration &a) { return dot(a, a); }
inline double norm(const Configuration &a) { return std::sqrt(squared_norm(a)); }

inline void check_shape(const ProblemInstance &inst, const Configuration &z) {
  if (z.xs.size() != inst.k() || z.ys.size() != inst.m())
    throw Error(ErrorKind::ShapeMismatch,
                "configuration has " + std::to_string(z.xs.size()) + "+" +
                    std::to_string(z.ys.size()) + " points, instance needs " +
                    std::to_string(inst.k()) + "+" + std::to_string(inst.m()));
  for (const auto &x : z.xs)
    if (x.dim() != inst.dim()) throw Error(ErrorKind::DimensionMismatch, "feasible point " + to_string(x));
  for (const auto &y : z.ys)
    if (y.dim() != inst.dim()) throw Error(ErrorKind::DimensionMismatch, "target point " + to_string(y));
}

struct FeasibilityViolation {
  bool target = false; // false: feasible set S_i, true: target set C_j
  std::size_t index = 0;
  double distance = 0.0;
};

/// First block (in x_1..x_k, y_1..y_m order) farther than `tol` from its set.
inline std::optional<FeasibilityViolation> find_infeasible(const ProblemInstance &inst,
                                                           const Configuration &z,
                                                           double tol = kDefaultTolerance) {
  check_shape(inst, z);
  for (std::size_t i = 0; i < inst.k(); ++i)
    if (double d = distance(inst.feasible(i), z.xs[i]); !(d <= tol)) return FeasibilityViolation{false, i, d};
  for (std::size_t j = 0; j < inst.m(); ++j)
    if (double d = distance(inst.target(j), z.ys[j]); !(d <= tol)) return FeasibilityViolation{true, j, d};
  return std::nullopt;
}

inline bool is_feasible(const ProblemInstance &inst, const Configuration &z,
                        double tol = kDefaultTolerance) {
  return !find_infeasible(inst, z, tol).has_value();
}

inline std::string describe(const FeasibilityViolation &v) {
  return std::string(v.target ? "y_" : "x_") + std::to_string(v.index + 1) + " is " +
         std::to_string(v.distance) + " away from " + (v.target ? "target set C_" : "feasible set S_") +
         std::to_string(v.index + 1);
}

inline double objective(const ProblemInstance &inst, const Configuration &z) {
  check_shape(inst, z);
  double f = 0.0;
  for (const auto &x : z.xs)
    for (const auto &y : z.ys) f += distance(x, y);
  return f;
}

/// k x m matrix of |x_i - y_j|.
inline std::vector<std::vector<double>> pairwise_distances(const ProblemInstance &inst,
                                                           const Configuration &z) {
  check_shape(inst, z);
  std::vector<std::vector<double>> out(inst.k(), std::vector<double>(inst.m()));
  for (std::size_t i = 0; i < inst.k(); ++i)
    for (std::size_t j = 0; j < inst.m(); ++j) out[i][j] = distance(z.xs[i], z.ys[j]);
  return out;
}

/// The subgradient with unit blocks u_ij = (x_i - y_j)/|x_i - y_j|, and the
/// zero vector for coincident pairs.
inline Subgradient subgradient(const ProblemInstance &inst, const Configuration &z) {
  check_shape(inst, z);
  Subgradient g{std::vector<Point>(inst.k(), Point(inst.dim())),
                std::vector<Point>(inst.m(), Point(inst.dim()))};
  for (std::size_t i = 0; i < inst.k(); ++i) {
    for (std::size_t j = 0; j < inst.m(); ++j) {
      Point diff = z.xs[i] - z.ys[j];
      const double n = norm(diff);
      if (n == 0.0) continue;
      diff /= n;
      g.xs[i] += diff;
      g.ys[j] -= diff;
    }
  }
  return g;
}

/// G = sqrt(k m (m + k)) bounds the norm of every subgradient of F.
inline double subgradient_norm_bound(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw Error(ErrorKind::InvalidParameter, "k and m must be positive");
  const double kd = static_cast<double>(k), md = static_cast<double>(m);
  return std::sqrt(kd * md * (md + kd));
}

struct HeronReduction {
  double value;
  std::vector<Point> ys;
};

/// For k = 1 and a fixed x in S_1, the inner minimization over each y_j is
/// solved by projection: y_j* = proj_{C_j}(x), value = sum_j d_{C_j}(x).
inline HeronReduction reduce_to_generalized_heron(const ProblemInstance &inst, const Point &x,
                                                  double tol = kDefaultTolerance) {
  if (inst.k() != 1)
    throw Error(ErrorKind::UnsupportedReduction,
                "reduction needs exactly one feasible set, instance has " + std::to_string(inst.k()));
  if (!contains(inst.feasible(0), x, tol))
    throw Error(ErrorKind::Precondition, "x = " + to_string(x) + " is not in S_1");
  HeronReduction out{0.0, {}};
  out.ys.reserve(inst.m());
  for (const auto &c : inst.targets()) {
    out.ys.push_back(project(c, x));
    out.value += distance(c, x);
  }
  return out;
}

/// Uniform translation of every set (used for invariance checks).
inline ProblemInstance translated(const ProblemInstance &inst, const Point &shift) {
  std::vector<ConvexSet> f, t;
  for (const auto &s : inst.feasible()) f.push_back(translated(s, shift));
  for (const auto &s : inst.targets()) t.push_back(translated(s, shift));
  return {std::move(f), std::move(t)};
}

inline ProblemInstance scaled(const ProblemInstance &inst, double factor) {
  std::vector<ConvexSet> f, t;
  for (const auto &s : inst.feasible()) f.push_back(scaled(s, factor));
  for (const auto &s : inst.targets()) t.push_back(scaled(s, factor));
  return {std::move(f), std::move(t)};
}

/// Blockwise projection onto A = S_1 x ... x S_k x C_1 x ... x C_m.
inline Configuration project(const ProblemInstance &inst, const Configuration &z) {
  check_shape(inst, z);
  Configuration out;
  out.xs.reserve(inst.k());
  out.ys.reserve(inst.m());
  for (std::size_t i = 0; i < inst.k(); ++i) out.xs.push_back(project(inst.feasible(i), z.xs[i]));
  for (std::size_t j = 0; j < inst.m(); ++j) out.ys.push_back(project(inst.target(j), z.ys[j]));
  return out;
}

} // namespace heron
