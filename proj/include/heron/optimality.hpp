#pragma once

// First-order optimality certificate for separated sets. At an optimum there
// are normals n_{S_i} in N_{S_i}(x_i) and n_{C_j} in N_{C_j}(y_j) with
//   (1) sum_j unit(x_i - y_j) + n_{S_i} = 0
//   (2) sum_i unit(y_j - x_i) + n_{C_j} = 0
//   (3) sum_i n_{S_i} + sum_j n_{C_j} = 0.
// (1) and (2) determine the normals; the certificate checks they lie in the cones.

#include <algorithm>
#include <limits>
#include <vector>

#include "heron/convex_set.hpp"
#include "heron/error.hpp"
#include "heron/problem.hpp"

namespace heron {

inline constexpr double kCertificationTolerance = 1e-3;
inline constexpr double kBoundaryTolerance = 1e-6;

struct OptimalityReport {
  std::vector<double> o1_residuals; ///< distance of n_{S_i} to N_{S_i}(x_i)
  std::vector<double> o2_residuals; ///< distance of n_{C_j} to N_{C_j}(y_j)
  double o3_residual = 0.0;         ///< |sum n_{S_i} + sum n_{C_j}|
  Configuration implied_normals;    ///< xs: n_{S_i}, ys: n_{C_j}
  std::vector<bool> feasible_in_cone;
  std::vector<bool> target_in_cone;
  double min_pair_distance = std::numeric_limits<double>::infinity();
  double tol = kCertificationTolerance;
  bool passed = false;
};

inline OptimalityReport check_optimality(const ProblemInstance &inst, const Configuration &z,
                                         double tol = kCertificationTolerance) {
  check_shape(inst, z);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "certification tolerance must be positive");
  if (auto bad = find_infeasible(inst, z, tol))
    throw Error(ErrorKind::Infeasible, "certificate needs a feasible configuration: " + describe(*bad));

  OptimalityReport rep;
  rep.tol = tol;
  const std::size_t k = inst.k(), m = inst.m(), n = inst.dim();
  rep.implied_normals.xs.assign(k, Point(n));
  rep.implied_normals.ys.assign(m, Point(n));

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Point diff = z.xs[i] - z.ys[j];
      const double d = norm(diff);
      rep.min_pair_distance = std::min(rep.min_pair_distance, d);
      if (d <= tol) throw DegenerateConfiguration(i, j);
      const Point u = diff / d;
      rep.implied_normals.xs[i] -= u;
      rep.implied_normals.ys[j] += u;
    }
  }

  bool ok = true;
  Point balance(n);
  for (std::size_t i = 0; i < k; ++i) {
    const Point &normal = rep.implied_normals.xs[i];
    rep.o1_residuals.push_back(normal_cone_residual(inst.feasible(i), z.xs[i], normal, tol));
    const bool in = in_normal_cone(inst.feasible(i), z.xs[i], normal, tol);
    rep.feasible_in_cone.push_back(in);
    ok = ok && in;
    balance += normal;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const Point &normal = rep.implied_normals.ys[j];
    rep.o2_residuals.push_back(normal_cone_residual(inst.target(j), z.ys[j], normal, tol));
    const bool in = in_normal_cone(inst.target(j), z.ys[j], normal, tol);
    rep.target_in_cone.push_back(in);
    ok = ok && in;
    balance += normal;
  }
  rep.o3_residual = norm(balance);
  rep.passed = ok && rep.o3_residual <= tol * static_cast<double>(k + m);
  return rep;
}

struct BoundaryReport {
  std::vector<bool> feasible_on_boundary;
  std::vector<bool> target_on_boundary;

  bool all() const {
    return std::all_of(feasible_on_boundary.begin(), feasible_on_boundary.end(), [](bool b) { return b; }) &&
           std::all_of(target_on_boundary.begin(), target_on_boundary.end(), [](bool b) { return b; });
  }
};

/// Whether each point sits on its set's boundary. Advisory: minimizers lie on
/// boundaries only under a separation hypothesis that is not verified here.
inline BoundaryReport boundary_check(const ProblemInstance &inst, const Configuration &z,
                                     double tol = kBoundaryTolerance) {
  check_shape(inst, z);
  BoundaryReport rep;
  for (std::size_t i = 0; i < inst.k(); ++i)
    rep.feasible_on_boundary.push_back(boundary_distance(inst.feasible(i), z.xs[i]) <= tol);
  for (std::size_t j = 0; j < inst.m(); ++j)
    rep.target_on_boundary.push_back(boundary_distance(inst.target(j), z.ys[j]) <= tol);
  return rep;
}

} // namespace heron
