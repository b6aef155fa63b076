#pragma once

// Brute-force reference minimizer for small bounded instances.
//
// Every set is replaced by a finite sample (boundary grid, optionally the
// anchor point and an interior lattice) and F is minimized over the product
// of the samples. Once all points on one side are fixed, F separates over the
// points of the other side, so only the cheaper side's product is enumerated
// and each point of the other side is minimized independently. The result is
// the exact minimum over the product grid. Refinement rounds repeat the search
// over projected local lattices around the incumbent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <numbers>
#include <set>
#include <vector>

#include "heron/convex_set.hpp"
#include "heron/error.hpp"
#include "heron/problem.hpp"

namespace heron {

struct GridSpec {
  int density = 64;               ///< boundary samples per full turn of a cross-section
  int refine_rounds = 3;
  std::int64_t budget = 10'000'000; ///< max partial objective evaluations per search
  bool include_center = true;
  int interior_density = 0;       ///< lattice points per axis inside each set; 0 = none

  void validate() const {
    if (density < 8) throw Error(ErrorKind::InvalidParameter, "grid density must be >= 8");
    if (refine_rounds < 0) throw Error(ErrorKind::InvalidParameter, "refinement rounds must be >= 0");
    if (budget < 1) throw Error(ErrorKind::InvalidParameter, "budget must be positive");
    if (interior_density != 0 && interior_density < 2)
      throw Error(ErrorKind::InvalidParameter, "interior density must be 0 or >= 2");
  }
};

/// Finite sample of one set.
struct SetSample {
  std::vector<Point> points;
  double cell = 0.0;       ///< coarsest spacing among the sampling families
  double resolution = 0.0; ///< finest spacing among the sampling families
};

struct OracleResult {
  double value = std::numeric_limits<double>::infinity();
  Configuration config;
  double cell_diameter = 0.0;          ///< largest sample spacing of the final search
  double coarse_cell_diameter = 0.0;   ///< largest sample spacing of the coarse grid
  std::vector<double> round_values;    ///< coarse value, then one per refinement round
  std::int64_t evaluations = 0;
  bool enumerated_targets = false;
  int coarse_density = 0;              ///< density used on the enumerated side
};

struct ProbeResult {
  std::size_t count = 0;
  double min_value = 0.0;
  std::vector<Configuration> representatives;
};

namespace oracle_detail {

class PointSet {
public:
  void add(const Point &p) {
    if (seen_.insert(p.vec()).second) points_.push_back(p);
  }
  std::vector<Point> take() { return std::move(points_); }

private:
  std::set<std::vector<double>> seen_;
  std::vector<Point> points_;
};

inline int box_intervals(int density) { return std::max(2, (density + 3) / 4); }

/// All lattice points of the box [lo, hi] with `q` points per axis, filtered by `keep`.
template <class Keep>
void lattice(const Point &lo, const Point &hi, int q, Keep &&keep) {
  const std::size_t n = lo.dim();
  std::vector<int> idx(n, 0);
  Point p(n);
  while (true) {
    for (std::size_t a = 0; a < n; ++a)
      p[a] = q == 1 ? (lo[a] + hi[a]) / 2 : lo[a] + (hi[a] - lo[a]) * idx[a] / (q - 1);
    keep(p, idx);
    std::size_t a = 0;
    while (a < n && ++idx[a] == q) idx[a++] = 0;
    if (a == n) break;
  }
}

inline SetSample sample_boundary(const ConvexSet &set, int density) {
  const std::size_t n = set.dim();
  SetSample out;
  PointSet ps;
  if (const auto *b = set.as<Ball>()) {
    if (n == 1) {
      ps.add(b->center - Point{b->radius});
      ps.add(b->center + Point{b->radius});
      out.cell = 2.0 * b->radius;
    } else if (n == 2) {
      for (int t = 0; t < density; ++t) {
        const double th = 2.0 * std::numbers::pi * t / density;
        ps.add(Point{b->center[0] + b->radius * std::cos(th), b->center[1] + b->radius * std::sin(th)});
      }
      out.cell = 2.0 * std::numbers::pi * b->radius / density;
    } else if (n == 3) {
      const int rings = std::max(2, density / 2);
      for (int i = 0; i <= rings; ++i) {
        const double phi = std::numbers::pi * i / rings;
        const int around = (i == 0 || i == rings) ? 1 : density;
        for (int t = 0; t < around; ++t) {
          const double th = 2.0 * std::numbers::pi * t / density;
          ps.add(Point{b->center[0] + b->radius * std::sin(phi) * std::cos(th),
                       b->center[1] + b->radius * std::sin(phi) * std::sin(th),
                       b->center[2] + b->radius * std::cos(phi)});
        }
      }
      out.cell = std::max(2.0 * std::numbers::pi * b->radius / density,
                          std::numbers::pi * b->radius / rings);
    } else {
      throw Error(ErrorKind::Unsupported, "oracle supports balls in dimension <= 3 only");
    }
  } else if (const auto *b = set.as<Box>()) {
    if (n > 3) throw Error(ErrorKind::Unsupported, "oracle supports boxes in dimension <= 3 only");
    const int q = box_intervals(density);
    lattice(b->center - b->half_widths, b->center + b->half_widths, q + 1,
            [&](const Point &p, const std::vector<int> &idx) {
              if (std::any_of(idx.begin(), idx.end(), [&](int i) { return i == 0 || i == q; })) ps.add(p);
            });
    double widest = 0.0;
    for (double h : b->half_widths) widest = std::max(widest, 2.0 * h);
    out.cell = widest / q;
  } else if (const auto *s = set.as<Segment>()) {
    for (int t = 0; t <= density; ++t) ps.add(s->a + (s->b - s->a) * (static_cast<double>(t) / density));
    out.cell = distance(s->a, s->b) / density;
  } else if (const auto *s = set.as<Singleton>()) {
    ps.add(s->p);
    out.cell = 0.0;
  } else {
    throw Error(ErrorKind::Unsupported, "oracle needs bounded sets; halfspaces cannot be sampled");
  }
  out.points = ps.take();
  out.resolution = out.cell;
  return out;
}

inline SetSample sample_set(const ConvexSet &set, int density, int interior_density, bool include_center) {
  SetSample out = sample_boundary(set, density);
  const bool solid = set.as<Ball>() || set.as<Box>();
  if (include_center && solid) {
    const Point c = anchor(set);
    if (std::find(out.points.begin(), out.points.end(), c) == out.points.end()) out.points.push_back(c);
  }
  if (interior_density >= 2 && solid) {
    Point lo, hi;
    if (const auto *b = set.as<Ball>()) {
      lo = b->center - Point(set.dim(), b->radius);
      hi = b->center + Point(set.dim(), b->radius);
    } else {
      const auto *x = set.as<Box>();
      lo = x->center - x->half_widths;
      hi = x->center + x->half_widths;
    }
    PointSet ps;
    for (const auto &p : out.points) ps.add(p);
    lattice(lo, hi, interior_density, [&](const Point &p, const std::vector<int> &) {
      if (contains(set, p, 0.0)) ps.add(p);
    });
    out.points = ps.take();
    double widest = 0.0;
    for (std::size_t a = 0; a < lo.dim(); ++a) widest = std::max(widest, hi[a] - lo[a]);
    const double spacing = widest / (interior_density - 1);
    out.cell = std::max(out.cell, spacing);
    out.resolution = std::min(out.resolution, spacing);
  }
  return out;
}

/// Projected lattice of `q` points per axis spanning +-half around `center`.
inline SetSample local_sample(const ConvexSet &set, const Point &center, double half, int q) {
  PointSet ps;
  ps.add(center);
  lattice(center - Point(set.dim(), half), center + Point(set.dim(), half), q,
          [&](const Point &p, const std::vector<int> &) { ps.add(project(set, p)); });
  SetSample out;
  out.points = ps.take();
  out.cell = 2.0 * half / (q - 1);
  out.resolution = out.cell;
  return out;
}

inline double product_size(const std::vector<SetSample> &side) {
  double p = 1.0;
  for (const auto &s : side) p *= static_cast<double>(s.points.size());
  return p;
}

inline double total_size(const std::vector<SetSample> &side) {
  double t = 0.0;
  for (const auto &s : side) t += static_cast<double>(s.points.size());
  return t;
}

/// Work of enumerating `enumerated` and minimizing `other` pointwise.
inline double search_cost(const std::vector<SetSample> &enumerated, const std::vector<SetSample> &other) {
  return product_size(enumerated) * total_size(other);
}

struct Search {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> enum_choice;
  std::vector<std::size_t> other_choice;
  std::int64_t evaluations = 0;
};

/// Exact minimum over enumerated-side product x other-side product. Ties keep
/// the first combination in mixed-radix order (first index fastest).
inline Search exhaustive(const std::vector<SetSample> &enumerated, const std::vector<SetSample> &other) {
  Search best;
  std::vector<std::size_t> idx(enumerated.size(), 0);
  std::vector<std::size_t> other_pick(other.size(), 0);
  while (true) {
    double total = 0.0;
    for (std::size_t b = 0; b < other.size(); ++b) {
      double bmin = std::numeric_limits<double>::infinity();
      std::size_t barg = 0;
      const auto &pts = other[b].points;
      for (std::size_t s = 0; s < pts.size(); ++s) {
        double v = 0.0;
        for (std::size_t e = 0; e < enumerated.size(); ++e) v += distance(pts[s], enumerated[e].points[idx[e]]);
        if (v < bmin) {
          bmin = v;
          barg = s;
        }
      }
      best.evaluations += static_cast<std::int64_t>(pts.size());
      total += bmin;
      other_pick[b] = barg;
    }
    if (total < best.value) {
      best.value = total;
      best.enum_choice = idx;
      best.other_choice = other_pick;
    }
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == enumerated[a].points.size()) idx[a++] = 0;
    if (a == idx.size()) break;
  }
  return best;
}

inline void require_oracle_instance(const ProblemInstance &inst) {
  if (!inst.all_bounded())
    throw Error(ErrorKind::Unsupported, "oracle needs every set bounded");
  if (inst.dim() > 3) throw Error(ErrorKind::Unsupported, "oracle supports dimension <= 3 only");
}

struct CoarseGrid {
  std::vector<SetSample> feasible;
  std::vector<SetSample> targets;
  bool enumerate_targets = false;
  int density = 0;
};

inline std::vector<SetSample> sample_all(const std::vector<ConvexSet> &sets, int density,
                                         int interior_density, bool include_center) {
  std::vector<SetSample> out;
  for (const auto &s : sets) out.push_back(sample_set(s, density, interior_density, include_center));
  return out;
}

/// Lower bound on the number of points sample_set produces: the boundary
/// families, which contain no duplicates.
inline double boundary_count(const ConvexSet &set, int density) {
  const int n = static_cast<int>(set.dim());
  double c = 1.0;
  if (set.as<Ball>()) {
    if (n == 1) c = 2.0;
    else if (n == 2) c = density;
    else c = (std::max(2, density / 2) - 1.0) * density + 2.0;
  } else if (set.as<Box>()) {
    const int q = box_intervals(density);
    c = std::pow(q + 1.0, n) - std::pow(q - 1.0, n);
  } else if (set.as<Segment>()) {
    c = density + 1.0;
  }
  return c;
}

inline double cost_lower_bound(const std::vector<ConvexSet> &enumerated, int enum_density,
                               const std::vector<ConvexSet> &other, int other_density) {
  double prod = 1.0, total = 0.0;
  for (const auto &s : enumerated) prod *= boundary_count(s, enum_density);
  for (const auto &s : other) total += boundary_count(s, other_density);
  return prod * total;
}

/// Full-density grid on the pointwise side; the enumerated side is thinned
/// (never below density 8) until the search fits the budget. Grids whose
/// cost provably exceeds the budget are never built.
inline CoarseGrid build_coarse_grid(const ProblemInstance &inst, const GridSpec &grid) {
  const double budget = static_cast<double>(grid.budget);
  std::optional<std::vector<SetSample>> full_f, full_t;
  auto full = [&](std::optional<std::vector<SetSample>> &cache, const std::vector<ConvexSet> &sets) {
    if (!cache) cache = sample_all(sets, grid.density, grid.interior_density, grid.include_center);
    return *cache;
  };
  double cheapest = std::numeric_limits<double>::infinity();
  for (int d = grid.density; d >= 8; d = d > 8 ? std::max(8, d * 3 / 4) : 7) {
    int interior = grid.interior_density;
    if (interior >= 2 && d != grid.density) interior = std::max(3, (interior * d / grid.density) | 1);
    const double est_f = cost_lower_bound(inst.feasible(), d, inst.targets(), grid.density);
    const double est_t = cost_lower_bound(inst.targets(), d, inst.feasible(), grid.density);
    if (est_f > budget && est_t > budget) {
      cheapest = std::min({cheapest, est_f, est_t});
      continue;
    }
    const auto thin = [&](const std::vector<ConvexSet> &sets, std::optional<std::vector<SetSample>> &cache) {
      return d == grid.density ? full(cache, sets) : sample_all(sets, d, interior, grid.include_center);
    };
    std::optional<std::vector<SetSample>> thin_f, thin_t;
    double cost_f = std::numeric_limits<double>::infinity(), cost_t = cost_f;
    if (est_f <= budget) {
      thin_f = thin(inst.feasible(), full_f);
      cost_f = search_cost(*thin_f, full(full_t, inst.targets()));
    }
    if (est_t <= budget) {
      thin_t = thin(inst.targets(), full_t);
      cost_t = search_cost(*thin_t, full(full_f, inst.feasible()));
    }
    cheapest = std::min({cheapest, cost_f, cost_t});
    if (cost_f <= budget && cost_f <= cost_t) return {std::move(*thin_f), full(full_t, inst.targets()), false, d};
    if (cost_t <= budget) return {full(full_f, inst.feasible()), std::move(*thin_t), true, d};
  }
  throw Error(ErrorKind::BudgetExceeded,
              "product grid needs at least " + std::to_string(static_cast<long long>(cheapest)) +
                  " evaluations, budget is " + std::to_string(grid.budget) +
                  "; lower --density or raise the budget");
}

inline double max_cell(const std::vector<SetSample> &a, const std::vector<SetSample> &b) {
  double c = 0.0;
  for (const auto &s : a) c = std::max(c, s.cell);
  for (const auto &s : b) c = std::max(c, s.cell);
  return c;
}

inline Configuration assemble(const std::vector<SetSample> &feasible, const std::vector<SetSample> &targets,
                              bool enumerated_targets, const Search &s) {
  Configuration z;
  const auto &f_choice = enumerated_targets ? s.other_choice : s.enum_choice;
  const auto &t_choice = enumerated_targets ? s.enum_choice : s.other_choice;
  for (std::size_t i = 0; i < feasible.size(); ++i) z.xs.push_back(feasible[i].points[f_choice[i]]);
  for (std::size_t j = 0; j < targets.size(); ++j) z.ys.push_back(targets[j].points[t_choice[j]]);
  return z;
}

inline Search run_search(const std::vector<SetSample> &feasible, const std::vector<SetSample> &targets,
                         bool enumerate_targets) {
  return enumerate_targets ? exhaustive(targets, feasible) : exhaustive(feasible, targets);
}

} // namespace oracle_detail

/// Minimum of F over a product grid of set samples, refined around the
/// incumbent. The value is an upper bound on the true optimum.
inline OracleResult brute_force_min(const ProblemInstance &inst, const GridSpec &grid = {}) {
  using namespace oracle_detail;
  grid.validate();
  require_oracle_instance(inst);

  CoarseGrid coarse = build_coarse_grid(inst, grid);
  Search s = run_search(coarse.feasible, coarse.targets, coarse.enumerate_targets);

  OracleResult out;
  out.value = s.value;
  out.config = assemble(coarse.feasible, coarse.targets, coarse.enumerate_targets, s);
  out.evaluations = s.evaluations;
  out.enumerated_targets = coarse.enumerate_targets;
  out.coarse_density = coarse.density;
  out.coarse_cell_diameter = max_cell(coarse.feasible, coarse.targets);
  out.cell_diameter = out.coarse_cell_diameter;
  out.round_values.push_back(out.value);

  std::vector<double> half_f, half_t;
  for (const auto &x : coarse.feasible) half_f.push_back(x.cell);
  for (const auto &y : coarse.targets) half_t.push_back(y.cell);

  const double budget = static_cast<double>(grid.budget);
  for (int round = 0; round < grid.refine_rounds; ++round) {
    std::vector<SetSample> lf, lt;
    int q = inst.dim() <= 2 ? 9 : 5;
    for (; q >= 3; q -= 2) {
      lf.clear();
      lt.clear();
      for (std::size_t i = 0; i < inst.k(); ++i) lf.push_back(local_sample(inst.feasible(i), out.config.xs[i], half_f[i], q));
      for (std::size_t j = 0; j < inst.m(); ++j) lt.push_back(local_sample(inst.target(j), out.config.ys[j], half_t[j], q));
      if (std::min(search_cost(lf, lt), search_cost(lt, lf)) <= budget) break;
    }
    if (q < 3) break;
    const bool enum_t = search_cost(lt, lf) < search_cost(lf, lt);
    Search r = run_search(lf, lt, enum_t);
    out.evaluations += r.evaluations;
    // The incumbent is part of every local sample, so r.value <= out.value.
    if (r.value <= out.value) {
      out.value = r.value;
      out.config = assemble(lf, lt, enum_t, r);
    }
    out.round_values.push_back(out.value);
    for (auto &h : half_f) h = 2.0 * h / (q - 1);
    for (auto &h : half_t) h = 2.0 * h / (q - 1);
    out.cell_diameter = max_cell(lf, lt);
  }
  return out;
}

/// Number of distinct coarse-grid configurations within `tol` of the coarse
/// grid minimum. Configurations closer than two grid cells (per point) are
/// merged. A count above one signals non-uniqueness at grid scale.
inline ProbeResult non_uniqueness_probe(const ProblemInstance &inst, const GridSpec &grid, double tol) {
  using namespace oracle_detail;
  grid.validate();
  require_oracle_instance(inst);
  if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidParameter, "probe tolerance must be >= 0");

  CoarseGrid coarse = build_coarse_grid(inst, grid);
  const Search best = run_search(coarse.feasible, coarse.targets, coarse.enumerate_targets);
  const auto &enumerated = coarse.enumerate_targets ? coarse.targets : coarse.feasible;
  const auto &other = coarse.enumerate_targets ? coarse.feasible : coarse.targets;
  const double threshold = best.value + tol;

  ProbeResult out;
  out.min_value = best.value;

  std::vector<double> merge_radius;
  for (const auto &s : coarse.feasible) merge_radius.push_back(2.0 * s.resolution);
  for (const auto &s : coarse.targets) merge_radius.push_back(2.0 * s.resolution);

  auto consider = [&](const Configuration &z) {
    for (const auto &rep : out.representatives) {
      bool same = true;
      for (std::size_t i = 0; i < z.xs.size() && same; ++i) same = distance(z.xs[i], rep.xs[i]) <= merge_radius[i];
      for (std::size_t j = 0; j < z.ys.size() && same; ++j)
        same = distance(z.ys[j], rep.ys[j]) <= merge_radius[z.xs.size() + j];
      if (same) return;
    }
    out.representatives.push_back(z);
  };

  std::int64_t work = 0;
  std::vector<std::size_t> idx(enumerated.size(), 0);
  std::vector<std::vector<double>> values(other.size());
  std::vector<double> mins(other.size());
  while (true) {
    double floor_total = 0.0;
    for (std::size_t b = 0; b < other.size(); ++b) {
      const auto &pts = other[b].points;
      values[b].assign(pts.size(), 0.0);
      for (std::size_t s = 0; s < pts.size(); ++s)
        for (std::size_t e = 0; e < enumerated.size(); ++e) values[b][s] += distance(pts[s], enumerated[e].points[idx[e]]);
      mins[b] = *std::min_element(values[b].begin(), values[b].end());
      floor_total += mins[b];
      work += static_cast<std::int64_t>(pts.size());
    }
    if (floor_total <= threshold) {
      // Enumerate every completion whose total stays under the threshold.
      std::vector<std::size_t> pick(other.size(), 0);
      auto recurse = [&](auto &&self, std::size_t b, double acc, double rest_floor) -> void {
        if (b == other.size()) {
          Search s;
          s.enum_choice = idx;
          s.other_choice = pick;
          consider(assemble(coarse.feasible, coarse.targets, coarse.enumerate_targets, s));
          return;
        }
        const double rest = rest_floor - mins[b];
        for (std::size_t s = 0; s < values[b].size(); ++s) {
          if (acc + values[b][s] + rest > threshold) continue;
          pick[b] = s;
          if (++work > grid.budget * 4)
            throw Error(ErrorKind::BudgetExceeded, "too many near-optimal configurations; lower the tolerance");
          self(self, b + 1, acc + values[b][s], rest);
        }
      };
      recurse(recurse, 0, 0.0, floor_total);
    }
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == enumerated[a].points.size()) idx[a++] = 0;
    if (a == idx.size()) break;
  }
  out.count = out.representatives.size();
  return out;
}

} // namespace heron
