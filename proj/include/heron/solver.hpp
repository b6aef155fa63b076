#pragma once

// Projected subgradient method Z_{t+1} = proj_A(Z_t - alpha_t g_t) with
// best-iterate tracking and a thinned convergence history.

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heron/error.hpp"
#include "heron/problem.hpp"

namespace heron {

/// alpha_t = 1 / t
struct InverseT {};
/// alpha_t = c / t
struct InverseTScaled {
  double c;
};
/// alpha_t = alpha. Does not converge; for experiments only.
struct ConstantStep {
  double alpha;
};

class StepSchedule {
public:
  using Kind = std::variant<InverseT, InverseTScaled, ConstantStep>;

  StepSchedule() = default;
  StepSchedule(Kind kind) : kind_(kind) { // NOLINT(google-explicit-constructor)
    if (const auto *s = std::get_if<InverseTScaled>(&kind_); s && !(s->c > 0.0 && std::isfinite(s->c)))
      throw Error(ErrorKind::InvalidParameter, "inv-t-scaled factor must be positive");
    if (const auto *s = std::get_if<ConstantStep>(&kind_); s && !(s->alpha > 0.0 && std::isfinite(s->alpha)))
      throw Error(ErrorKind::InvalidParameter, "constant step must be positive");
  }

  static StepSchedule inverse_t() { return {InverseT{}}; }
  static StepSchedule inverse_t_scaled(double c) { return {InverseTScaled{c}}; }
  static StepSchedule constant(double alpha) { return {ConstantStep{alpha}}; }

  /// Step size for iteration t >= 1.
  double alpha(long long t) const {
    const double td = static_cast<double>(t);
    if (std::holds_alternative<InverseT>(kind_)) return 1.0 / td;
    if (const auto *s = std::get_if<InverseTScaled>(&kind_)) return s->c / td;
    return std::get<ConstantStep>(kind_).alpha;
  }

  /// sum alpha = inf and sum alpha^2 < inf
  bool diminishing() const { return !std::holds_alternative<ConstantStep>(kind_); }

  const Kind &kind() const noexcept { return kind_; }

  std::string describe() const {
    if (std::holds_alternative<InverseT>(kind_)) return "inv-t";
    char buf[64];
    if (const auto *s = std::get_if<InverseTScaled>(&kind_)) std::snprintf(buf, sizeof buf, "inv-t-scaled:%.17g", s->c);
    else std::snprintf(buf, sizeof buf, "const:%.17g", std::get<ConstantStep>(kind_).alpha);
    return buf;
  }

  friend bool operator==(const StepSchedule &a, const StepSchedule &b) {
    if (a.kind_.index() != b.kind_.index()) return false;
    return a.alpha(1) == b.alpha(1);
  }

private:
  Kind kind_ = InverseT{};
};

struct StoppingRule {
  double epsilon = 1e-15;       ///< stop once |F^(t+1) - F^(t)| < epsilon
  long long max_iters = 1'000'000;
};

/// Which iterations land in SolverRun::history. Every iteration up to
/// `dense_until`, then either every `stride`-th iteration or, when stride is
/// 0, the 1-2-5 decade checkpoints (..., 100, 200, 500, 1000, 2000, ...).
/// The final iteration is always recorded.
struct HistoryPolicy {
  long long dense_until = 100;
  long long stride = 0;

  bool records(long long t) const {
    if (t <= dense_until) return true;
    if (stride > 0) return t % stride == 0;
    long long scale = 1;
    while (scale <= t / 10) scale *= 10;
    return t == scale || t == 2 * scale || t == 5 * scale;
  }
};

enum class StartPolicy {
  RequireFeasible,     ///< infeasible Z0 is a precondition error
  ProjectOnFirstStep,  ///< Z0 enters the first update as given; Z1 is feasible
};

enum class StopReason { Tolerance, MaxIters };

inline const char *to_string(StopReason r) {
  return r == StopReason::Tolerance ? "Tolerance" : "MaxIters";
}

struct SolverOptions {
  StepSchedule schedule;
  StoppingRule stop;
  HistoryPolicy history;
  StartPolicy start = StartPolicy::RequireFeasible;
  double feasibility_tol = kDefaultTolerance;
};

struct HistoryEntry {
  long long iteration;
  double objective; ///< F of the current iterate Z_t
  double delta;     ///< |F^(t) - F^(t-1)|
};

struct SolverRun {
  Configuration final;
  Configuration best;
  double best_value = 0.0;
  long long best_iteration = 0;
  double initial_value = 0.0;
  double final_value = 0.0;
  long long iterations = 0;
  std::vector<HistoryEntry> history;
  StopReason stop_reason = StopReason::MaxIters;
};

namespace detail {
inline void require_feasible(const ProblemInstance &inst, const Configuration &z, double tol,
                             const char *what) {
  if (auto bad = find_infeasible(inst, z, tol))
    throw Error(ErrorKind::Infeasible, std::string(what) + ": " + describe(*bad));
}

inline Configuration psa_update(const ProblemInstance &inst, const Configuration &z, double alpha,
                                long long iteration) {
  const Subgradient g = subgradient(inst, z);
  if (!g.is_finite()) throw NumericFailure(iteration, "non-finite subgradient");
  Configuration moved = z;
  for (std::size_t i = 0; i < inst.k(); ++i) moved.xs[i] -= g.xs[i] * alpha;
  for (std::size_t j = 0; j < inst.m(); ++j) moved.ys[j] -= g.ys[j] * alpha;
  return project(inst, moved);
}
} // namespace detail

/// One projected subgradient update. alpha = 0 returns proj_A(Z) = Z.
inline Configuration step(const ProblemInstance &inst, const Configuration &z, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidParameter, "step size must be finite and nonnegative");
  detail::require_feasible(inst, z, kDefaultTolerance, "step needs a feasible configuration");
  return detail::psa_update(inst, z, alpha, 0);
}

inline SolverRun solve(const ProblemInstance &inst, const Configuration &z0,
                       const SolverOptions &options = {}) {
  check_shape(inst, z0);
  if (options.stop.max_iters < 1) throw Error(ErrorKind::InvalidParameter, "max_iters must be >= 1");
  if (!(options.stop.epsilon >= 0.0)) throw Error(ErrorKind::InvalidParameter, "epsilon must be >= 0");
  if (!z0.is_finite()) throw Error(ErrorKind::InvalidParameter, "initial configuration is not finite");

  const bool start_feasible = is_feasible(inst, z0, options.feasibility_tol);
  if (!start_feasible && options.start == StartPolicy::RequireFeasible)
    detail::require_feasible(inst, z0, options.feasibility_tol, "initial configuration");

  SolverRun run;
  Configuration z = z0;
  double f_prev = objective(inst, z);
  if (!std::isfinite(f_prev)) throw NumericFailure(0, "non-finite objective");
  run.initial_value = f_prev;

  bool have_best = start_feasible;
  if (have_best) {
    run.best = z;
    run.best_value = f_prev;
    run.best_iteration = 0;
  }

  for (long long t = 1; t <= options.stop.max_iters; ++t) {
    z = detail::psa_update(inst, z, options.schedule.alpha(t), t);
    const double f = objective(inst, z);
    if (!std::isfinite(f)) throw NumericFailure(t, "non-finite objective");
    const double delta = std::abs(f - f_prev);
    if (!have_best || f < run.best_value) {
      run.best = z;
      run.best_value = f;
      run.best_iteration = t;
      have_best = true;
    }
    run.iterations = t;
    const bool done = delta < options.stop.epsilon;
    if (done || t == options.stop.max_iters || options.history.records(t))
      run.history.push_back({t, f, delta});
    f_prev = f;
    if (done) {
      run.stop_reason = StopReason::Tolerance;
      break;
    }
  }
  run.final = std::move(z);
  run.final_value = f_prev;
  return run;
}

inline SolverRun solve(const ProblemInstance &inst, const Configuration &z0,
                       const StepSchedule &schedule, const StoppingRule &stop) {
  SolverOptions options;
  options.schedule = schedule;
  options.stop = stop;
  return solve(inst, z0, options);
}

struct ConvergenceBound {
  double bound;            ///< (R^2 + G^2 sum alpha^2) / (2 sum alpha)
  double initial_distance; ///< R, an upper bound on |Z0 - Z*|
  double subgradient_bound;
  double sum_alpha;
  double sum_alpha_squared;
};

/// Upper bound on F_best - F* after N updates (best over Z_0..Z_{N-1}, steps
/// alpha_1..alpha_N). Without an explicit R, |Z0 - Z*| is bounded by the
/// root-sum-square of the set diameters, which requires every set bounded.
inline ConvergenceBound certify_convergence_bound(const ProblemInstance &inst, const Configuration &z0,
                                                  const StepSchedule &schedule, long long n,
                                                  std::optional<double> initial_distance = std::nullopt) {
  check_shape(inst, z0);
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "N must be >= 1");
  if (!schedule.diminishing())
    throw Error(ErrorKind::InvalidParameter, "convergence bound needs a diminishing schedule");

  double r = 0.0;
  if (initial_distance) {
    if (!(*initial_distance >= 0.0)) throw Error(ErrorKind::InvalidParameter, "initial distance must be >= 0");
    r = *initial_distance;
  } else {
    if (!inst.all_bounded())
      throw Error(ErrorKind::Unsupported, "an unbounded set has no diameter; pass |Z0 - Z*| explicitly");
    detail::require_feasible(inst, z0, kDefaultTolerance, "diameter bound needs a feasible Z0");
    double sq = 0.0;
    for (const auto &s : inst.feasible()) sq += diameter(s) * diameter(s);
    for (const auto &s : inst.targets()) sq += diameter(s) * diameter(s);
    r = std::sqrt(sq);
  }

  ConvergenceBound out{};
  out.initial_distance = r;
  out.subgradient_bound = subgradient_norm_bound(inst.k(), inst.m());
  for (long long t = 1; t <= n; ++t) {
    const double a = schedule.alpha(t);
    out.sum_alpha += a;
    out.sum_alpha_squared += a * a;
  }
  const double g = out.subgradient_bound;
  out.bound = (r * r + g * g * out.sum_alpha_squared) / (2.0 * out.sum_alpha);
  return out;
}

} // namespace heron
