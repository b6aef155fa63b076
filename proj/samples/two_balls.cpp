// Two unit discs whose centers are 5 apart: the closest pair of points is
// (1, 0) and (4, 0) at distance 3.

#include <cstdio>

#include "heron/optimality.hpp"
#include "heron/problem.hpp"
#include "heron/solver.hpp"

int main() {
  using namespace heron;
  const ProblemInstance inst({ConvexSet::ball({0, 0}, 1)}, {ConvexSet::ball({5, 0}, 1)});
  const Configuration start{{Point{0, 1}}, {Point{5, 1}}};

  SolverOptions opt;
  opt.stop.max_iters = 100000;
  const SolverRun run = solve(inst, start, opt);

  std::printf("best F = %.9f after %lld iterations (%s)\n", run.best_value, run.iterations,
              to_string(run.stop_reason));
  std::printf("x = (%.6f, %.6f), y = (%.6f, %.6f)\n", run.best.xs[0][0], run.best.xs[0][1], run.best.ys[0][0],
              run.best.ys[0][1]);

  const OptimalityReport rep = check_optimality(inst, run.best);
  std::printf("certificate: %s\n", rep.passed ? "PASS" : "FAIL");
  return rep.passed ? 0 : 1;
}
