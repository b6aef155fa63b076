// Solve the bundled three-dimensional scene, then certify the best iterate
// and print the pairwise distance matrix.

#include <iostream>

#include "heron/bundled_scenes.hpp"
#include "heron/optimality.hpp"
#include "heron/report.hpp"
#include "heron/solver.hpp"

int main() {
  using namespace heron;
  const SceneFile scene = bundled_scene("example_5_2");
  const ProblemInstance inst = scene.instance();
  const SolverRun run = solve(inst, initial_configuration(scene), solver_options(scene));

  std::cout << "F* = " << fixed(run.best_value, 6) << " after " << run.iterations << " iterations\n\n"
            << configuration_csv(run.best) << "\n"
            << distance_matrix_csv(inst, run.best) << "\n";

  const auto rep = check_optimality(inst, run.best);
  std::cout << optimality_table(rep, boundary_check(inst, run.best));
  return rep.passed ? 0 : 1;
}
