// heron: command-line driver for the (k,m)-Heron solver, oracle and certificate.
//
//   heron solve <scene>... [--schedule S] [--eps E] [--max-iters N] [--out DIR]
//                          [--svg] [--precision P] [--stride S] [--jobs N]
//   heron oracle <scene> [--density D] [--refine R] [--interior Q] [--budget B]
//                        [--tol T] [--compare]
//   heron certify <scene> --points FILE [--tol T]
//   heron scenes list | heron scenes show <name>
//
// <scene> is a path to a scene file or the name of a bundled scene.
// Exit codes: 0 success, 1 other failure (including a failed certificate),
// 2 parse error, 3 infeasible input, 4 numeric failure, 5 budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "heron/bundled_scenes.hpp"
#include "heron/optimality.hpp"
#include "heron/oracle.hpp"
#include "heron/problem.hpp"
#include "heron/report.hpp"
#include "heron/scene.hpp"
#include "heron/solver.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kParse = 2, kInfeasible = 3, kNumeric = 4, kBudget = 5 };

int exit_code_for(const heron::Error &e) {
  switch (e.kind()) {
  case heron::ErrorKind::Parse: return kParse;
  case heron::ErrorKind::Infeasible: return kInfeasible;
  case heron::ErrorKind::NumericFailure: return kNumeric;
  case heron::ErrorKind::BudgetExceeded: return kBudget;
  default: return kFailure;
  }
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout)); }

std::string colorize_verdict(std::string text) {
  if (!use_color()) return text;
  for (auto [plain, colored] : {std::pair{"certificate: PASS", "certificate: \033[32mPASS\033[0m"},
                                std::pair{"certificate: FAIL", "certificate: \033[31mFAIL\033[0m"}}) {
    if (auto pos = text.find(plain); pos != std::string::npos) text.replace(pos, std::string(plain).size(), colored);
  }
  return text;
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw heron::Error(heron::ErrorKind::Parse, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw heron::Error(heron::ErrorKind::InvalidParameter, "cannot write '" + path.string() + "'");
  out << text;
}

heron::SceneFile load_scene(const std::string &arg) {
  if (fs::exists(arg)) {
    heron::SceneFile scene = heron::parse_scene(read_file(arg));
    if (scene.name.empty()) scene.name = fs::path(arg).stem().string();
    return scene;
  }
  if (heron::find_bundled_scene(arg)) return heron::bundled_scene(arg);
  throw heron::Error(heron::ErrorKind::Parse, "'" + arg + "' is neither a scene file nor a bundled scene");
}

struct SolveFlags {
  std::optional<std::string> schedule;
  std::optional<double> eps;
  std::optional<long long> max_iters;
  std::optional<long long> stride;
  std::optional<int> precision;
  std::string out_dir;
  bool svg = false;
  int jobs = 1;
};

struct SolveResult {
  std::string text;
  std::string errors;
  int code = kOk;
};

SolveResult solve_one(const std::string &scene_arg, const SolveFlags &flags, bool nested_out) {
  SolveResult res;
  std::ostringstream out;
  try {
    const heron::SceneFile scene = load_scene(scene_arg);
    const heron::ProblemInstance inst = scene.instance();
    heron::SolverOptions opt = heron::solver_options(scene);
    if (flags.schedule) opt.schedule = heron::parse_schedule(*flags.schedule);
    if (flags.eps) opt.stop.epsilon = *flags.eps;
    if (flags.max_iters) opt.stop.max_iters = *flags.max_iters;
    if (flags.stride) opt.history.stride = *flags.stride;
    const heron::ReportFormat fmt =
        flags.precision ? heron::ReportFormat::uniform(*flags.precision) : heron::ReportFormat{};

    if (!inst.existence_guaranteed())
      res.errors += "warning: " + scene.name + ": no bounded set; a minimizer may not exist\n";

    const heron::SolverRun run = heron::solve(inst, heron::initial_configuration(scene), opt);

    std::string certificate;
    try {
      const auto rep = heron::check_optimality(inst, run.best);
      certificate = heron::optimality_table(rep, heron::boundary_check(inst, run.best));
    } catch (const heron::Error &e) {
      certificate = std::string("certificate unavailable: ") + e.what() + "\n";
    }

    out << "scene: " << scene.name << " (k=" << inst.k() << ", m=" << inst.m() << ", n=" << inst.dim() << ")\n";
    out << "schedule: " << opt.schedule.describe() << "  epsilon: " << heron::scientific(opt.stop.epsilon, 1)
        << "  max_iters: " << opt.stop.max_iters << "\n";
    out << "stop: " << heron::to_string(run.stop_reason) << " after " << run.iterations << " iterations\n";
    out << "best objective: " << heron::fixed(run.best_value, fmt.objective_decimals) << " (iteration "
        << run.best_iteration << ")\n";
    out << "final objective: " << heron::fixed(run.final_value, fmt.objective_decimals) << "\n";

    const std::string history = heron::history_csv(run, fmt);
    const std::string best = heron::configuration_csv(run.best, fmt);
    const std::string final_cfg = heron::configuration_csv(run.final, fmt);
    const std::string distances = heron::distance_matrix_csv(inst, run.best, fmt);

    if (flags.out_dir.empty()) {
      out << "\n[history]\n" << history << "\n[best configuration]\n" << best << "\n[final configuration]\n"
          << final_cfg << "\n[pairwise distances]\n" << distances << "\n[optimality]\n" << colorize_verdict(certificate);
      if (flags.svg) out << "\nnote: --svg needs --out DIR\n";
    } else {
      fs::path dir = flags.out_dir;
      if (nested_out) dir /= scene.name;
      fs::create_directories(dir);
      write_file(dir / "history.csv", history);
      write_file(dir / "best.csv", best);
      write_file(dir / "final.csv", final_cfg);
      write_file(dir / "distances.csv", distances);
      write_file(dir / "optimality.txt", certificate);
      out << "\n[pairwise distances]\n" << distances << "\n[optimality]\n" << colorize_verdict(certificate);
      out << "\nwrote " << (dir / "history.csv").string() << ", best.csv, final.csv, distances.csv, optimality.txt";
      if (flags.svg) {
        if (inst.dim() == 2) {
          write_file(dir / "figure.svg", heron::render_svg(inst, run.best, scene.name));
          out << ", figure.svg";
        } else {
          out << " (no figure: dimension " << inst.dim() << ")";
        }
      }
      out << "\n";
    }
  } catch (const heron::Error &e) {
    res.errors += "error: " + scene_arg + ": " + e.what() + "\n";
    res.code = exit_code_for(e);
  } catch (const std::exception &e) {
    res.errors += "error: " + scene_arg + ": " + e.what() + "\n";
    res.code = kFailure;
  }
  res.text = out.str();
  return res;
}

int run_solve(const std::vector<std::string> &scenes, const SolveFlags &flags) {
  const bool nested = scenes.size() > 1;
  std::vector<SolveResult> results(scenes.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, flags.jobs));
  for (std::size_t start = 0; start < scenes.size(); start += jobs) {
    std::vector<std::future<SolveResult>> batch;
    for (std::size_t i = start; i < std::min(scenes.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, solve_one,
                                 std::cref(scenes[i]), std::cref(flags), nested));
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  int code = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << results[i].text;
    std::cerr << results[i].errors;
    if (results[i].code != kOk && code == kOk) code = results[i].code;
  }
  return code;
}

struct OracleFlags {
  std::optional<int> density;
  std::optional<int> refine;
  std::optional<int> interior;
  std::optional<long long> budget;
  double tol = 1e-6;
  bool compare = false;
};

int run_oracle(const std::string &scene_arg, const OracleFlags &flags) {
  const heron::SceneFile scene = load_scene(scene_arg);
  const heron::ProblemInstance inst = scene.instance();
  heron::GridSpec grid = heron::grid_spec(scene);
  if (flags.density) grid.density = *flags.density;
  if (flags.refine) grid.refine_rounds = *flags.refine;
  if (flags.interior) grid.interior_density = *flags.interior;
  if (flags.budget) grid.budget = *flags.budget;

  const heron::OracleResult res = heron::brute_force_min(inst, grid);
  const heron::ProbeResult probe = heron::non_uniqueness_probe(inst, grid, flags.tol);

  std::cout << "scene: " << scene.name << " (k=" << inst.k() << ", m=" << inst.m() << ", n=" << inst.dim() << ")\n";
  std::cout << "grid: density " << grid.density << " (enumerated side " << res.coarse_density << "), interior "
            << grid.interior_density << ", refinement rounds " << grid.refine_rounds << "\n";
  std::cout << "oracle objective: " << heron::fixed(res.value, 6) << "\n";
  std::cout << "round values:";
  for (double v : res.round_values) std::cout << " " << heron::fixed(v, 6);
  std::cout << "\ncell diameter: " << heron::scientific(res.cell_diameter, 3) << " (coarse "
            << heron::scientific(res.coarse_cell_diameter, 3) << ")\n";
  std::cout << "evaluations: " << res.evaluations << "\n";
  std::cout << "near-optimal configurations (tol " << heron::scientific(flags.tol, 1) << "): " << probe.count << "\n";
  std::cout << "\n[oracle configuration]\n" << heron::configuration_csv(res.config);

  if (flags.compare) {
    const heron::SolverRun run = heron::solve(inst, heron::initial_configuration(scene), heron::solver_options(scene));
    const double gap = res.value - run.best_value;
    const double allowed = 5.0 * res.coarse_cell_diameter * static_cast<double>(inst.k() * inst.m());
    std::cout << "\n[comparison]\n";
    std::cout << "solver best objective: " << heron::fixed(run.best_value, 6) << " (" << run.iterations
              << " iterations)\n";
    std::cout << "oracle - solver: " << heron::scientific(gap, 3) << "\n";
    std::cout << "agreement bound 5*cell*k*m: " << heron::scientific(allowed, 3) << " -> "
              << (std::abs(gap) <= allowed ? "agree" : "DISAGREE") << "\n";
  }
  return kOk;
}

int run_certify(const std::string &scene_arg, const std::string &points_file, double tol) {
  const heron::SceneFile scene = load_scene(scene_arg);
  const heron::ProblemInstance inst = scene.instance();
  const heron::Configuration z =
      heron::parse_configuration_csv(read_file(points_file), inst.k(), inst.m(), inst.dim());
  const auto rep = heron::check_optimality(inst, z, tol);
  const auto boundary = heron::boundary_check(inst, z, std::max(tol, heron::kBoundaryTolerance));
  std::cout << "scene: " << scene.name << "\n";
  std::cout << "objective: " << heron::fixed(heron::objective(inst, z), 6) << "\n";
  std::cout << colorize_verdict(heron::optimality_table(rep, boundary));
  return rep.passed ? kOk : kFailure;
}

int run_scenes(const std::string &action, const std::string &name) {
  if (action == "list") {
    for (const auto &s : heron::kBundledScenes) std::cout << s.name << "  " << s.summary << "\n";
    return kOk;
  }
  if (action == "show") {
    const auto *s = heron::find_bundled_scene(name);
    if (!s) {
      std::cerr << "error: no bundled scene named '" << name << "'\n";
      return kFailure;
    }
    std::cout << s->text;
    return kOk;
  }
  std::cerr << "error: scenes action must be 'list' or 'show'\n";
  return kFailure;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Solver, brute-force oracle and optimality certificate for (k,m)-Heron problems"};
  app.require_subcommand(1);

  SolveFlags sflags;
  std::vector<std::string> solve_scenes;
  auto *solve = app.add_subcommand("solve", "Run the projected subgradient method on one or more scenes");
  solve->add_option("scene", solve_scenes, "Scene file or bundled scene name")->required();
  solve->add_option("--schedule", sflags.schedule, "inv-t | inv-t-scaled:<c> | const:<a>");
  solve->add_option("--eps", sflags.eps, "Stop when |F(t+1) - F(t)| < eps");
  solve->add_option("--max-iters", sflags.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  solve->add_option("--stride", sflags.stride, "Record history every N iterations after the first 100 (0: 1-2-5 decades)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", sflags.out_dir, "Write history/best/final/distances/optimality files here");
  solve->add_flag("--svg", sflags.svg, "Also write figure.svg (planar scenes, needs --out)");
  solve->add_option("--precision", sflags.precision, "Decimals for every printed number")->check(CLI::Range(0, 17));
  solve->add_option("--jobs", sflags.jobs, "Solve this many scenes concurrently")->check(CLI::PositiveNumber);

  OracleFlags oflags;
  std::string oracle_scene;
  auto *oracle = app.add_subcommand("oracle", "Brute-force grid minimum and non-uniqueness probe");
  oracle->add_option("scene", oracle_scene, "Scene file or bundled scene name")->required();
  oracle->add_option("--density", oflags.density, "Boundary samples per turn (>= 8)");
  oracle->add_option("--refine", oflags.refine, "Local refinement rounds");
  oracle->add_option("--interior", oflags.interior, "Interior lattice points per axis (0: boundary only)");
  oracle->add_option("--budget", oflags.budget, "Evaluation budget per search");
  oracle->add_option("--tol", oflags.tol, "Near-optimality tolerance for the probe");
  oracle->add_flag("--compare", oflags.compare, "Also run the solver and report the gap");

  std::string certify_scene, points_file;
  double certify_tol = heron::kCertificationTolerance;
  auto *certify = app.add_subcommand("certify", "Check first-order optimality of given points");
  certify->add_option("scene", certify_scene, "Scene file or bundled scene name")->required();
  certify->add_option("--points", points_file, "CSV of points (as written by solve)")->required();
  certify->add_option("--tol", certify_tol, "Certification tolerance");

  std::string scenes_action, scenes_name;
  auto *scenes = app.add_subcommand("scenes", "List or print bundled scenes");
  scenes->add_option("action", scenes_action, "list | show")->required();
  scenes->add_option("name", scenes_name, "Scene name for show");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_scenes, sflags);
    if (*oracle) return run_oracle(oracle_scene, oflags);
    if (*certify) return run_certify(certify_scene, points_file, certify_tol);
    if (*scenes) return run_scenes(scenes_action, scenes_name);
  } catch (const heron::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
