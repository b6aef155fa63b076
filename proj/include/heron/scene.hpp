#pragma once

// Scene files: a JSON document describing an instance, optional initial
// points, and optional solver / oracle settings.
//
//   {
//     "name": "two_ball_toy",
//     "dim": 2,
//     "feasible": [ {"type": "ball", "center": [0, 0], "radius": 1} ],
//     "targets":  [ {"type": "box", "center": [5, 0], "half_widths": [1, 1]} ],
//     "initial":  [ [0, 1], [4, 1] ],            // x_1..x_k then y_1..y_m
//     "solver": {"schedule": "inv-t", "epsilon": 1e-15, "max_iters": 100000,
//                "history_stride": 0, "infeasible_start": "reject"},
//     "oracle": {"density": 64, "refine": 3, "interior_density": 0}
//   }
//
// Shape records: ball {center, radius}; box {center, half_widths (array or
// number)}; halfspace {normal, offset} meaning <normal, z> <= offset;
// segment {a, b}; singleton {point}.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "heron/convex_set.hpp"
#include "heron/error.hpp"
#include "heron/oracle.hpp"
#include "heron/problem.hpp"
#include "heron/solver.hpp"

namespace heron {

struct SolverSettings {
  std::optional<StepSchedule> schedule;
  std::optional<double> epsilon;
  std::optional<long long> max_iters;
  std::optional<long long> history_stride;
  std::optional<StartPolicy> start;

  friend bool operator==(const SolverSettings &, const SolverSettings &) = default;
};

struct OracleSettings {
  std::optional<int> density;
  std::optional<int> refine;
  std::optional<int> interior_density;

  friend bool operator==(const OracleSettings &, const OracleSettings &) = default;
};

struct SceneFile {
  std::string name;
  std::size_t dim = 0;
  std::vector<ConvexSet> feasible;
  std::vector<ConvexSet> targets;
  std::optional<Configuration> initial;
  std::optional<SolverSettings> solver;
  std::optional<OracleSettings> oracle;

  ProblemInstance instance() const { return {feasible, targets}; }

  friend bool operator==(const SceneFile &, const SceneFile &) = default;
};

/// Parses a schedule flag: "inv-t", "inv-t-scaled:<c>" or "const:<a>".
inline StepSchedule parse_schedule(std::string_view text) {
  auto number = [&](std::string_view rest) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(rest), &used);
      if (used != rest.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception &) {
      throw Error(ErrorKind::Parse, "bad number in schedule '" + std::string(text) + "'");
    }
  };
  if (text == "inv-t") return StepSchedule::inverse_t();
  if (text.starts_with("inv-t-scaled:")) return StepSchedule::inverse_t_scaled(number(text.substr(13)));
  if (text.starts_with("const:")) return StepSchedule::constant(number(text.substr(6)));
  throw Error(ErrorKind::Parse, "unknown schedule '" + std::string(text) +
                                    "' (expected inv-t, inv-t-scaled:<c> or const:<a>)");
}

/// Initial points used when a scene gives none: each set's anchor shifted by
/// +1 along the first axis, then projected back onto the set.
inline Configuration default_initial(const ProblemInstance &inst) {
  Configuration z;
  auto start = [&](const ConvexSet &s) {
    Point p = anchor(s);
    p[0] += 1.0;
    return project(s, p);
  };
  for (const auto &s : inst.feasible()) z.xs.push_back(start(s));
  for (const auto &s : inst.targets()) z.ys.push_back(start(s));
  return z;
}

namespace scene_detail {

using json = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string &path, const std::string &what) {
  throw Error(ErrorKind::Parse, (path.empty() ? std::string("scene") : path) + ": " + what);
}

inline const json &field(const json &obj, const std::string &path, const char *key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const json &j, const std::string &path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "number is not finite");
  return v;
}

inline long long integer(const json &j, const std::string &path) {
  if (!j.is_number_integer() && !(j.is_number_float() && std::floor(j.get<double>()) == j.get<double>()))
    fail(path, "expected an integer");
  return j.is_number_integer() ? j.get<long long>() : static_cast<long long>(j.get<double>());
}

inline Point point(const json &j, const std::string &path, std::size_t dim) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (j.size() != dim)
    fail(path, "has " + std::to_string(j.size()) + " coordinates, scene dimension is " + std::to_string(dim));
  Point p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = number(j[i], path + "[" + std::to_string(i) + "]");
  return p;
}

inline ConvexSet shape(const json &j, const std::string &path, std::size_t dim) {
  const json &type = field(j, path, "type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "ball")
      return ConvexSet::ball(point(field(j, path, "center"), path + ".center", dim),
                             number(field(j, path, "radius"), path + ".radius"));
    if (t == "box") {
      Point center = point(field(j, path, "center"), path + ".center", dim);
      const json &hw = field(j, path, "half_widths");
      if (hw.is_number()) return ConvexSet::box(std::move(center), number(hw, path + ".half_widths"));
      return ConvexSet::box(std::move(center), point(hw, path + ".half_widths", dim));
    }
    if (t == "halfspace")
      return ConvexSet::halfspace(point(field(j, path, "normal"), path + ".normal", dim),
                                  number(field(j, path, "offset"), path + ".offset"));
    if (t == "segment")
      return ConvexSet::segment(point(field(j, path, "a"), path + ".a", dim),
                                point(field(j, path, "b"), path + ".b", dim));
    if (t == "singleton") return ConvexSet::singleton(point(field(j, path, "point"), path + ".point", dim));
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(path, e.what());
  }
  fail(path + ".type", "unknown shape type '" + t + "' (expected ball, box, halfspace, segment or singleton)");
}

inline std::vector<ConvexSet> shapes(const json &j, const std::string &path, std::size_t dim) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of shape records");
  std::vector<ConvexSet> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(shape(j[i], path + "[" + std::to_string(i) + "]", dim));
  return out;
}

inline json to_json(const Point &p) {
  json a = json::array();
  for (double c : p) a.push_back(c);
  return a;
}

inline json to_json(const ConvexSet &set) {
  json j;
  j["type"] = to_string(set.kind());
  if (const auto *s = set.as<Ball>()) {
    j["center"] = to_json(s->center);
    j["radius"] = s->radius;
  } else if (const auto *s = set.as<Box>()) {
    j["center"] = to_json(s->center);
    j["half_widths"] = to_json(s->half_widths);
  } else if (const auto *s = set.as<Halfspace>()) {
    j["normal"] = to_json(s->normal);
    j["offset"] = s->offset;
  } else if (const auto *s = set.as<Segment>()) {
    j["a"] = to_json(s->a);
    j["b"] = to_json(s->b);
  } else if (const auto *s = set.as<Singleton>()) {
    j["point"] = to_json(s->p);
  }
  return j;
}

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace scene_detail

/// Parses and validates a scene. Structural problems raise ErrorKind::Parse;
/// an initial point outside its set raises ErrorKind::Infeasible naming the
/// set, unless the scene opts into solver.infeasible_start = "project".
inline SceneFile parse_scene(std::string_view text) {
  using namespace scene_detail;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::Parse, line_column(text, e.byte) + ": malformed JSON");
  }
  if (!doc.is_object()) fail("", "top level must be an object");

  SceneFile scene;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    scene.name = it->get<std::string>();
  }
  const long long dim = integer(field(doc, "", "dim"), "dim");
  if (dim < 1) fail("dim", "must be positive");
  scene.dim = static_cast<std::size_t>(dim);
  scene.feasible = shapes(field(doc, "", "feasible"), "feasible", scene.dim);
  scene.targets = shapes(field(doc, "", "targets"), "targets", scene.dim);
  const std::size_t k = scene.feasible.size(), m = scene.targets.size();

  if (auto it = doc.find("solver"); it != doc.end()) {
    const json &s = *it;
    if (!s.is_object()) fail("solver", "expected an object");
    SolverSettings settings;
    if (auto f = s.find("schedule"); f != s.end()) {
      if (!f->is_string()) fail("solver.schedule", "expected a string");
      try {
        settings.schedule = parse_schedule(f->get<std::string>());
      } catch (const Error &e) {
        fail("solver.schedule", e.what());
      }
    }
    if (auto f = s.find("epsilon"); f != s.end()) {
      settings.epsilon = number(*f, "solver.epsilon");
      if (*settings.epsilon < 0) fail("solver.epsilon", "must be >= 0");
    }
    if (auto f = s.find("max_iters"); f != s.end()) {
      settings.max_iters = integer(*f, "solver.max_iters");
      if (*settings.max_iters < 1) fail("solver.max_iters", "must be >= 1");
    }
    if (auto f = s.find("history_stride"); f != s.end()) {
      settings.history_stride = integer(*f, "solver.history_stride");
      if (*settings.history_stride < 0) fail("solver.history_stride", "must be >= 0");
    }
    if (auto f = s.find("infeasible_start"); f != s.end()) {
      const std::string v = f->is_string() ? f->get<std::string>() : "";
      if (v == "reject") settings.start = StartPolicy::RequireFeasible;
      else if (v == "project") settings.start = StartPolicy::ProjectOnFirstStep;
      else fail("solver.infeasible_start", "expected \"reject\" or \"project\"");
    }
    scene.solver = settings;
  }

  if (auto it = doc.find("oracle"); it != doc.end()) {
    const json &o = *it;
    if (!o.is_object()) fail("oracle", "expected an object");
    OracleSettings settings;
    if (auto f = o.find("density"); f != o.end()) settings.density = static_cast<int>(integer(*f, "oracle.density"));
    if (auto f = o.find("refine"); f != o.end()) settings.refine = static_cast<int>(integer(*f, "oracle.refine"));
    if (auto f = o.find("interior_density"); f != o.end())
      settings.interior_density = static_cast<int>(integer(*f, "oracle.interior_density"));
    scene.oracle = settings;
  }

  if (auto it = doc.find("initial"); it != doc.end()) {
    const json &pts = *it;
    if (!pts.is_array()) fail("initial", "expected an array of points");
    if (pts.size() != k + m)
      fail("initial", "has " + std::to_string(pts.size()) + " points, scene needs k + m = " + std::to_string(k + m));
    Configuration z;
    for (std::size_t i = 0; i < k + m; ++i) {
      Point p = point(pts[i], "initial[" + std::to_string(i) + "]", scene.dim);
      (i < k ? z.xs : z.ys).push_back(std::move(p));
    }
    const bool lenient = scene.solver && scene.solver->start == StartPolicy::ProjectOnFirstStep;
    if (!lenient) {
      if (auto bad = find_infeasible(ProblemInstance(scene.feasible, scene.targets), z, kDefaultTolerance))
        throw Error(ErrorKind::Infeasible,
                    "initial[" + std::to_string(bad->target ? k + bad->index : bad->index) + "]: " + describe(*bad));
    }
    scene.initial = std::move(z);
  }
  return scene;
}

inline std::string render_scene(const SceneFile &scene) {
  using namespace scene_detail;
  json doc;
  if (!scene.name.empty()) doc["name"] = scene.name;
  doc["dim"] = scene.dim;
  doc["feasible"] = json::array();
  for (const auto &s : scene.feasible) doc["feasible"].push_back(to_json(s));
  doc["targets"] = json::array();
  for (const auto &s : scene.targets) doc["targets"].push_back(to_json(s));
  if (scene.initial) {
    json pts = json::array();
    for (const auto &x : scene.initial->xs) pts.push_back(to_json(x));
    for (const auto &y : scene.initial->ys) pts.push_back(to_json(y));
    doc["initial"] = pts;
  }
  if (scene.solver) {
    json s = json::object();
    if (scene.solver->schedule) s["schedule"] = scene.solver->schedule->describe();
    if (scene.solver->epsilon) s["epsilon"] = *scene.solver->epsilon;
    if (scene.solver->max_iters) s["max_iters"] = *scene.solver->max_iters;
    if (scene.solver->history_stride) s["history_stride"] = *scene.solver->history_stride;
    if (scene.solver->start)
      s["infeasible_start"] = *scene.solver->start == StartPolicy::ProjectOnFirstStep ? "project" : "reject";
    doc["solver"] = s;
  }
  if (scene.oracle) {
    json o = json::object();
    if (scene.oracle->density) o["density"] = *scene.oracle->density;
    if (scene.oracle->refine) o["refine"] = *scene.oracle->refine;
    if (scene.oracle->interior_density) o["interior_density"] = *scene.oracle->interior_density;
    doc["oracle"] = o;
  }
  return doc.dump(2) + "\n";
}

/// Solver options for a scene: defaults, overridden by the scene's solver section.
inline SolverOptions solver_options(const SceneFile &scene) {
  SolverOptions opt;
  if (!scene.solver) return opt;
  if (scene.solver->schedule) opt.schedule = *scene.solver->schedule;
  if (scene.solver->epsilon) opt.stop.epsilon = *scene.solver->epsilon;
  if (scene.solver->max_iters) opt.stop.max_iters = *scene.solver->max_iters;
  if (scene.solver->history_stride) opt.history.stride = *scene.solver->history_stride;
  if (scene.solver->start) opt.start = *scene.solver->start;
  return opt;
}

inline GridSpec grid_spec(const SceneFile &scene) {
  GridSpec g;
  if (!scene.oracle) return g;
  if (scene.oracle->density) g.density = *scene.oracle->density;
  if (scene.oracle->refine) g.refine_rounds = *scene.oracle->refine;
  if (scene.oracle->interior_density) g.interior_density = *scene.oracle->interior_density;
  return g;
}

inline Configuration initial_configuration(const SceneFile &scene) {
  return scene.initial ? *scene.initial : default_initial(scene.instance());
}

} // namespace heron
