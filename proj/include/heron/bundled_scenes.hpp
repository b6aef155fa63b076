#pragma once

#include <array>
#include <string>
#include <string_view>

#include "heron/error.hpp"
#include "heron/scene.hpp"

namespace heron {

struct BundledScene {
  std::string_view name;
  std::string_view summary;
  std::string_view text;
};

// example_5_1: the disc hosting x_1 is centered at (8, 5); its start (9, 5)
// and optimum (7.0399, 5.2796) both lie on that circle.
// example_5_2: the start for x_2, (-1, 4, 5), lies outside its sphere. The
// scene keeps it and opts into infeasible_start = "project", so the first
// update projects it onto the sphere.
inline constexpr std::array<BundledScene, 5> kBundledScenes{{
    {"example_5_1", "(4,3) problem in R^2: unit discs and unit squares",
     R"({
  "name": "example_5_1",
  "dim": 2,
  "feasible": [
    {"type": "ball", "center": [8, 5], "radius": 1},
    {"type": "ball", "center": [2, 9], "radius": 1},
    {"type": "ball", "center": [-2, 12], "radius": 1},
    {"type": "ball", "center": [-7, 8], "radius": 1}
  ],
  "targets": [
    {"type": "box", "center": [4, 2], "half_widths": [1, 1]},
    {"type": "box", "center": [6, 12], "half_widths": [1, 1]},
    {"type": "box", "center": [-3, 6], "half_widths": [1, 1]}
  ],
  "initial": [[9, 5], [2, 10], [-2, 13], [-8, 8], [5, 1], [7, 13], [-4, 5]],
  "solver": {"schedule": "inv-t", "epsilon": 1e-15, "max_iters": 500000}
}
)"},
    {"example_5_2", "(3,2) problem in R^3: unit spheres and unit cubes",
     R"({
  "name": "example_5_2",
  "dim": 3,
  "feasible": [
    {"type": "ball", "center": [-3, 1, 2], "radius": 1},
    {"type": "ball", "center": [1, 4, 4], "radius": 1},
    {"type": "ball", "center": [4, 1, 2], "radius": 1}
  ],
  "targets": [
    {"type": "box", "center": [-3, -1, -2], "half_widths": [1, 1, 1]},
    {"type": "box", "center": [3, -3, -2], "half_widths": [1, 1, 1]}
  ],
  "initial": [[-4, 1, 2], [-1, 4, 5], [5, 1, 2], [-4, 0, -3], [4, -2, -3]],
  "solver": {"schedule": "inv-t", "epsilon": 1e-15, "max_iters": 100000, "infeasible_start": "project"},
  "oracle": {"density": 24, "refine": 3}
}
)"},
    {"example_3_1", "(2,2) symmetric discs on y = 6 with infinitely many optima",
     R"({
  "name": "example_3_1",
  "dim": 2,
  "feasible": [
    {"type": "ball", "center": [-6, 6], "radius": 2},
    {"type": "ball", "center": [6, 6], "radius": 2}
  ],
  "targets": [
    {"type": "ball", "center": [-2, 6], "radius": 1},
    {"type": "ball", "center": [2, 6], "radius": 1}
  ],
  "oracle": {"density": 12, "refine": 0, "interior_density": 13}
}
)"},
    {"two_ball_toy", "(1,1) two unit discs with collinear centers, optimum 3",
     R"({
  "name": "two_ball_toy",
  "dim": 2,
  "feasible": [
    {"type": "ball", "center": [0, 0], "radius": 1}
  ],
  "targets": [
    {"type": "ball", "center": [5, 0], "radius": 1}
  ],
  "initial": [[0, 1], [5, 1]],
  "solver": {"schedule": "inv-t", "epsilon": 1e-15, "max_iters": 100000},
  "oracle": {"density": 512, "refine": 3}
}
)"},
    {"classical_heron", "(1,2) a point on a line segment nearest to two fixed points",
     R"({
  "name": "classical_heron",
  "dim": 2,
  "feasible": [
    {"type": "segment", "a": [-10, 0], "b": [10, 0]}
  ],
  "targets": [
    {"type": "singleton", "point": [0, 2]},
    {"type": "singleton", "point": [4, 2]}
  ],
  "solver": {"schedule": "inv-t", "epsilon": 1e-15, "max_iters": 1000000}
}
)"},
}};

inline const BundledScene *find_bundled_scene(std::string_view name) {
  for (const auto &s : kBundledScenes)
    if (s.name == name) return &s;
  return nullptr;
}

inline SceneFile bundled_scene(std::string_view name) {
  const BundledScene *s = find_bundled_scene(name);
  if (!s) throw Error(ErrorKind::InvalidParameter, "no bundled scene named '" + std::string(name) + "'");
  return parse_scene(s->text);
}

} // namespace heron
