#pragma once

// Text artifacts: convergence history, configurations, distance matrices,
// optimality tables and a static SVG figure for planar scenes. All output is
// deterministic for identical inputs and formatting options.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "heron/convex_set.hpp"
#include "heron/error.hpp"
#include "heron/optimality.hpp"
#include "heron/problem.hpp"
#include "heron/solver.hpp"

namespace heron {

struct ReportFormat {
  int coordinate_decimals = 4;
  int objective_decimals = 6;
  int delta_digits = 4;

  /// Same precision P for every column.
  static ReportFormat uniform(int precision) { return {precision, precision, precision}; }
};

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string scientific(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

inline std::string point_label(bool target, std::size_t index) {
  return std::string(target ? "y_" : "x_") + std::to_string(index + 1);
}

/// iteration,objective,delta
inline std::string history_csv(const SolverRun &run, const ReportFormat &fmt = {}) {
  std::string out = "iteration,objective,delta\n";
  for (const auto &h : run.history)
    out += std::to_string(h.iteration) + "," + fixed(h.objective, fmt.objective_decimals) + "," +
           scientific(h.delta, fmt.delta_digits) + "\n";
  return out;
}

/// One row per point: label,c_1,...,c_n with labels x_1..x_k, y_1..y_m.
inline std::string configuration_csv(const Configuration &z, const ReportFormat &fmt = {}) {
  const std::size_t n = !z.xs.empty() ? z.xs.front().dim() : (!z.ys.empty() ? z.ys.front().dim() : 0);
  std::string out = "point";
  for (std::size_t a = 0; a < n; ++a) out += ",c_" + std::to_string(a + 1);
  out += "\n";
  auto row = [&](const Point &p, bool target, std::size_t i) {
    out += point_label(target, i);
    for (double c : p) out += "," + fixed(c, fmt.coordinate_decimals);
    out += "\n";
  };
  for (std::size_t i = 0; i < z.xs.size(); ++i) row(z.xs[i], false, i);
  for (std::size_t j = 0; j < z.ys.size(); ++j) row(z.ys[j], true, j);
  return out;
}

/// Reads configuration_csv output. Rows may come in any order; labels decide placement.
inline Configuration parse_configuration_csv(const std::string &text, std::size_t k, std::size_t m,
                                             std::size_t dim) {
  Configuration z;
  z.xs.assign(k, Point());
  z.ys.assign(m, Point());
  std::vector<bool> seen(k + m, false);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &what) {
    throw Error(ErrorKind::Parse, "points line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with("point") || line.starts_with('#')) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    const std::string &label = cells.front();
    if (label.size() < 3 || (label[0] != 'x' && label[0] != 'y') || label[1] != '_') fail("bad label '" + label + "'");
    std::size_t idx = 0;
    try {
      idx = std::stoul(label.substr(2));
    } catch (const std::exception &) {
      fail("bad label '" + label + "'");
    }
    const bool target = label[0] == 'y';
    if (idx < 1 || idx > (target ? m : k)) fail("label '" + label + "' out of range");
    if (cells.size() != dim + 1) fail("expected " + std::to_string(dim) + " coordinates");
    Point p(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      try {
        p[a] = std::stod(cells[a + 1]);
      } catch (const std::exception &) {
        fail("bad coordinate '" + cells[a + 1] + "'");
      }
    }
    (target ? z.ys[idx - 1] : z.xs[idx - 1]) = p;
    seen[target ? k + idx - 1 : idx - 1] = true;
  }
  for (std::size_t i = 0; i < k + m; ++i)
    if (!seen[i]) throw Error(ErrorKind::Parse, "points file lacks " + point_label(i >= k, i >= k ? i - k : i));
  return z;
}

/// k x m table of |x_i - y_j| with row headers x_i and column headers y_j.
inline std::string distance_matrix_csv(const ProblemInstance &inst, const Configuration &z,
                                       const ReportFormat &fmt = {}) {
  const auto d = pairwise_distances(inst, z);
  std::string out = "feasible";
  for (std::size_t j = 0; j < inst.m(); ++j) out += "," + point_label(true, j);
  out += "\n";
  for (std::size_t i = 0; i < inst.k(); ++i) {
    out += point_label(false, i);
    for (std::size_t j = 0; j < inst.m(); ++j) out += "," + fixed(d[i][j], fmt.coordinate_decimals);
    out += "\n";
  }
  return out;
}

inline std::string optimality_table(const OptimalityReport &rep, const BoundaryReport &boundary) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %-14s %-8s %-8s\n", "set", "cone_residual", "in_cone", "boundary");
  out << buf;
  auto row = [&](const std::string &label, double r, bool in, bool on) {
    std::snprintf(buf, sizeof buf, "%-6s %-14s %-8s %-8s\n", label.c_str(), scientific(r, 3).c_str(),
                  in ? "yes" : "no", on ? "yes" : "no");
    out << buf;
  };
  for (std::size_t i = 0; i < rep.o1_residuals.size(); ++i)
    row("S_" + std::to_string(i + 1), rep.o1_residuals[i], rep.feasible_in_cone[i], boundary.feasible_on_boundary[i]);
  for (std::size_t j = 0; j < rep.o2_residuals.size(); ++j)
    row("C_" + std::to_string(j + 1), rep.o2_residuals[j], rep.target_in_cone[j], boundary.target_on_boundary[j]);
  out << "balance residual: " << scientific(rep.o3_residual, 3) << "\n";
  out << "min pair distance: " << fixed(rep.min_pair_distance, 4) << "\n";
  out << "tolerance: " << scientific(rep.tol, 1) << "\n";
  out << "certificate: " << (rep.passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

/// Static planar figure: sets (class "set"), points (class "point") and the
/// k*m connecting segments (class "link"). Only dimension 2 is supported.
inline std::string render_svg(const ProblemInstance &inst, const Configuration &z, const std::string &title = {}) {
  if (inst.dim() != 2) throw Error(ErrorKind::Unsupported, "figures are drawn for planar scenes only");
  check_shape(inst, z);

  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  auto grow_set = [&](const ConvexSet &s) {
    if (const auto *b = s.as<Ball>()) {
      grow(b->center[0] - b->radius, b->center[1] - b->radius);
      grow(b->center[0] + b->radius, b->center[1] + b->radius);
    } else if (const auto *b = s.as<Box>()) {
      grow(b->center[0] - b->half_widths[0], b->center[1] - b->half_widths[1]);
      grow(b->center[0] + b->half_widths[0], b->center[1] + b->half_widths[1]);
    } else if (const auto *g = s.as<Segment>()) {
      grow(g->a[0], g->a[1]);
      grow(g->b[0], g->b[1]);
    } else if (const auto *p = s.as<Singleton>()) {
      grow(p->p[0], p->p[1]);
    }
  };
  for (const auto &s : inst.feasible()) grow_set(s);
  for (const auto &s : inst.targets()) grow_set(s);
  for (const auto &p : z.xs) grow(p[0], p[1]);
  for (const auto &p : z.ys) grow(p[0], p[1]);
  const double pad = 0.08 * std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  lo_x -= pad;
  lo_y -= pad;
  hi_x += pad;
  hi_y += pad;

  const double scale = 600.0 / std::max(hi_x - lo_x, hi_y - lo_y);
  const double width = (hi_x - lo_x) * scale, height = (hi_y - lo_y) * scale;
  auto sx = [&](double x) { return fixed((x - lo_x) * scale, 2); };
  auto sy = [&](double y) { return fixed((hi_y - y) * scale, 2); };
  auto len = [&](double d) { return fixed(d * scale, 2); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
      << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 2) << " " << fixed(height, 2) << "\">\n";
  if (!title.empty()) out << "  <title>" << title << "</title>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto draw_set = [&](const ConvexSet &s, bool target, std::size_t idx) {
    const std::string cls = std::string("set ") + (target ? "target" : "feasible");
    const std::string stroke = target ? "#b4441b" : "#1b5fb4";
    const std::string fill = target ? "#f6d9cc" : "#cfe0f6";
    const std::string id = (target ? "C_" : "S_") + std::to_string(idx + 1);
    if (const auto *b = s.as<Ball>()) {
      out << "  <circle class=\"" << cls << "\" id=\"" << id << "\" cx=\"" << sx(b->center[0]) << "\" cy=\""
          << sy(b->center[1]) << "\" r=\"" << len(b->radius) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
          << "\"/>\n";
    } else if (const auto *b = s.as<Box>()) {
      out << "  <rect class=\"" << cls << "\" id=\"" << id << "\" x=\"" << sx(b->center[0] - b->half_widths[0])
          << "\" y=\"" << sy(b->center[1] + b->half_widths[1]) << "\" width=\"" << len(2 * b->half_widths[0])
          << "\" height=\"" << len(2 * b->half_widths[1]) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
          << "\"/>\n";
    } else if (const auto *g = s.as<Segment>()) {
      out << "  <line class=\"" << cls << "\" id=\"" << id << "\" x1=\"" << sx(g->a[0]) << "\" y1=\"" << sy(g->a[1])
          << "\" x2=\"" << sx(g->b[0]) << "\" y2=\"" << sy(g->b[1]) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"3\"/>\n";
    } else if (const auto *p = s.as<Singleton>()) {
      out << "  <rect class=\"" << cls << "\" id=\"" << id << "\" x=\"" << fixed((p->p[0] - lo_x) * scale - 5, 2)
          << "\" y=\"" << fixed((hi_y - p->p[1]) * scale - 5, 2) << "\" width=\"10\" height=\"10\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\"/>\n";
    } else if (const auto *h = s.as<Halfspace>()) {
      // Boundary line <normal, z> = offset clipped to the view.
      const Point &a = h->normal;
      std::vector<std::pair<double, double>> hits;
      auto try_x = [&](double x) {
        if (a[1] == 0) return;
        const double y = (h->offset - a[0] * x) / a[1];
        if (y >= lo_y && y <= hi_y) hits.emplace_back(x, y);
      };
      auto try_y = [&](double y) {
        if (a[0] == 0) return;
        const double x = (h->offset - a[1] * y) / a[0];
        if (x >= lo_x && x <= hi_x) hits.emplace_back(x, y);
      };
      try_x(lo_x);
      try_x(hi_x);
      try_y(lo_y);
      try_y(hi_y);
      if (hits.size() >= 2)
        out << "  <line class=\"" << cls << "\" id=\"" << id << "\" x1=\"" << sx(hits[0].first) << "\" y1=\""
            << sy(hits[0].second) << "\" x2=\"" << sx(hits[1].first) << "\" y2=\"" << sy(hits[1].second)
            << "\" stroke=\"" << stroke << "\" stroke-dasharray=\"6 4\"/>\n";
      else
        out << "  <g class=\"" << cls << "\" id=\"" << id << "\"/>\n";
    }
  };
  for (std::size_t i = 0; i < inst.k(); ++i) draw_set(inst.feasible(i), false, i);
  for (std::size_t j = 0; j < inst.m(); ++j) draw_set(inst.target(j), true, j);

  for (const auto &x : z.xs)
    for (const auto &y : z.ys)
      out << "  <line class=\"link\" x1=\"" << sx(x[0]) << "\" y1=\"" << sy(x[1]) << "\" x2=\"" << sx(y[0])
          << "\" y2=\"" << sy(y[1]) << "\" stroke=\"#777777\" stroke-width=\"0.8\"/>\n";

  auto draw_point = [&](const Point &p, bool target, std::size_t idx) {
    const std::string label = point_label(target, idx);
    out << "  <circle class=\"point " << (target ? "target" : "feasible") << "\" id=\"" << label << "\" cx=\""
        << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"4\" fill=\"" << (target ? "#b4441b" : "#1b5fb4")
        << "\"/>\n";
    out << "  <text x=\"" << fixed((p[0] - lo_x) * scale + 6, 2) << "\" y=\"" << fixed((hi_y - p[1]) * scale - 6, 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
  };
  for (std::size_t i = 0; i < z.xs.size(); ++i) draw_point(z.xs[i], false, i);
  for (std::size_t j = 0; j < z.ys.size(); ++j) draw_point(z.ys[j], true, j);
  out << "</svg>\n";
  return out.str();
}

} // namespace heron
