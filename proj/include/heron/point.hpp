#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "heron/error.hpp"

namespace heron {

/// A point (or vector) in R^n. Small, value-semantic, dimension carried at runtime.
class Point {
public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double &operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double> &vec() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_finite() const {
    return std::all_of(coords_.begin(), coords_.end(), [](double c) { return std::isfinite(c); });
  }

  Point &operator+=(const Point &o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Point &operator-=(const Point &o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Point &operator*=(double s) {
    for (double &c : coords_) c *= s;
    return *this;
  }
  Point &operator/=(double s) {
    for (double &c : coords_) c /= s;
    return *this;
  }

  friend Point operator+(Point a, const Point &b) { return a += b; }
  friend Point operator-(Point a, const Point &b) { return a -= b; }
  friend Point operator-(Point a) { return a *= -1.0; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator/(Point a, double s) { return a /= s; }
  friend bool operator==(const Point &a, const Point &b) = default;

  void check_same(const Point &o) const {
    if (o.dim() != dim())
      throw Error(ErrorKind::DimensionMismatch,
                  "expected dimension " + std::to_string(dim()) + ", got " +
                      std::to_string(o.dim()));
  }

private:
  std::vector<double> coords_;
};

inline double dot(const Point &a, const Point &b) {
  a.check_same(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(const Point &a) { return dot(a, a); }
inline double norm(const Point &a) { return std::sqrt(squared_norm(a)); }
inline double distance(const Point &a, const Point &b) { return norm(a - b); }

inline bool is_zero(const Point &a) {
  return std::all_of(a.begin(), a.end(), [](double c) { return c == 0.0; });
}

inline std::string to_string(const Point &p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ", ";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

} // namespace heron
