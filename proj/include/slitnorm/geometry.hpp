#pragma once

#include <cmath>
#include <vector>

namespace slitnorm {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double norm2(Point p) { return std::hypot(p.x, p.y); }

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }
  double det() const { return a * d - b * c; }
  Point apply(Point p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  Mat2 inverse() const {
    double k = 1.0 / det();
    return {k * d, -k * b, -k * c, k * a};
  }
};

double polyline_length(const std::vector<Point>& pts);

}  // namespace slitnorm
