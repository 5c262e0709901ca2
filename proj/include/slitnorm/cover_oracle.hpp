#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slitnorm/geometry.hpp"
#include "slitnorm/hclass.hpp"
#include "slitnorm/rational.hpp"

namespace slitnorm {

/// A slit endpoint in the cover: lattice point (p, q), or its tip
/// (p, q) + slit when `tip` is set.
struct Node {
  std::int64_t p = 0;
  std::int64_t q = 0;
  bool tip = false;
  friend bool operator==(const Node&, const Node&) = default;
};

/**
 * The plane with every lattice translate of one open slit removed.
 *
 * Coordinates are lattice coordinates; `metric` maps them to the Euclidean
 * plane where lengths are measured (identity for the square torus). With
 * rational slit data all predicates are exact.
 */
class CoverScene {
 public:
  static CoverScene vertical(const Rational& rho, const Mat2& metric = Mat2::identity());
  static CoverScene rational(const Rational& beta, const Rational& alpha,
                             const Mat2& metric = Mat2::identity());
  static CoverScene real(double beta, double alpha, const Mat2& metric = Mat2::identity());

  bool exact() const { return exact_; }
  Point slit() const { return {beta_, alpha_}; }
  const Mat2& metric() const { return metric_; }
  /// Lattice cells of padding around the bounding box of origin and target.
  int padding() const { return pad_; }
  void set_padding(int pad) { pad_ = pad; }

  Point position(const Node& v) const;  // lattice coordinates
  Point plane(const Node& v) const { return metric_.apply(position(v)); }

  // Scaled integer data for the exact predicates.
  std::int64_t scale() const { return q_; }
  std::int64_t slit_x() const { return bn_; }
  std::int64_t slit_y() const { return an_; }

 private:
  CoverScene() = default;
  void validate() const;

  bool exact_ = false;
  double beta_ = 0.0, alpha_ = 0.0;
  std::int64_t q_ = 1, bn_ = 0, an_ = 0;
  Mat2 metric_;
  int pad_ = 1;
};

struct Clearance {
  bool clear = true;
  /// Float scenes only: some orientation test fell within tolerance of zero.
  bool near_boundary = false;
};

/// Closed segment a-b against all open slits. Exact for rational scenes.
Clearance segment_clearance(const CoverScene& s, const Node& a, const Node& b);
bool segment_clear(const CoverScene& s, const Node& a, const Node& b);
/// Arbitrary real endpoints, always decided in floating point.
bool segment_clear(const CoverScene& s, Point a, Point b);

/// Exact scenes only: the generic orientation test with the vertical-slit
/// shortcut disabled. Used to cross-check the two code paths.
bool segment_clear_generic(const CoverScene& s, const Node& a, const Node& b);

struct PathResult {
  double length = 0.0;
  std::vector<Point> polyline;  // plane coordinates
  std::vector<Node> nodes;
  std::int64_t nodes_expanded = 0;
  bool near_boundary = false;
  int padding_used = 1;
};

/// Shortest path from the origin to the lattice point `target`.
/// Throws kZeroClass, kTargetUnreachable, kWindowTooSmall.
PathResult shortest_path(const CoverScene& s, const HClass& target);

/// gcd times the shortest path length of the primitive part.
double oracle_norm(const CoverScene& s, const HClass& h);

struct VisibilityEdge {
  Node from;
  Node to;
  double weight = 0.0;
};

/// Every clear edge between the nodes the search for `target` considered.
std::vector<VisibilityEdge> visibility_edges(const CoverScene& s, const HClass& target);

}  // namespace slitnorm
