#pragma once

#include <cstdint>
#include <vector>

#include "slitnorm/geometry.hpp"
#include "slitnorm/hclass.hpp"
#include "slitnorm/torus.hpp"

namespace slitnorm {

enum class VertexKind { kVisible, kChildOfVisible };
const char* vertex_kind_name(VertexKind k);

struct VertexEntry {
  HClass cls;
  double norm = 0.0;
  VertexKind kind = VertexKind::kVisible;
  /// Canonical visible parent and chain index for children; zero otherwise.
  HClass parent;
  std::int64_t k = 0;
};

/// Counter-clockwise angular order for classes in the closed first quadrant.
bool slope_less(const HClass& a, const HClass& b);

/// Primitive first-quadrant vertex directions with stable norm <= max_norm,
/// sorted by slope.
std::vector<VertexEntry> enumerate_vertices(const VerticalSlitTorus& t, double max_norm);

struct ProfileSample {
  double coord = 0.0;  // angle / (pi/4)
  double gap = 0.0;    // 1 - |h|_2 / |h|
  HClass cls;
  bool visible = false;
  DirectionKind kind = DirectionKind::kVertex;
};

/// First-octant samples: every slope of the Farey sequence of order
/// `octant_samples`, plus `octant_samples` equally spaced angles rounded to
/// the nearest slope with denominator <= 1000. Sorted by coordinate.
std::vector<ProfileSample> deviation_profile(const VerticalSlitTorus& t, int octant_samples);

/// Outer hull of the normalized first-quadrant vertex directions with
/// |m|, |n| <= max_denominator, from (1,0) to (0,1).
std::vector<Point> boundary_polyline(const VerticalSlitTorus& t, std::int64_t max_denominator);

/// Stable norm of an arbitrary real vector, exact on flats.
double norm_of_vector(const VerticalSlitTorus& t, Point v);

}  // namespace slitnorm
