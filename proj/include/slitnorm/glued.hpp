#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "slitnorm/hclass.hpp"
#include "slitnorm/torus.hpp"
#include "slitnorm/unit_ball.hpp"

namespace slitnorm {

/// n >= 2 vertical slit tori joined by a flat cylinder of width w glued
/// along the slits. Throws kCylinderTooShort unless w > every rho.
class GluedSurface {
 public:
  GluedSurface(std::vector<VerticalSlitTorus> components, double cylinder_width);
  /// n copies of one torus.
  static GluedSurface copies(const VerticalSlitTorus& t, std::size_t n, double cylinder_width);

  std::size_t size() const { return components_.size(); }
  const VerticalSlitTorus& component(std::size_t i) const { return components_.at(i); }
  double cylinder_width() const { return width_; }

 private:
  std::vector<VerticalSlitTorus> components_;
  double width_;
};

/// One (m, n) block per component.
struct GluedClass {
  std::vector<HClass> blocks;

  bool is_zero() const;
  std::size_t nonzero_blocks() const;
  std::string str() const;
  /// "m1,n1;m2,n2;...". Throws kParseError.
  static GluedClass parse(std::string_view text);
  friend bool operator==(const GluedClass&, const GluedClass&) = default;
};

struct BlockCertificate {
  std::size_t component = 0;
  NormCertificate cert;
};

struct GluedNorm {
  double value = 0.0;
  std::vector<BlockCertificate> blocks;  // nonzero blocks only
};

/// Sum of the component norms of the nonzero blocks. Throws kZeroClass, and
/// kPreconditionViolated when the block count does not match.
GluedNorm glued_norm(const GluedSurface& s, const GluedClass& h);

/// Mixed classes are always flat; a single block inherits the component's
/// classification of its primitive part.
DirectionKind glued_classify(const GluedSurface& s, const GluedClass& h);

struct GluedVertex {
  std::size_t component = 0;
  VertexEntry entry;
  GluedClass embedded;
};

/// First-quadrant vertex directions of every component with norm <=
/// max_norm, component by component in slope order.
std::vector<GluedVertex> glued_vertices(const GluedSurface& s, double max_norm);

/// Throws kNotAdjacent unless a and b are consecutive vertices of the
/// component ball (both vertices, |det| = 1, and the segment between their
/// normalized points lies on the unit sphere).
void require_adjacent(const VerticalSlitTorus& t, const HClass& a, const HClass& b);

/**
 * Checks that l0*v1^ + l1*v2^ + l2*w1^ + l3*w2^ has glued norm 1, where
 * v1, v2 are adjacent vertices of component 0, w1, w2 of component 1 and ^
 * normalizes to the unit sphere. Blocks are evaluated with norm_of_vector.
 */
bool flat_face_check(const GluedSurface& s, const HClass& v1, const HClass& v2,
                     const HClass& w1, const HClass& w2, const std::array<double, 4>& weights,
                     double tol = 1e-9);

/// Cover-oracle length of a class with exactly one nonzero block. The other
/// components and the cylinder are never entered, so the scene is the
/// component's own cover.
double glued_oracle_norm(const GluedSurface& s, const GluedClass& h);

}  // namespace slitnorm
