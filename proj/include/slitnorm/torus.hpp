#pragma once

#include <cstdint>
#include <vector>

#include "slitnorm/geometry.hpp"
#include "slitnorm/hclass.hpp"
#include "slitnorm/rational.hpp"

namespace slitnorm {

/// Unit square torus with a vertical slit of length rho, 0 < rho < 1.
class VerticalSlitTorus {
 public:
  explicit VerticalSlitTorus(Rational rho);

  const Rational& rho() const { return rho_; }
  double rho_value() const { return rho_d_; }
  /// Exact test of |m| * rho <= 1.
  bool column_visible(std::int64_t m) const;
  /// Exact test of |m| * rho < 1.
  bool column_strictly_visible(std::int64_t m) const;

 private:
  Rational rho_;
  std::int64_t rho_num_;
  std::int64_t rho_den_;
  double rho_d_;
};

enum class CertKind { kVisibleSegment, kTwoSegmentSimple, kFlatSplit };
enum class DirectionKind { kVertex, kFlatInterior };

const char* cert_kind_name(CertKind k);
const char* direction_kind_name(DirectionKind k);

/**
 * Stable norm of a class together with the path that realizes it.
 *
 * Geometry is stored for the primitive part: `endpoint` is the image of the
 * primitive class in the plane and `bend` (two-segment case only) is the slit
 * endpoint where the path turns. The value already includes the multiplicity.
 */
struct NormCertificate {
  HClass cls;
  std::int64_t multiplicity = 1;
  double value = 0.0;
  CertKind kind = CertKind::kVisibleSegment;
  Point bend;
  Point endpoint;
  std::vector<NormCertificate> children;

  /// Lift of the closed curve starting at the origin, repeated
  /// `multiplicity` times.
  std::vector<Point> polyline() const;
};

double replay_length(const NormCertificate& cert);

/// Certificate of -h built from one of h: the reversed path shifted by -h.
NormCertificate negate_certificate(const NormCertificate& cert);

/// Requires a primitive class.
bool is_visible(const VerticalSlitTorus& t, const HClass& h);

NormCertificate stable_norm(const VerticalSlitTorus& t, const HClass& h);

/// Same combinatorics as stable_norm, with every length measured after the
/// linear map `map` is applied to the plane.
NormCertificate stable_norm_mapped(const VerticalSlitTorus& t, const HClass& h, const Mat2& map);

/// Visible classes are vertices. A non-visible class is a vertex when both
/// Farey parents are visible, or when one is and satisfies |m| rho < 1. A
/// lone visible parent with |m| rho = 1 gives a simple minimizer exactly as
/// long as the parent split, so the class lies inside a flat.
DirectionKind classify_direction(const VerticalSlitTorus& t, const HClass& h);

std::vector<Point> minimizing_path(const VerticalSlitTorus& t, const HClass& h);

}  // namespace slitnorm
