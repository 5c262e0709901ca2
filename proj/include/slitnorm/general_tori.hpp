#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "slitnorm/geometry.hpp"
#include "slitnorm/hclass.hpp"
#include "slitnorm/rational.hpp"
#include "slitnorm/torus.hpp"

namespace slitnorm {

/// Determinant-one linear map, with exact entries when built from rationals.
class LinearMap {
 public:
  /// Row-major [[a, b], [c, d]]; throws kNotUnimodular unless ad - bc = 1.
  static LinearMap exact(const Rational& a, const Rational& b, const Rational& c,
                         const Rational& d);
  /// Throws kNotUnimodular unless |det - 1| <= 1e-12.
  static LinearMap real(double a, double b, double c, double d);

  const Mat2& mat() const { return m_; }
  bool is_exact() const { return q_.has_value(); }
  const std::array<Rational, 4>& entries() const { return *q_; }

 private:
  Mat2 m_;
  std::optional<std::array<Rational, 4>> q_;
};

enum class SlopeKind { kVertical, kRational, kIrrational };

/**
 * Unit square torus with one slit along (beta, alpha).
 *
 * Built from rationals the slope is decided exactly; built from doubles the
 * slope is treated as irrational and every predicate carries a tolerance.
 */
class GeneralSlitTorus {
 public:
  static GeneralSlitTorus exact(const Rational& beta, const Rational& alpha);
  static GeneralSlitTorus real(double beta, double alpha);

  SlopeKind slope_kind() const { return kind_; }
  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  double length() const { return std::hypot(beta_, alpha_); }
  bool is_exact() const { return exact_beta_.has_value(); }
  const Rational& exact_beta() const { return *exact_beta_; }
  const Rational& exact_alpha() const { return *exact_alpha_; }

  /// Primitive integer direction (q, p) of the slit; rational slopes only.
  HClass direction() const;

 private:
  SlopeKind kind_ = SlopeKind::kIrrational;
  double beta_ = 0.0, alpha_ = 0.0;
  std::optional<Rational> exact_beta_, exact_alpha_;
};

/// Vertical-slit combinatorics, lengths measured after the map.
NormCertificate norm_sheared(const LinearMap& map, const Rational& rho, const HClass& h);

/// Integer change of basis taking a vertical slit of length rho_prime to the
/// slit of G: columns (v, u) and (q, p) with vp - uq = 1, u in [0, |p|).
struct Pullback {
  std::int64_t v, q, u, p;  // row-major [[v, q], [u, p]]
  Rational rho_prime;
  Mat2 mat() const {
    return {static_cast<double>(v), static_cast<double>(q), static_cast<double>(u),
            static_cast<double>(p)};
  }
  HClass apply(const HClass& h) const { return {v * h.m + q * h.n, u * h.m + p * h.n}; }
  HClass pull(const HClass& h) const { return {p * h.m - q * h.n, -u * h.m + v * h.n}; }
};

/// Throws kSlopeNotRational for irrational slopes.
Pullback pullback(const GeneralSlitTorus& g);

NormCertificate rational_slit_norm(const GeneralSlitTorus& g, const HClass& h);

/// |m*alpha - n*beta| <= 1, exact for rational data.
bool rational_visible(const GeneralSlitTorus& g, const HClass& h);

enum class Visibility { kVisible, kNotVisible, kIndeterminate };
const char* visibility_name(Visibility v);

/// |m*alpha - n*beta| <= 1 within 1e-12; values that close to the boundary
/// come back as kIndeterminate.
Visibility irrational_visible(const GeneralSlitTorus& g, const HClass& h);

struct IrrationalOptions {
  int convergent_depth = 20;
  int confirm_depth = 25;
};

struct IrrationalNorm {
  NormCertificate cert;
  /// The two-term alternatives differed by less than the tolerance.
  bool near_tie = false;
};

/// Non-visible primitive classes only (kPreconditionViolated otherwise).
IrrationalNorm irrational_norm(const GeneralSlitTorus& g, const HClass& h,
                               const IrrationalOptions& opt = {});

/// Any nonzero class on any slit torus.
NormCertificate general_norm(const GeneralSlitTorus& g, const HClass& h,
                             const IrrationalOptions& opt = {});

/// Vertex / flat classification for any slit torus.
DirectionKind general_classify(const GeneralSlitTorus& g, const HClass& h);

}  // namespace slitnorm
