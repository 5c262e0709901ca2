#include "slitnorm/general_tori.hpp"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"

namespace slitnorm {

namespace {

constexpr double kTol = 1e-12;

// x, y with a*x + b*y = gcd(a, b) >= 0.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (r0 < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
}

void map_classes(NormCertificate& c, const Pullback& pb) {
  c.cls = pb.apply(c.cls);
  for (auto& child : c.children) map_classes(child, pb);
}

NormCertificate with_multiplicity(NormCertificate c, const HClass& h) {
  std::int64_t k = h.multiplicity();
  c.cls = h;
  c.multiplicity = k;
  c.value *= static_cast<double>(k);
  return c;
}

}  // namespace

LinearMap LinearMap::exact(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d) {
  Rational det = a * d - b * c;
  if (det != Rational(1)) {
    throw Error(ErrorCode::kNotUnimodular, "determinant " + det.str());
  }
  LinearMap m;
  m.m_ = {a.to_double(), b.to_double(), c.to_double(), d.to_double()};
  m.q_ = std::array<Rational, 4>{a, b, c, d};
  return m;
}

LinearMap LinearMap::real(double a, double b, double c, double d) {
  LinearMap m;
  m.m_ = {a, b, c, d};
  if (!(std::abs(m.m_.det() - 1.0) <= kTol)) {
    throw Error(ErrorCode::kNotUnimodular, "determinant " + std::to_string(m.m_.det()));
  }
  return m;
}

GeneralSlitTorus GeneralSlitTorus::exact(const Rational& beta, const Rational& alpha) {
  if (beta.is_zero() && alpha.is_zero()) throw Error(ErrorCode::kInvalidTorus, "zero slit vector");
  GeneralSlitTorus g;
  g.kind_ = beta.is_zero() ? SlopeKind::kVertical : SlopeKind::kRational;
  g.exact_beta_ = beta;
  g.exact_alpha_ = alpha;
  g.beta_ = beta.to_double();
  g.alpha_ = alpha.to_double();
  (void)pullback(g);  // validates the slit against the lattice
  return g;
}

GeneralSlitTorus GeneralSlitTorus::real(double beta, double alpha) {
  if (!std::isfinite(beta) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidTorus, "non-finite slit vector");
  }
  if (beta == 0.0 || alpha == 0.0) {
    throw Error(ErrorCode::kInvalidTorus, "axis-parallel slits need exact rational data");
  }
  GeneralSlitTorus g;
  g.kind_ = SlopeKind::kIrrational;
  g.beta_ = beta;
  g.alpha_ = alpha;
  return g;
}

HClass GeneralSlitTorus::direction() const {
  if (!is_exact()) throw Error(ErrorCode::kSlopeNotRational, "slit slope is not rational");
  BigInt d = boost::multiprecision::lcm(exact_beta_->den(), exact_alpha_->den());
  BigInt x = exact_beta_->num() * (d / exact_beta_->den());
  BigInt y = exact_alpha_->num() * (d / exact_alpha_->den());
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(x), boost::multiprecision::abs(y));
  return {to_int64(x / g), to_int64(y / g)};
}

Pullback pullback(const GeneralSlitTorus& g) {
  if (!g.is_exact()) throw Error(ErrorCode::kSlopeNotRational, "slit slope is not rational");
  HClass dir = g.direction();
  Pullback pb{};
  pb.q = dir.m;
  pb.p = dir.n;
  if (pb.p == 0) {
    pb.v = 0;
    pb.u = -pb.q;
  } else {
    // p*x + q*y = 1, so v = x, u = -y satisfies vp - uq = 1.
    std::int64_t x, y;
    ext_gcd(pb.p, pb.q, x, y);
    pb.v = x;
    pb.u = -y;
    std::int64_t ap = std::abs(pb.p);
    std::int64_t r = ((pb.u % ap) + ap) % ap;
    std::int64_t t = (r - pb.u) / pb.p;  // shift (v, u) by t * (q, p)
    pb.u = r;
    pb.v += t * pb.q;
  }
  pb.rho_prime = pb.q != 0 ? g.exact_beta() / Rational(pb.q) : g.exact_alpha() / Rational(pb.p);
  if (pb.rho_prime >= Rational(1)) {
    throw Error(ErrorCode::kInvalidTorus,
                "slit covers a full lattice period along its direction");
  }
  return pb;
}

NormCertificate norm_sheared(const LinearMap& map, const Rational& rho, const HClass& h) {
  return stable_norm_mapped(VerticalSlitTorus(rho), h, map.mat());
}

NormCertificate rational_slit_norm(const GeneralSlitTorus& g, const HClass& h) {
  if (g.slope_kind() == SlopeKind::kIrrational) {
    throw Error(ErrorCode::kSlopeNotRational, "slit slope is not rational");
  }
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  Pullback pb = pullback(g);
  NormCertificate c = stable_norm_mapped(VerticalSlitTorus(pb.rho_prime), pb.pull(h), pb.mat());
  map_classes(c, pb);
  return c;
}

bool rational_visible(const GeneralSlitTorus& g, const HClass& h) {
  require_primitive(h);
  if (!g.is_exact()) throw Error(ErrorCode::kSlopeNotRational, "slit slope is not rational");
  Rational w = Rational(h.m) * g.exact_alpha() - Rational(h.n) * g.exact_beta();
  if (w < Rational(0)) w = -w;
  return w <= Rational(1);
}

const char* visibility_name(Visibility v) {
  switch (v) {
    case Visibility::kVisible: return "Visible";
    case Visibility::kNotVisible: return "NotVisible";
    case Visibility::kIndeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

long double shadow(const GeneralSlitTorus& g, const HClass& h) {
  return static_cast<long double>(h.m) * g.alpha() - static_cast<long double>(h.n) * g.beta();
}

Visibility shadow_visibility(long double w) {
  long double a = std::abs(w);
  if (std::abs(a - 1.0L) <= kTol) return Visibility::kIndeterminate;
  return a < 1.0L ? Visibility::kVisible : Visibility::kNotVisible;
}

bool visible_or_throw(const GeneralSlitTorus& g, const HClass& h) {
  Visibility v = shadow_visibility(shadow(g, h));
  if (v == Visibility::kIndeterminate) {
    throw Error(ErrorCode::kVisibilityIndeterminate, "class " + h.str() + " sits on the boundary");
  }
  return v == Visibility::kVisible;
}

using ParentPair = std::pair<HClass, HClass>;

ParentPair sorted_pair(HClass a, HClass b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

// Parents of h (shadow w(h) > 0): u with det(u, h) = 1 and 0 < w(u) < w(h),
// and u' = h - u.
ParentPair slit_frame_parents(const GeneralSlitTorus& g, const HClass& h) {
  std::int64_t x, y;
  ext_gcd(h.n, -h.m, x, y);  // x*n - y*m = 1
  HClass u{x, y};
  const long double wh = shadow(g, h);
  long double wu = shadow(g, u);
  auto k = static_cast<std::int64_t>(std::floor(wu / wh));
  u = u - k * h;
  wu = shadow(g, u);
  // Guard against the floor landing one step off.
  while (wu <= 0) {
    u = u + h;
    wu = shadow(g, u);
  }
  while (wu >= wh) {
    u = u - h;
    wu = shadow(g, u);
  }
  if (wu <= kTol || wh - wu <= kTol) {
    throw Error(ErrorCode::kVisibilityIndeterminate, "parents of " + h.str() + " are not separated");
  }
  return {u, h - u};
}

// Parents read off an exact rational approximation of the slope: pull h back
// to the vertical model of the approximating torus, take Farey parents there
// and push them forward. Empty when the approximation cannot decide.
std::optional<ParentPair> convergent_parents(const GeneralSlitTorus& g, const HClass& h, int depth) {
  const double slope = g.alpha() / g.beta();
  ContinuedFraction cf = continued_fraction(slope, depth, 1e-15);
  const BigInt cap = BigInt(1) << 40;
  std::optional<Rational> conv;
  for (const auto& c : cf.convergents) {
    if (c.den() > cap || boost::multiprecision::abs(c.num()) > cap) break;
    conv = c;
  }
  if (!conv) return std::nullopt;
  __int128 q = to_int64(conv->den()), p = to_int64(conv->num());
  if (g.beta() < 0) {
    q = -q;
    p = -p;
  }
  std::int64_t x, y;
  ext_gcd(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q), x, y);
  __int128 v = x, u = -y;
  __int128 hm = p * h.m - q * h.n;
  __int128 hn = -u * h.m + v * h.n;
  if (hm == 0 || hm == 1 || hm == -1) return std::nullopt;
  bool flip = hm < 0;
  if (flip) {
    hm = -hm;
    hn = -hn;
  }
  if (hm > (__int128{1} << 62) || hn > (__int128{1} << 62) || hn < -(__int128{1} << 62)) {
    return std::nullopt;
  }
  ClassParents cp = class_parents(static_cast<std::int64_t>(hm), static_cast<std::int64_t>(hn));
  auto push = [&](std::int64_t a, std::int64_t b) {
    __int128 m = v * a + q * b, n = u * a + p * b;
    HClass r{static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)};
    return flip ? -r : r;
  };
  return sorted_pair(push(cp.low_m, cp.low_n), push(cp.high_m, cp.high_n));
}

struct IrrationalSolver {
  const GeneralSlitTorus& g;
  IrrationalOptions opt;
  CoverScene scene;
  bool near_tie = false;

  IrrationalSolver(const GeneralSlitTorus& torus, const IrrationalOptions& o)
      : g(torus), opt(o), scene(CoverScene::real(torus.beta(), torus.alpha())) {}

  ParentPair parents(const HClass& h) {
    ParentPair frame = slit_frame_parents(g, h);
    auto a = convergent_parents(g, h, opt.convergent_depth);
    auto b = convergent_parents(g, h, opt.confirm_depth);
    ParentPair want = sorted_pair(frame.first, frame.second);
    if ((a && b && *a != *b) || (b && *b != want)) {
      throw Error(ErrorCode::kVisibilityIndeterminate,
                  "parents of " + h.str() + " change with the convergent depth");
    }
    return frame;
  }

  bool path_clear(const std::vector<Point>& pts) const {
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!segment_clear(scene, pts[i - 1], pts[i])) return false;
    }
    return true;
  }

  NormCertificate solve(const HClass& h) {
    if (shadow(g, h) < 0) return negate_certificate(solve(-h));
    NormCertificate c;
    c.cls = h;
    c.endpoint = {static_cast<double>(h.m), static_cast<double>(h.n)};
    if (visible_or_throw(g, h)) {
      c.kind = CertKind::kVisibleSegment;
      c.value = norm2(c.endpoint);
      return c;
    }
    auto [u, up] = parents(h);
    bool vis_u = visible_or_throw(g, u), vis_up = visible_or_throw(g, up);
    if (!vis_u && !vis_up) {
      c.kind = CertKind::kFlatSplit;
      c.children.push_back(solve(u));
      c.children.push_back(solve(up));
      c.value = c.children[0].value + c.children[1].value;
      return c;
    }
    // Bend at the tip of the slit at u (the parent with det(u, h) = +1), or at
    // the tip reached through the other decompositions of h into neighbors.
    const Point s{g.beta(), g.alpha()};
    const Point hp = c.endpoint;
    const HClass shifts[] = {u, -up, u + h};
    double best = 0.0;
    bool have = false;
    std::vector<double> clear_values;
    for (const HClass& base : shifts) {
      Point bend = Point{static_cast<double>(base.m), static_cast<double>(base.n)} + s;
      double value = norm2(bend) + norm2(hp - bend);
      if (!path_clear({{0, 0}, bend, hp})) continue;
      clear_values.push_back(value);
      if (!have || value < best) {
        best = value;
        c.bend = bend;
        have = true;
      }
    }
    if (!have) {
      throw Error(ErrorCode::kVisibilityIndeterminate, "no clear two-segment path for " + h.str());
    }
    for (double v : clear_values) {
      if (v != best && std::abs(v - best) <= 1e-9 * best) near_tie = true;
    }
    c.kind = CertKind::kTwoSegmentSimple;
    c.value = best;
    return c;
  }
};

}  // namespace

Visibility irrational_visible(const GeneralSlitTorus& g, const HClass& h) {
  require_primitive(h);
  return shadow_visibility(shadow(g, h));
}

IrrationalNorm irrational_norm(const GeneralSlitTorus& g, const HClass& h,
                               const IrrationalOptions& opt) {
  require_primitive(h);
  if (g.slope_kind() != SlopeKind::kIrrational) {
    throw Error(ErrorCode::kPreconditionViolated, "torus has a rational slope");
  }
  if (visible_or_throw(g, h)) {
    throw Error(ErrorCode::kPreconditionViolated, "class " + h.str() + " is visible");
  }
  IrrationalSolver solver(g, opt);
  IrrationalNorm out;
  out.cert = solver.solve(h);
  out.near_tie = solver.near_tie;
  return out;
}

NormCertificate general_norm(const GeneralSlitTorus& g, const HClass& h,
                             const IrrationalOptions& opt) {
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  if (g.slope_kind() != SlopeKind::kIrrational) return rational_slit_norm(g, h);
  IrrationalSolver solver(g, opt);
  return with_multiplicity(solver.solve(h.primitive()), h);
}

DirectionKind general_classify(const GeneralSlitTorus& g, const HClass& h) {
  require_primitive(h);
  if (g.slope_kind() != SlopeKind::kIrrational) {
    Pullback pb = pullback(g);
    return classify_direction(VerticalSlitTorus(pb.rho_prime), pb.pull(h));
  }
  if (visible_or_throw(g, h)) return DirectionKind::kVertex;
  HClass k = shadow(g, h) < 0 ? -h : h;
  auto [u, up] = slit_frame_parents(g, k);
  if (visible_or_throw(g, u) || visible_or_throw(g, up)) return DirectionKind::kVertex;
  return DirectionKind::kFlatInterior;
}

}  // namespace slitnorm
