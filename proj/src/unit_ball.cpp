#include "slitnorm/unit_ball.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"

namespace slitnorm {

const char* vertex_kind_name(VertexKind k) {
  return k == VertexKind::kVisible ? "Visible" : "ChildOfVisible";
}

bool slope_less(const HClass& a, const HClass& b) {
  return static_cast<__int128>(a.n) * b.m < static_cast<__int128>(b.n) * a.m;
}

namespace {

// Denominator first, then slope: the canonical-parent preference.
bool parent_preferred(const HClass& a, const HClass& b) {
  if (a.m != b.m) return a.m < b.m;
  return slope_less(a, b);
}

// Classes next to v that generate its child chains k*v + P.
std::vector<HClass> chain_bases(const HClass& v) {
  if (v.m == 0) return {};
  if (v.m == 1) return {{1, v.n - 1}, {1, v.n + 1}};
  ClassParents p = class_parents(v.m, v.n);
  return {{p.low_m, p.low_n}, {p.high_m, p.high_n}};
}

}  // namespace

std::vector<VertexEntry> enumerate_vertices(const VerticalSlitTorus& t, double max_norm) {
  if (!(max_norm >= 1.0)) throw Error(ErrorCode::kPreconditionViolated, "max_norm must be >= 1");
  std::map<HClass, VertexEntry> found;
  std::vector<HClass> visible;
  for (std::int64_t m = 0; t.column_visible(m); ++m) {
    for (std::int64_t n = 0; std::hypot(m, n) <= max_norm; ++n) {
      HClass h{m, n};
      if (!h.is_primitive()) continue;
      visible.push_back(h);
      found[h] = {h, std::hypot(static_cast<double>(m), static_cast<double>(n)), VertexKind::kVisible,
                  {}, 0};
    }
  }
  for (const HClass& v : visible) {
    for (const HClass& base : chain_bases(v)) {
      for (std::int64_t k = 1;; ++k) {
        HClass c = k * v + base;
        if (c.m < 0 || c.n < 0) break;
        if (std::hypot(static_cast<double>(c.m), static_cast<double>(c.n)) > max_norm) break;
        if (t.column_visible(c.m)) continue;  // already listed as visible
        if (classify_direction(t, c) != DirectionKind::kVertex) continue;
        double norm = stable_norm(t, c).value;
        if (norm > max_norm) continue;
        auto it = found.find(c);
        if (it == found.end()) {
          found[c] = {c, norm, VertexKind::kChildOfVisible, v, k};
        } else if (parent_preferred(v, it->second.parent)) {
          it->second.parent = v;
          it->second.k = k;
        }
      }
    }
  }
  std::vector<VertexEntry> out;
  out.reserve(found.size());
  for (auto& [cls, e] : found) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const VertexEntry& a, const VertexEntry& b) { return slope_less(a.cls, b.cls); });
  return out;
}

namespace {

HClass nearest_slope(double slope, std::int64_t max_den) {
  ContinuedFraction cf = continued_fraction(slope, 40, 1e-14);
  HClass best{1, 0};
  for (const auto& c : cf.convergents) {
    if (c.den() > max_den) break;
    best = {to_int64(c.den()), to_int64(c.num())};
  }
  return best;
}

}  // namespace

std::vector<ProfileSample> deviation_profile(const VerticalSlitTorus& t, int octant_samples) {
  if (octant_samples < 2) throw Error(ErrorCode::kPreconditionViolated, "need at least 2 samples");
  std::map<std::pair<std::int64_t, std::int64_t>, HClass> classes;  // keyed for dedup
  auto add = [&](HClass h) { classes[{h.m, h.n}] = h; };
  for (std::int64_t m = 1; m <= octant_samples; ++m) {
    for (std::int64_t n = 0; n <= m; ++n) {
      if (HClass{m, n}.is_primitive()) add({m, n});
    }
  }
  const double quarter = std::numbers::pi / 4.0;
  for (int i = 0; i < octant_samples; ++i) {
    double theta = quarter * i / (octant_samples - 1);
    add(nearest_slope(std::tan(theta), 1000));
  }
  std::vector<ProfileSample> out;
  out.reserve(classes.size());
  for (auto& [key, h] : classes) {
    ProfileSample s;
    s.cls = h;
    s.coord = std::atan2(static_cast<double>(h.n), static_cast<double>(h.m)) / quarter;
    s.visible = is_visible(t, h);
    s.kind = classify_direction(t, h);
    double norm = stable_norm(t, h).value;
    s.gap = s.visible ? 0.0 : 1.0 - std::hypot(static_cast<double>(h.m), static_cast<double>(h.n)) / norm;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const ProfileSample& a, const ProfileSample& b) {
    return slope_less(a.cls, b.cls);
  });
  return out;
}

std::vector<Point> boundary_polyline(const VerticalSlitTorus& t, std::int64_t max_denominator) {
  if (max_denominator < 1) throw Error(ErrorCode::kPreconditionViolated, "max_denominator must be >= 1");
  std::vector<HClass> dirs;
  for (std::int64_t m = 0; m <= max_denominator; ++m) {
    for (std::int64_t n = 0; n <= max_denominator; ++n) {
      HClass h{m, n};
      if (h.is_primitive() && classify_direction(t, h) == DirectionKind::kVertex) dirs.push_back(h);
    }
  }
  std::sort(dirs.begin(), dirs.end(), slope_less);
  std::vector<Point> hull;
  for (const HClass& h : dirs) {
    double norm = stable_norm(t, h).value;
    Point p{h.m / norm, h.n / norm};
    // Keep only strict left turns while walking counter-clockwise.
    while (hull.size() >= 2) {
      Point a = hull[hull.size() - 2], b = hull.back();
      double turn = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (turn > 1e-15) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

double norm_of_vector(const VerticalSlitTorus& t, Point v) {
  const double x = std::abs(v.x), y = std::abs(v.y);
  if (x == 0.0 && y == 0.0) return 0.0;
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  // Stern-Brocot descent on the cone between L and R (det(L, R) = 1) until the
  // mediant is interior to a flat, where the norm is linear. Runs of steps
  // toward a visible class are taken in one jump.
  constexpr std::int64_t kMaxJump = 1000000;
  HClass L{1, 0}, R{0, 1};
  auto side = [&](const HClass& h) { return static_cast<double>(h.m) * y - static_cast<double>(h.n) * x; };
  auto linear = [&](const HClass& a, const HClass& b) {
    // v = s*a + r*b. When a and b are long and close together, s and r are
    // each only known to about |a| ulps, so fold them through b - a instead.
    const double na = stable_norm(t, a).value, nb = stable_norm(t, b).value;
    const double s = x * static_cast<double>(b.n) - y * static_cast<double>(b.m);
    const double r = static_cast<double>(a.m) * y - static_cast<double>(a.n) * x;
    const HClass e = b - a;
    const double le = std::hypot(static_cast<double>(e.m), static_cast<double>(e.n));
    if (le < std::min(std::hypot(double(a.m), double(a.n)), std::hypot(double(b.m), double(b.n)))) {
      const double sum = x * static_cast<double>(e.n) - y * static_cast<double>(e.m);
      return s * (na - nb) + sum * nb;
    }
    return s * na + r * nb;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    const HClass M = L + R;
    const double d = side(M);
    if (d == 0.0) return x / static_cast<double>(M.m) * stable_norm(t, M).value;
    if (classify_direction(t, M) == DirectionKind::kFlatInterior) return linear(L, R);
    if (d > 0) {
      L = M;
      if (t.column_visible(R.m)) {
        double steps = std::ceil(side(L) / -side(R)) - 1.0;
        if (steps >= kMaxJump) return linear(L + kMaxJump * R, R);
        if (steps >= 1.0) L = L + static_cast<std::int64_t>(steps) * R;
      }
    } else {
      R = M;
      if (t.column_visible(L.m)) {
        double steps = std::ceil(-side(R) / side(L)) - 1.0;
        if (steps >= kMaxJump) return linear(L, R + kMaxJump * L);
        if (steps >= 1.0) R = R + static_cast<std::int64_t>(steps) * L;
      }
    }
  }
  return linear(L, R);
}

}  // namespace slitnorm
