#include "slitnorm/cover_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "slitnorm/errors.hpp"

namespace slitnorm {

namespace {

constexpr double kTol = 1e-12;

int sgn128(__int128 v) { return (v > 0) - (v < 0); }

__int128 orient(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
                std::int64_t cx, std::int64_t cy) {
  return static_cast<__int128>(bx - ax) * (cy - ay) - static_cast<__int128>(by - ay) * (cx - ax);
}

// Lattice columns p whose slit (x-extent [p + lo, p + hi]) can meet the x-range
// [xa, xb], and for each the rows q whose slit y-extent can meet the segment's
// y-range over that column. The callback decides the actual intersection.
template <class Fn>
void for_candidate_slits(double xa, double ya, double xb, double yb, double sx, double sy,
                         Fn&& fn) {
  if (xa > xb) {
    std::swap(xa, xb);
    std::swap(ya, yb);
  }
  const double sxlo = std::min(0.0, sx), sxhi = std::max(0.0, sx);
  const double sylo = std::min(0.0, sy), syhi = std::max(0.0, sy);
  const auto p_begin = static_cast<std::int64_t>(std::floor(xa - sxhi)) - 1;
  const auto p_end = static_cast<std::int64_t>(std::ceil(xb - sxlo)) + 1;
  const double dx = xb - xa;
  for (std::int64_t p = p_begin; p <= p_end; ++p) {
    double lo = std::max(xa, p + sxlo);
    double hi = std::min(xb, p + sxhi);
    if (lo > hi + 1e-9) continue;
    double y_lo, y_hi;
    if (dx <= 0.0) {
      y_lo = std::min(ya, yb);
      y_hi = std::max(ya, yb);
    } else {
      double y1 = ya + (yb - ya) * ((std::min(lo, hi) - xa) / dx);
      double y2 = ya + (yb - ya) * ((std::max(lo, hi) - xa) / dx);
      y_lo = std::min(y1, y2);
      y_hi = std::max(y1, y2);
    }
    const auto q_begin = static_cast<std::int64_t>(std::floor(y_lo - syhi)) - 1;
    const auto q_end = static_cast<std::int64_t>(std::ceil(y_hi - sylo)) + 1;
    for (std::int64_t q = q_begin; q <= q_end; ++q) {
      if (fn(p, q)) return;
    }
  }
}

bool incident(const Node& v, std::int64_t p, std::int64_t q) { return v.p == p && v.q == q; }

Clearance exact_generic(const CoverScene& s, const Node& a, const Node& b) {
  const std::int64_t Q = s.scale(), bn = s.slit_x(), an = s.slit_y();
  const std::int64_t ax = Q * a.p + (a.tip ? bn : 0), ay = Q * a.q + (a.tip ? an : 0);
  const std::int64_t bx = Q * b.p + (b.tip ? bn : 0), by = Q * b.q + (b.tip ? an : 0);
  const double fq = static_cast<double>(Q);
  bool blocked = false;
  for_candidate_slits(ax / fq, ay / fq, bx / fq, by / fq, bn / fq, an / fq,
                      [&](std::int64_t p, std::int64_t q) {
                        if (incident(a, p, q) || incident(b, p, q)) return false;
                        const std::int64_t zx = Q * p, zy = Q * q;
                        const std::int64_t tx = zx + bn, ty = zy + an;
                        int o1 = sgn128(orient(ax, ay, bx, by, zx, zy));
                        int o2 = sgn128(orient(ax, ay, bx, by, tx, ty));
                        if (o1 * o2 >= 0) return false;
                        int o3 = sgn128(orient(zx, zy, tx, ty, ax, ay));
                        int o4 = sgn128(orient(zx, zy, tx, ty, bx, by));
                        blocked = o3 * o4 <= 0;
                        return blocked;
                      });
  return {!blocked, false};
}

// Vertical slits: test the crossing height at every integer column strictly
// between the endpoints.
Clearance exact_vertical(const CoverScene& s, const Node& a, const Node& b) {
  const std::int64_t Q = s.scale(), an = s.slit_y();
  Node lo = a, hi = b;
  if (lo.p > hi.p) std::swap(lo, hi);
  const std::int64_t dx = hi.p - lo.p;
  if (dx == 0) return {true, false};
  const __int128 y0 = static_cast<__int128>(Q) * lo.q + (lo.tip ? an : 0);
  const __int128 y1 = static_cast<__int128>(Q) * hi.q + (hi.tip ? an : 0);
  const __int128 dy = y1 - y0;
  const __int128 period = static_cast<__int128>(Q) * dx;
  const __int128 limit = static_cast<__int128>(an) * dx;
  for (std::int64_t k = 1; k < dx; ++k) {
    __int128 num = y0 * dx + dy * k;
    __int128 r = num % period;
    if (r < 0) r += period;
    if (r > 0 && r < limit) return {false, false};
  }
  return {true, false};
}

// Signed distances compared against kTol; near-zero values count as touching.
int fsign(double v, bool& near) {
  if (std::abs(v) <= kTol) {
    near = true;
    return 0;
  }
  return v > 0 ? 1 : -1;
}

Clearance float_points(const CoverScene& s, Point a, Point b) {
  const Point sv = s.slit();
  const double ab = norm2(b - a), sl = norm2(sv);
  bool blocked = false, near = false;
  auto cross = [](Point u, Point v, Point w) {
    return (v.x - u.x) * (w.y - u.y) - (v.y - u.y) * (w.x - u.x);
  };
  for_candidate_slits(a.x, a.y, b.x, b.y, sv.x, sv.y, [&](std::int64_t p, std::int64_t q) {
    const Point z{static_cast<double>(p), static_cast<double>(q)};
    const Point t = z + sv;
    bool n1 = false, n2 = false;
    int o1 = fsign(cross(a, b, z) / ab, n1);
    int o2 = fsign(cross(a, b, t) / ab, n1);
    int o3 = fsign(cross(z, t, a) / sl, n2);
    int o4 = fsign(cross(z, t, b) / sl, n2);
    // Only report tolerance hits that could change the outcome.
    if (n1 && o3 * o4 <= 0) near = true;
    if (n2 && o1 * o2 <= 0) near = true;
    if (o1 * o2 < 0 && o3 * o4 <= 0) blocked = true;
    return blocked;
  });
  return {!blocked, near};
}

// Orientation of three nodes written as integer point + f * slit. The integer
// part is exact; when the slit terms cancel the sign is exact too, otherwise
// it is compared against the tolerance (scaled by `unit`).
struct Sym {
  std::int64_t x, y;
  int f;
};

int sym_orient(const CoverScene& s, Sym a, Sym b, Sym c, double unit, bool& near) {
  const std::int64_t bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
  const int fb = b.f - a.f, fc = c.f - a.f;
  const __int128 whole = static_cast<__int128>(bx) * cy - static_cast<__int128>(by) * cx;
  const std::int64_t ka = fc * bx - fb * cx;   // coefficient of alpha
  const std::int64_t kb = fb * cy - fc * by;   // coefficient of beta
  if (ka == 0 && kb == 0) return (whole > 0) - (whole < 0);
  const long double v = static_cast<long double>(whole) + static_cast<long double>(ka) * s.slit().y +
                        static_cast<long double>(kb) * s.slit().x;
  return fsign(static_cast<double>(v / unit), near);
}

Clearance float_nodes(const CoverScene& s, const Node& na, const Node& nb) {
  const Point a = s.position(na), b = s.position(nb), sv = s.slit();
  const double ab = norm2(b - a), sl = norm2(sv);
  const Sym sa{na.p, na.q, na.tip ? 1 : 0}, sb{nb.p, nb.q, nb.tip ? 1 : 0};
  bool blocked = false, near = false;
  for_candidate_slits(a.x, a.y, b.x, b.y, sv.x, sv.y, [&](std::int64_t p, std::int64_t q) {
    if (incident(na, p, q) || incident(nb, p, q)) return false;
    const Sym z{p, q, 0}, t{p, q, 1};
    bool n1 = false, n2 = false;
    int o1 = sym_orient(s, sa, sb, z, ab, n1);
    int o2 = sym_orient(s, sa, sb, t, ab, n1);
    int o3 = sym_orient(s, z, t, sa, sl, n2);
    int o4 = sym_orient(s, z, t, sb, sl, n2);
    if (n1 && o3 * o4 <= 0) near = true;
    if (n2 && o1 * o2 <= 0) near = true;
    if (o1 * o2 < 0 && o3 * o4 <= 0) blocked = true;
    return blocked;
  });
  return {!blocked, near};
}

}  // namespace

CoverScene CoverScene::vertical(const Rational& rho, const Mat2& metric) {
  return rational(Rational(0), rho, metric);
}

CoverScene CoverScene::rational(const Rational& beta, const Rational& alpha, const Mat2& metric) {
  CoverScene s;
  s.exact_ = true;
  BigInt q = boost::multiprecision::lcm(beta.den(), alpha.den());
  s.q_ = to_int64(q);
  s.bn_ = to_int64(beta.num() * (q / beta.den()));
  s.an_ = to_int64(alpha.num() * (q / alpha.den()));
  s.beta_ = beta.to_double();
  s.alpha_ = alpha.to_double();
  s.metric_ = metric;
  if (s.q_ > (std::int64_t{1} << 40)) {
    throw Error(ErrorCode::kInvalidTorus, "slit denominators too large for exact predicates");
  }
  s.validate();
  return s;
}

CoverScene CoverScene::real(double beta, double alpha, const Mat2& metric) {
  CoverScene s;
  s.exact_ = false;
  s.beta_ = beta;
  s.alpha_ = alpha;
  s.metric_ = metric;
  if (!std::isfinite(beta) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidTorus, "non-finite slit vector");
  }
  s.validate();
  return s;
}

void CoverScene::validate() const {
  if (beta_ == 0.0 && alpha_ == 0.0) throw Error(ErrorCode::kInvalidTorus, "zero slit vector");
  if (std::abs(metric_.det()) < 1e-12) throw Error(ErrorCode::kInvalidTorus, "singular metric");
  if (exact_) {
    // Translates overlap only when the slit covers a whole primitive lattice
    // vector along its own direction.
    std::int64_t g = std::gcd(bn_, an_);
    std::int64_t lam_num = g, lam_den = q_;  // slit = (g/Q) * primitive
    if (lam_num >= lam_den) {
      throw Error(ErrorCode::kInvalidTorus, "slit is at least as long as a lattice period");
    }
  }
}

Point CoverScene::position(const Node& v) const {
  Point z{static_cast<double>(v.p), static_cast<double>(v.q)};
  return v.tip ? z + slit() : z;
}

Clearance segment_clearance(const CoverScene& s, const Node& a, const Node& b) {
  if (s.exact()) {
    return s.slit_x() == 0 ? exact_vertical(s, a, b) : exact_generic(s, a, b);
  }
  return float_nodes(s, a, b);
}

bool segment_clear(const CoverScene& s, const Node& a, const Node& b) {
  return segment_clearance(s, a, b).clear;
}

bool segment_clear_generic(const CoverScene& s, const Node& a, const Node& b) {
  if (!s.exact()) return segment_clear(s, a, b);
  return exact_generic(s, a, b).clear;
}

bool segment_clear(const CoverScene& s, Point a, Point b) {
  return float_points(s, a, b).clear;
}

namespace {

struct SearchOutcome {
  bool found = false;
  PathResult result;
  std::vector<Node> nodes;  // candidate set of the last attempt
  bool touches_window = false;
};

struct Window {
  std::int64_t xmin, xmax, ymin, ymax;
  bool on_edge(const Node& v) const {
    return v.p == xmin || v.p == xmax || v.q == ymin || v.q == ymax;
  }
};

Window make_window(const CoverScene& s, const HClass& t, int pad) {
  const Point sv = s.slit();
  const auto ext_x = static_cast<std::int64_t>(std::ceil(std::abs(sv.x)));
  const auto ext_y = static_cast<std::int64_t>(std::ceil(std::abs(sv.y)));
  return {std::min<std::int64_t>(0, t.m) - pad - ext_x, std::max<std::int64_t>(0, t.m) + pad + ext_x,
          std::min<std::int64_t>(0, t.n) - pad - ext_y, std::max<std::int64_t>(0, t.n) + pad + ext_y};
}

// A* over the complete visibility graph restricted to the ellipse
// |v| + |t - v| <= bound. Edges are verified lazily when a node is popped.
SearchOutcome search(const CoverScene& s, const HClass& target, const Window& win, double bound) {
  SearchOutcome out;
  const Node origin{0, 0, false}, goal{target.m, target.n, false};
  const Point tp = s.plane(goal);
  const double slack = bound * (1.0 + 1e-12);

  std::vector<Node> nodes{origin, goal};
  std::vector<Point> pos{s.plane(origin), tp};
  for (std::int64_t p = win.xmin; p <= win.xmax; ++p) {
    for (std::int64_t q = win.ymin; q <= win.ymax; ++q) {
      for (bool tip : {false, true}) {
        Node v{p, q, tip};
        if (v == origin || v == goal) continue;
        Point x = s.plane(v);
        if (norm2(x) + norm2(tp - x) <= slack) {
          nodes.push_back(v);
          pos.push_back(x);
        }
      }
    }
  }
  const std::size_t k = nodes.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> h(k), tent(k, inf);
  std::vector<int> parent(k, -1);
  std::vector<char> closed(k, 0), verified(k, 0);
  for (std::size_t i = 0; i < k; ++i) h[i] = norm2(tp - pos[i]);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  tent[0] = 0.0;
  verified[0] = 1;
  open.push({h[0], 0});
  std::vector<int> closed_list;
  double missed_near = inf;  // best bound among edges rejected within tolerance

  auto edge = [&](int u, int v) { return segment_clearance(s, nodes[u], nodes[v]); };

  while (!open.empty()) {
    auto [f, v] = open.top();
    open.pop();
    if (closed[v] || f != tent[v] + h[v]) continue;
    if (!verified[v]) {
      Clearance c = edge(parent[v], v);
      if (c.near_boundary && !c.clear) missed_near = std::min(missed_near, f);
      if (!c.clear) {
        // Repair: best already-closed node with a clear edge.
        std::vector<std::pair<double, int>> cand;
        cand.reserve(closed_list.size());
        for (int u : closed_list) cand.push_back({tent[u] + norm2(pos[v] - pos[u]), u});
        std::sort(cand.begin(), cand.end());
        tent[v] = inf;
        parent[v] = -1;
        for (auto [g, u] : cand) {
          if (g + h[v] > slack) break;
          Clearance cu = edge(u, v);
          if (cu.clear) {
            tent[v] = g;
            parent[v] = u;
            verified[v] = 1;
            open.push({g + h[v], v});
            break;
          }
          if (cu.near_boundary) missed_near = std::min(missed_near, g + h[v]);
        }
        continue;
      }
      verified[v] = 1;
    }
    closed[v] = 1;
    closed_list.push_back(v);
    ++out.result.nodes_expanded;
    if (v == 1) break;
    for (std::size_t w = 0; w < k; ++w) {
      if (closed[w]) continue;
      double g = tent[v] + norm2(pos[w] - pos[v]);
      if (g + h[w] > slack || g >= tent[w]) continue;
      tent[w] = g;
      parent[w] = v;
      verified[w] = 0;
      open.push({g + h[w], static_cast<int>(w)});
    }
  }
  out.nodes = nodes;
  if (!closed[1]) return out;

  out.found = true;
  std::vector<int> chain;
  for (int v = 1; v != -1; v = parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  PathResult& r = out.result;
  r.length = tent[1];
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const int v = chain[i];
    r.polyline.push_back(pos[v]);
    r.nodes.push_back(nodes[v]);
    if (win.on_edge(nodes[v])) out.touches_window = true;
    if (i > 0 && !s.exact() && edge(chain[i - 1], v).near_boundary) r.near_boundary = true;
  }
  if (missed_near <= r.length * (1.0 + 1e-9)) r.near_boundary = true;
  return out;
}

SearchOutcome run(const CoverScene& s, const HClass& target) {
  if (target.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  const double chord = norm2(s.plane({target.m, target.n, false}));
  constexpr int kMaxPad = 64;
  for (int pad = std::max(1, s.padding()); pad <= kMaxPad; pad *= 2) {
    Window win = make_window(s, target, pad);
    double delta = chord * 1e-9;
    for (;;) {
      SearchOutcome o = search(s, target, win, chord + delta);
      if (o.found) {
        if (o.touches_window) break;
        o.result.padding_used = pad;
        return o;
      }
      if (delta > 4.0 * chord + 16.0) {
        throw Error(ErrorCode::kTargetUnreachable, "no path to " + target.str());
      }
      delta = delta < chord / 64.0 ? chord / 64.0 : 2.0 * delta;
    }
  }
  throw Error(ErrorCode::kWindowTooSmall, "path to " + target.str() + " keeps touching the window");
}

}  // namespace

PathResult shortest_path(const CoverScene& s, const HClass& target) { return run(s, target).result; }

double oracle_norm(const CoverScene& s, const HClass& h) {
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  return static_cast<double>(h.multiplicity()) * shortest_path(s, h.primitive()).length;
}

std::vector<VisibilityEdge> visibility_edges(const CoverScene& s, const HClass& target) {
  SearchOutcome o = run(s, target);
  std::vector<VisibilityEdge> edges;
  for (std::size_t i = 0; i < o.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < o.nodes.size(); ++j) {
      if (segment_clear(s, o.nodes[i], o.nodes[j])) {
        edges.push_back({o.nodes[i], o.nodes[j], norm2(s.plane(o.nodes[j]) - s.plane(o.nodes[i]))});
      }
    }
  }
  return edges;
}

}  // namespace slitnorm
