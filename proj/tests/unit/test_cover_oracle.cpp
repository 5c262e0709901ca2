#include "doctest.h"

#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/torus.hpp"

using namespace slitnorm;

namespace {

Node lat(std::int64_t p, std::int64_t q) { return {p, q, false}; }
Node tip(std::int64_t p, std::int64_t q) { return {p, q, true}; }

// Fine grid refinement of the vertical cover: Dijkstra on a grid of step 1/k
// with 16 move directions, edges rejected by the exact clearance test. Its
// lengths approach the true distance from above.
double grid_distance(const CoverScene& s, HClass t, int k) {
  const int x0 = -1 * k, x1 = (static_cast<int>(t.m) + 1) * k;
  const int y0 = -1 * k, y1 = (static_cast<int>(t.n) + 1) * k;
  const int w = x1 - x0 + 1, h = y1 - y0 + 1;
  std::vector<double> dist(static_cast<std::size_t>(w * h), 1e300);
  auto id = [&](int x, int y) { return (y - y0) * w + (x - x0); };
  using E = std::pair<double, int>;
  std::priority_queue<E, std::vector<E>, std::greater<>> pq;
  dist[id(0, 0)] = 0;
  pq.push({0, id(0, 0)});
  const int moves[16][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
                            {2, 1}, {1, 2}, {-2, 1}, {-1, 2}, {2, -1}, {1, -2}, {-2, -1}, {-1, -2}};
  const int goal = id(static_cast<int>(t.m) * k, static_cast<int>(t.n) * k);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == goal) return d;
    int x = v % w + x0, y = v / w + y0;
    for (auto& mv : moves) {
      int nx = x + mv[0], ny = y + mv[1];
      if (nx < x0 || nx > x1 || ny < y0 || ny > y1) continue;
      Point a{static_cast<double>(x) / k, static_cast<double>(y) / k};
      Point b{static_cast<double>(nx) / k, static_cast<double>(ny) / k};
      if (!segment_clear(s, a, b)) continue;
      double nd = d + std::hypot(b.x - a.x, b.y - a.y);
      int u = id(nx, ny);
      if (nd < dist[u]) {
        dist[u] = nd;
        pq.push({nd, u});
      }
    }
  }
  return 1e300;
}

}  // namespace

TEST_CASE("segment clearance, vertical slits") {
  auto s = CoverScene::vertical(Rational::parse("2/5"));
  CHECK(segment_clear(s, lat(0, 0), lat(2, 1)));
  CHECK_FALSE(segment_clear(s, lat(0, 0), lat(3, 1)));
  for (int n = -10; n <= 10; ++n) CHECK(segment_clear(s, lat(0, 0), lat(1, n)));
  // Through a slit tip and along a slit line both count as clear.
  CHECK(segment_clear(s, lat(0, 0), tip(1, 0)));
  CHECK(segment_clear(s, lat(0, 0), lat(0, 5)));
  CHECK(segment_clear(s, tip(0, 0), tip(2, 0)));
  CHECK_FALSE(segment_clear(s, lat(0, 0), tip(2, 0)));
}

TEST_CASE("vertical fast path agrees with the generic orientation test") {
  for (const char* rho : {"2/5", "1/4", "3/10", "1/7", "5/6"}) {
    auto s = CoverScene::vertical(Rational::parse(rho));
    for (int p0 = -2; p0 <= 2; ++p0) {
      for (int tip0 = 0; tip0 <= 1; ++tip0) {
        for (int p1 = -6; p1 <= 9; ++p1) {
          for (int q1 = -6; q1 <= 9; ++q1) {
            for (int tip1 = 0; tip1 <= 1; ++tip1) {
              Node a{p0, 1 - p0, tip0 == 1}, b{p1, q1, tip1 == 1};
              if (a == b) continue;
              bool fast = segment_clear(s, a, b);
              REQUIRE(fast == segment_clear_generic(s, a, b));
              CHECK(fast == segment_clear(s, s.position(a), s.position(b)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("shortest path examples") {
  auto s = CoverScene::vertical(Rational::parse("2/5"));
  auto r = shortest_path(s, {1, 1});
  CHECK(r.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.polyline.size() == 2);

  r = shortest_path(s, {3, 1});
  CHECK(r.length == doctest::Approx(3.165094263209011).epsilon(1e-13));
  REQUIRE(r.polyline.size() == 3);
  CHECK(r.polyline[1].x == doctest::Approx(1.0));
  CHECK(r.polyline[1].y == doctest::Approx(0.4));

  r = shortest_path(s, {6, 2});
  CHECK(r.length == doctest::Approx(6.330188526418022).epsilon(1e-13));

  CHECK(oracle_norm(s, {0, 3}) == doctest::Approx(3.0));
  CHECK(oracle_norm(s, {7, 2}) == doctest::Approx(7.3015389327915825).epsilon(1e-13));
  CHECK(oracle_norm(s, {5, 2}) == doctest::Approx(5.3986503732314794).epsilon(1e-13));
  CHECK_THROWS_WITH_AS(shortest_path(s, {0, 0}), doctest::Contains("ZeroClass"), Error);
}

TEST_CASE("oracle paths are clear and measure their own length") {
  auto s = CoverScene::vertical(Rational::parse("3/10"));
  for (int m = -6; m <= 6; ++m) {
    for (int n = -6; n <= 6; ++n) {
      if (std::gcd(m, n) != 1) continue;
      auto r = shortest_path(s, {m, n});
      CHECK(r.polyline.front() == Point{0, 0});
      CHECK(r.polyline.back() == Point{static_cast<double>(m), static_cast<double>(n)});
      CHECK(polyline_length(r.polyline) == doctest::Approx(r.length).epsilon(1e-14));
      for (std::size_t i = 1; i < r.nodes.size(); ++i) {
        CHECK(segment_clear(s, r.nodes[i - 1], r.nodes[i]));
      }
    }
  }
}

TEST_CASE("grid refinement approaches the oracle from above") {
  auto s = CoverScene::vertical(Rational::parse("2/5"));
  for (HClass t : {HClass{3, 1}, HClass{5, 2}}) {
    double exact = oracle_norm(s, t);
    double coarse = grid_distance(s, t, 5);
    double fine = grid_distance(s, t, 10);
    CHECK(coarse >= exact - 1e-12);
    CHECK(fine >= exact - 1e-12);
    CHECK(fine <= coarse + 1e-12);
    CHECK(fine - exact < 0.03 * exact);
  }
}

TEST_CASE("window doubling does not change lengths") {
  auto s = CoverScene::vertical(Rational::parse("1/7"));
  auto wide = s;
  wide.set_padding(4);
  for (HClass t : {HClass{9, 2}, HClass{15, 4}, HClass{11, -3}, HClass{8, 1}}) {
    auto a = shortest_path(s, t);
    auto b = shortest_path(wide, t);
    CHECK(a.length == doctest::Approx(b.length).epsilon(1e-14));
  }
}

TEST_CASE("general slit scenes") {
  auto diag = CoverScene::rational(Rational::parse("3/10"), Rational::parse("3/10"));
  CHECK(segment_clear(diag, lat(0, 0), lat(1, 0)));
  CHECK(segment_clear(diag, lat(0, 0), lat(1, -1)));
  CHECK_FALSE(segment_clear(diag, lat(0, 0), lat(3, -1)));
  auto real = CoverScene::real(0.3, 0.3, Mat2::identity());
  for (int m = -5; m <= 5; ++m) {
    for (int n = -5; n <= 5; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(oracle_norm(diag, {m, n}) == doctest::Approx(oracle_norm(real, {m, n})).epsilon(1e-12));
    }
  }
  CHECK_THROWS_WITH_AS(CoverScene::rational(Rational::parse("1"), Rational::parse("1")),
                       doctest::Contains("InvalidTorus"), Error);
  CHECK_THROWS_AS(CoverScene::real(0.0, 0.0), Error);
}

TEST_CASE("visibility edges dump") {
  auto s = CoverScene::vertical(Rational::parse("2/5"));
  auto edges = visibility_edges(s, {3, 1});
  CHECK(!edges.empty());
  for (auto& e : edges) CHECK(e.weight > 0);
}
