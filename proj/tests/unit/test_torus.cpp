#include "doctest.h"

#include <cmath>
#include <numeric>

#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"
#include "slitnorm/torus.hpp"

using namespace slitnorm;

namespace {

const VerticalSlitTorus kT25{Rational::parse("2/5")};

// Oracle lengths frozen from the cover search (and confirmed by direct
// evaluation of the polylines they return).
constexpr double k31 = 3.165094263209011;
constexpr double k41 = 4.136444669582572;
constexpr double k72 = 7.3015389327915825;
constexpr double k52 = 5.3986503732314794;

}  // namespace

TEST_CASE("torus validation") {
  CHECK_THROWS_WITH_AS(VerticalSlitTorus(Rational(1)), doctest::Contains("InvalidTorus"), Error);
  CHECK_THROWS_AS(VerticalSlitTorus(Rational(0)), Error);
  CHECK_THROWS_AS(VerticalSlitTorus(Rational::parse("-1/3")), Error);
}

TEST_CASE("visibility") {
  CHECK(is_visible(kT25, {2, 1}));
  CHECK(is_visible(kT25, {-2, 1}));
  for (int n = -30; n <= 30; ++n) CHECK(is_visible(kT25, {1, n}));
  CHECK_FALSE(is_visible(kT25, {3, 1}));
  CHECK(is_visible(kT25, {0, 1}));
  // Closed inequality at m * rho = 1.
  VerticalSlitTorus quarter{Rational::parse("1/4")};
  CHECK(is_visible(quarter, {4, 1}));
  CHECK_FALSE(is_visible(quarter, {5, 1}));
  CHECK_THROWS_WITH_AS(is_visible(kT25, {2, 2}), doctest::Contains("NonPrimitive"), Error);
}

TEST_CASE("stable norm examples") {
  auto c = stable_norm(kT25, {3, 1});
  CHECK(c.kind == CertKind::kTwoSegmentSimple);
  CHECK(c.value == doctest::Approx(k31).epsilon(1e-14));
  CHECK(c.bend.x == doctest::Approx(1.0));
  CHECK(c.bend.y == doctest::Approx(0.4));

  c = stable_norm(kT25, {1, 1});
  CHECK(c.kind == CertKind::kVisibleSegment);
  CHECK(c.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  c = stable_norm(kT25, {7, 2});
  CHECK(c.kind == CertKind::kFlatSplit);
  CHECK(c.value == doctest::Approx(k72).epsilon(1e-14));
  REQUIRE(c.children.size() == 2);
  CHECK(c.children[0].cls == HClass{4, 1});
  CHECK(c.children[1].cls == HClass{3, 1});
  CHECK(c.children[0].value == doctest::Approx(k41).epsilon(1e-14));

  c = stable_norm(kT25, {5, 2});
  CHECK(c.kind == CertKind::kTwoSegmentSimple);
  CHECK(c.value == doctest::Approx(k52).epsilon(1e-14));

  c = stable_norm(kT25, {6, 2});
  CHECK(c.multiplicity == 2);
  CHECK(c.value == doctest::Approx(2 * k31).epsilon(1e-14));

  c = stable_norm(kT25, {0, -3});
  CHECK(c.value == 3.0);

  CHECK_THROWS_WITH_AS(stable_norm(kT25, {0, 0}), doctest::Contains("ZeroClass"), Error);
}

TEST_CASE("sign symmetry and bends on actual slits") {
  for (int m = -20; m <= 20; ++m) {
    for (int n = -20; n <= 20; ++n) {
      if (m == 0 && n == 0) continue;
      double v = stable_norm(kT25, {m, n}).value;
      CHECK(stable_norm(kT25, {-m, n}).value == doctest::Approx(v).epsilon(1e-14));
      CHECK(stable_norm(kT25, {m, -n}).value == doctest::Approx(v).epsilon(1e-14));
      CHECK(stable_norm(kT25, {-m, -n}).value == doctest::Approx(v).epsilon(1e-14));
    }
  }
  // For m < 0 the bend is still a slit tip in the lift of the actual class.
  auto c = stable_norm(kT25, {-3, -1});
  CHECK(c.bend.x == doctest::Approx(-2.0));
  CHECK(c.bend.y == doctest::Approx(-0.6));
}

TEST_CASE("classification") {
  CHECK(classify_direction(kT25, {2, 1}) == DirectionKind::kVertex);
  CHECK(classify_direction(kT25, {3, 1}) == DirectionKind::kVertex);
  CHECK(classify_direction(kT25, {7, 2}) == DirectionKind::kFlatInterior);
  CHECK(classify_direction(kT25, {-7, 2}) == DirectionKind::kFlatInterior);
  CHECK_THROWS_AS(classify_direction(kT25, {6, 2}), Error);
}

TEST_CASE("minimizing paths") {
  auto p = minimizing_path(kT25, {1, 1});
  REQUIRE(p.size() == 2);
  CHECK(p[1] == Point{1, 1});
  p = minimizing_path(kT25, {3, 1});
  REQUIRE(p.size() == 3);
  CHECK(p[1].x == doctest::Approx(1.0));
  CHECK(p[1].y == doctest::Approx(0.4));
  CHECK(p[2] == Point{3, 1});
  p = minimizing_path(kT25, {7, 2});
  REQUIRE(p.size() == 5);
  CHECK(p[2] == Point{4, 1});
  CHECK(p[4] == Point{7, 2});
}

TEST_CASE("certificate replay and slit avoidance") {
  for (const char* rho : {"2/5", "1/4", "3/10", "1/7"}) {
    VerticalSlitTorus t{Rational::parse(rho)};
    CoverScene scene = CoverScene::vertical(t.rho());
    for (int m = -25; m <= 25; ++m) {
      for (int n = -25; n <= 25; ++n) {
        if (m == 0 && n == 0) continue;
        auto c = stable_norm(t, {m, n});
        double replay = replay_length(c);
        CHECK(std::abs(replay - c.value) <= 1e-12 * c.value);
        auto pts = c.polyline();
        for (std::size_t i = 1; i < pts.size(); ++i) {
          CHECK(segment_clear(scene, pts[i - 1], pts[i]));
        }
        CHECK(c.value >= std::hypot(m, n) * (1 - 1e-15));
      }
    }
  }
}

TEST_CASE("flat children sum to the parent class") {
  VerticalSlitTorus t{Rational::parse("1/7")};
  for (int m = 1; m <= 60; ++m) {
    for (int n = -60; n <= 60; ++n) {
      if (std::gcd(m, n) != 1) continue;
      auto c = stable_norm(t, {m, n});
      if (c.kind != CertKind::kFlatSplit) continue;
      CHECK(c.children[0].cls + c.children[1].cls == HClass{m, n});
      CHECK(c.value == doctest::Approx(c.children[0].value + c.children[1].value).epsilon(1e-15));
    }
  }
}

TEST_CASE("a lone visible parent on the boundary leaves the class on a flat") {
  const VerticalSlitTorus t{Rational::parse("1/7")};
  CHECK(t.column_visible(7));
  CHECK_FALSE(t.column_strictly_visible(7));
  CHECK(t.column_strictly_visible(6));
  // (15,2) has parents (8,1) and (7,1); only (7,1) is visible, with 7 rho = 1.
  CHECK(classify_direction(t, {15, 2}) == DirectionKind::kFlatInterior);
  NormCertificate c = stable_norm(t, {15, 2});
  CHECK(c.kind == CertKind::kFlatSplit);
  CHECK(c.value == doctest::Approx(15.1335032405305).epsilon(1e-13));
  // (13,2) has parents (6,1) and (7,1), both visible.
  CHECK(classify_direction(t, {13, 2}) == DirectionKind::kVertex);
  CHECK(classify_direction(t, {13, 1}) == DirectionKind::kVertex);

  // Oracle: the split into parents is exactly as short as the class in the
  // boundary case and strictly longer for every vertex.
  for (const char* rho : {"1/3", "1/4", "1/7", "2/7"}) {
    VerticalSlitTorus u{Rational::parse(rho)};
    CoverScene scene = CoverScene::vertical(u.rho());
    for (std::int64_t m = 2; m <= 18; ++m)
      for (std::int64_t n = 1; n <= 18; ++n) {
        HClass h{m, n};
        if (!h.is_primitive() || u.column_visible(m)) continue;
        ClassParents p = class_parents(m, n);
        double split = shortest_path(scene, {p.low_m, p.low_n}).length + shortest_path(scene, {p.high_m, p.high_n}).length;
        double margin = split - shortest_path(scene, h).length;
        CAPTURE(rho);
        CAPTURE(h.str());
        if (classify_direction(u, h) == DirectionKind::kVertex) {
          CHECK(margin > 1e-7);
        } else {
          CHECK(std::abs(margin) < 1e-9);
        }
      }
  }
}
