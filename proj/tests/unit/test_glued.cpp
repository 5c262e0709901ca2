#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/glued.hpp"

using namespace slitnorm;

namespace {

const VerticalSlitTorus kT25{Rational::parse("2/5")};

GluedSurface two_copies() { return GluedSurface::copies(kT25, 2, 0.5); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kParseError;
}

// Consecutive first-quadrant vertices whose mediant sits on a flat.
std::vector<std::pair<HClass, HClass>> adjacent_pairs(const VerticalSlitTorus& t, double bound) {
  std::vector<std::pair<HClass, HClass>> out;
  auto v = enumerate_vertices(t, bound);
  for (std::size_t i = 1; i < v.size(); ++i) {
    HClass a = v[i - 1].cls, b = v[i].cls;
    if (std::abs(a.m * b.n - a.n * b.m) != 1) continue;
    if (classify_direction(t, a + b) == DirectionKind::kFlatInterior) out.push_back({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("glued class parsing") {
  GluedClass h = GluedClass::parse("1,0;0,-3");
  REQUIRE(h.blocks.size() == 2);
  CHECK(h.blocks[1] == HClass{0, -3});
  CHECK(h.str() == "1,0;0,-3");
  CHECK(GluedClass::parse("4,1").blocks.size() == 1);
  CHECK(code_of([] { GluedClass::parse("1,0;"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { GluedClass::parse("1;0,1"); }) == ErrorCode::kParseError);
}

TEST_CASE("construction needs a wide cylinder") {
  CHECK(code_of([] { GluedSurface::copies(kT25, 2, 0.4); }) == ErrorCode::kCylinderTooShort);
  CHECK(code_of([] { GluedSurface::copies(kT25, 2, 0.1); }) == ErrorCode::kCylinderTooShort);
  CHECK(code_of([] { GluedSurface::copies(kT25, 1, 1.0); }) == ErrorCode::kPreconditionViolated);
  VerticalSlitTorus wide{Rational::parse("9/10")};
  CHECK(code_of([&] { GluedSurface({kT25, wide}, 0.5); }) == ErrorCode::kCylinderTooShort);
  CHECK_NOTHROW(GluedSurface({kT25, wide}, 0.95));
}

TEST_CASE("glued norm examples") {
  GluedSurface s = two_copies();
  CHECK(glued_norm(s, GluedClass::parse("1,0;0,0")).value == doctest::Approx(1.0));
  CHECK(glued_norm(s, GluedClass::parse("1,1;1,1")).value == doctest::Approx(2.0 * std::sqrt(2.0)));
  GluedNorm g = glued_norm(s, GluedClass::parse("3,1;0,0"));
  CHECK(g.value == doctest::Approx(3.165094263209011).epsilon(1e-12));
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0].component == 0);
  CHECK(code_of([&] { glued_norm(s, GluedClass::parse("0,0;0,0")); }) == ErrorCode::kZeroClass);
  CHECK(code_of([&] { glued_norm(s, GluedClass::parse("1,0")); }) == ErrorCode::kPreconditionViolated);
}

TEST_CASE("glued classification") {
  GluedSurface s = two_copies();
  CHECK(glued_classify(s, GluedClass::parse("1,0;1,0")) == DirectionKind::kFlatInterior);
  CHECK(glued_classify(s, GluedClass::parse("0,0;3,1")) == DirectionKind::kVertex);
  CHECK(glued_classify(s, GluedClass::parse("0,0;7,2")) == DirectionKind::kFlatInterior);
  CHECK(glued_classify(s, GluedClass::parse("6,2;0,0")) == DirectionKind::kVertex);
}

TEST_CASE("glued vertices factor through the components") {
  GluedSurface s = GluedSurface({kT25, VerticalSlitTorus{Rational::parse("3/10")}}, 0.5);
  auto v = glued_vertices(s, 2.0);
  REQUIRE(v.size() == 6);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(v[i].component == 0);
    CHECK(v[i + 3].component == 1);
    CHECK(v[i].embedded.blocks[1].is_zero());
    CHECK(v[i].entry.cls == v[i + 3].entry.cls);
  }
  CHECK(v[1].embedded == GluedClass::parse("1,1;0,0"));
  for (double bound : {3.0, 10.0}) {
    auto all = glued_vertices(s, bound);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < s.size(); ++i) expected += enumerate_vertices(s.component(i), bound).size();
    CHECK(all.size() == expected);
    for (const auto& g : all) {
      CHECK(g.embedded.nonzero_blocks() == 1);
      CHECK(glued_classify(s, g.embedded) == DirectionKind::kVertex);
      CHECK(glued_norm(s, g.embedded).value == doctest::Approx(g.entry.norm).epsilon(1e-14));
    }
  }
}

TEST_CASE("adjacency") {
  require_adjacent(kT25, {3, 1}, {4, 1});
  require_adjacent(kT25, {5, 2}, {3, 1});
  // Visible classes are limits of their child chains, so never adjacent.
  CHECK(code_of([] { require_adjacent(kT25, {1, 0}, {1, 1}); }) == ErrorCode::kNotAdjacent);
  CHECK(code_of([] { require_adjacent(kT25, {2, 1}, {3, 1}); }) == ErrorCode::kNotAdjacent);
  CHECK(code_of([] { require_adjacent(kT25, {3, 1}, {5, 1}); }) == ErrorCode::kNotAdjacent);
  CHECK(code_of([] { require_adjacent(kT25, {7, 2}, {4, 1}); }) == ErrorCode::kNotAdjacent);

  // Against the sorted vertex list: an adjacent pair is consecutive, and
  // the oracle sees the mediant as the sum of its parents.
  for (const char* rho : {"2/5", "3/10"}) {
    VerticalSlitTorus t{Rational::parse(rho)};
    auto v = enumerate_vertices(t, 40.0);
    int adjacent = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      HClass a = v[i - 1].cls, b = v[i].cls;
      bool ok = true;
      try {
        require_adjacent(t, a, b);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok || (a + b).m > 12) continue;
      ++adjacent;
      CoverScene sc = CoverScene::vertical(t.rho());
      double lhs = oracle_norm(sc, a + b), rhs = oracle_norm(sc, a) + oracle_norm(sc, b);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
    CHECK(adjacent > 3);
  }
}

TEST_CASE("flat faces") {
  GluedSurface s = two_copies();
  CHECK(flat_face_check(s, {3, 1}, {4, 1}, {3, 1}, {5, 2}, {1, 0, 0, 0}));
  CHECK(flat_face_check(s, {3, 1}, {4, 1}, {3, 1}, {5, 2}, {0.25, 0.25, 0.25, 0.25}));
  CHECK(code_of([&] { flat_face_check(s, {1, 0}, {1, 1}, {3, 1}, {4, 1}, {1, 0, 0, 0}); }) ==
        ErrorCode::kNotAdjacent);
  CHECK(code_of([&] { flat_face_check(s, {3, 1}, {4, 1}, {3, 1}, {4, 1}, {0.5, 0.5, 0.5, 0}); }) ==
        ErrorCode::kPreconditionViolated);

  auto pairs = adjacent_pairs(kT25, 30.0);
  REQUIRE(pairs.size() > 5);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 50; ++i) {
    auto [v1, v2] = pairs[pick(rng)];
    auto [w1, w2] = pairs[pick(rng)];
    std::array<double, 4> l{ex(rng), ex(rng), ex(rng), ex(rng)};
    double sum = l[0] + l[1] + l[2] + l[3];
    for (double& x : l) x /= sum;
    CHECK(flat_face_check(s, v1, v2, w1, w2, l));
  }
  // A face through a vertex pair and a non-flat combination is not on the sphere.
  CHECK_FALSE(std::abs(norm_of_vector(kT25, 0.5 * Point{1, 0} + 0.5 * Point{0.5, 0.5}) - 1.0) < 1e-9);
}

TEST_CASE("glued oracle spot check") {
  GluedSurface s = two_copies();
  const std::vector<const char*> classes{"1,0;0,0", "0,0;0,1", "1,1;0,0", "0,0;2,1", "3,1;0,0",
                                         "0,0;4,1", "5,2;0,0", "0,0;7,2", "3,-1;0,0", "0,0;-5,3"};
  for (const char* c : classes) {
    GluedClass h = GluedClass::parse(c);
    CHECK(glued_oracle_norm(s, h) == doctest::Approx(glued_norm(s, h).value).epsilon(1e-6));
  }
  CHECK(code_of([&] { glued_oracle_norm(s, GluedClass::parse("1,0;1,0")); }) ==
        ErrorCode::kPreconditionViolated);
}
