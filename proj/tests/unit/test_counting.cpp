#include "doctest.h"

#include <cmath>
#include <map>

#include "slitnorm/counting.hpp"
#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"

using namespace slitnorm;

namespace {

const VerticalSlitTorus kT25{Rational::parse("2/5")};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kParseError;
}

// Independent count: every primitive class in a box, normed by the cover
// oracle and called a vertex unless its oracle length equals the sum of its
// Farey parents' lengths.
struct OracleScan {
  CoverScene scene;
  std::map<HClass, double> cache;

  double norm(HClass h) {
    auto it = cache.find(h);
    if (it != cache.end()) return it->second;
    return cache[h] = oracle_norm(scene, h);
  }

  bool vertex(HClass h) {
    if (h.m <= 1 || h.n == 0) return true;
    ClassParents p = class_parents(h.m, h.n);
    double split = norm({p.low_m, p.low_n}) + norm({p.high_m, p.high_n});
    return norm(h) < split - 1e-9 * split;
  }

  std::int64_t count(double x) {
    std::int64_t total = 0;
    for (std::int64_t m = -static_cast<std::int64_t>(x); m <= x; ++m)
      for (std::int64_t n = -static_cast<std::int64_t>(x); n <= x; ++n) {
        HClass h{m, n};
        if (!h.is_primitive() || std::hypot(double(m), double(n)) > x) continue;
        HClass q{std::abs(m), std::abs(n)};
        if (norm(q) <= x && vertex(q)) ++total;
      }
    return total;
  }
};

}  // namespace

TEST_CASE("totient sums") {
  CHECK(totient_sum(Rational::parse("2/5")) == Rational::parse("3/2"));
  CHECK(totient_sum(Rational::parse("3/10")) == Rational::parse("13/6"));
  CHECK(totient_sum(Rational::parse("9/10")) == Rational(1));
  // 1 + 1/2 + 2/3 + 2/4 + 4/5 + 2/6 + 6/7
  CHECK(totient_sum(Rational::parse("1/7")) == Rational::parse("1/1") + Rational::parse("1/2") +
                                                   Rational::parse("2/3") + Rational::parse("1/2") +
                                                   Rational::parse("4/5") + Rational::parse("1/3") +
                                                   Rational::parse("6/7"));
  CHECK(code_of([] { totient_sum(Rational(1)); }) == ErrorCode::kInvalidTorus);
}

TEST_CASE("small counts") {
  CHECK(count_simple(kT25, 1.0) == 4);
  CHECK(count_simple(kT25, 2.0) == 8);
  CHECK(count_simple(kT25, 2.5) == 16);
  CHECK(count_simple(kT25, 2.5, SignConvention::kUpToSign) == 8);
  CHECK(code_of([] { count_simple(kT25, 0.5); }) == ErrorCode::kPreconditionViolated);
}

TEST_CASE("counts match an exhaustive oracle scan") {
  for (const char* rho : {"2/5", "3/10", "1/4"}) {
    VerticalSlitTorus t{Rational::parse(rho)};
    OracleScan scan{CoverScene::vertical(t.rho()), {}};
    SimpleClassNorms norms(t, 30.0, SignConvention::kSigned);
    for (double x : {1.0, 2.0, 2.5, 5.0, 10.0, 17.5, 30.0}) {
      CAPTURE(rho);
      CAPTURE(x);
      CHECK(norms.count(x) == scan.count(x));
    }
  }
}

TEST_CASE("chains end where the enumerator stops") {
  // Five more steps past the cut-off stay above the bound.
  for (const char* rho : {"2/5", "3/10", "1/7"}) {
    VerticalSlitTorus t{Rational::parse(rho)};
    const double x = 60.0;
    for (std::int64_t m = 1; t.column_visible(m); ++m)
      for (std::int64_t n = 0; std::hypot(double(m), double(n)) <= x; ++n) {
        HClass v{m, n};
        if (!v.is_primitive() || m < 2) continue;
        ClassParents p = class_parents(m, n);
        for (HClass base : {HClass{p.low_m, p.low_n}, HClass{p.high_m, p.high_n}}) {
          std::int64_t k = 1;
          while (std::hypot(double((k * v + base).m), double((k * v + base).n)) <= x) ++k;
          for (std::int64_t extra = 0; extra < 5; ++extra) {
            CHECK(stable_norm(t, (k + extra) * v + base).value > x);
            CHECK(stable_norm(t, (k + extra + 1) * v + base).value > stable_norm(t, (k + extra) * v + base).value);
          }
        }
      }
  }
}

TEST_CASE("tables are monotone, even and worker independent") {
  auto xs = threshold_range(1.0, 200.0, 7.5);
  CHECK(xs.front() == 1.0);
  CHECK(xs.back() == doctest::Approx(196.0));
  CountTable one = count_table(kT25, xs, SignConvention::kSigned, 1, 1);
  CountTable many = count_table(kT25, xs, SignConvention::kSigned, 1, 5);
  REQUIRE(one.rows.size() == many.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].p == many.rows[i].p);
    CHECK(one.rows[i].p % 2 == 0);
    if (i) CHECK(one.rows[i].p >= one.rows[i - 1].p);
  }
  CountTable glued = count_table(kT25, xs, SignConvention::kSigned, 2, 3);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(glued.rows[i].p == 2 * one.rows[i].p);
}

TEST_CASE("asymptotic estimate") {
  CHECK(asymptotic_estimate(Rational::parse("2/5"), std::exp(1.0)) == doctest::Approx(6.0 * std::exp(1.0)));
  CHECK(asymptotic_estimate(Rational::parse("2/5"), 100.0, 2) ==
        doctest::Approx(12.0 * 100.0 * std::log(100.0)));
  CHECK(expected_coefficient(Rational::parse("3/10"), 1, SignConvention::kUpToSign) ==
        doctest::Approx(26.0 / 3.0));
  CHECK(expected_coefficient(Rational::parse("2/5"), 2, SignConvention::kUpToSign) == doctest::Approx(12.0));
  CHECK(expected_coefficient(Rational::parse("2/5"), 1, SignConvention::kSigned) == doctest::Approx(12.0));
  CHECK(code_of([] { asymptotic_estimate(Rational::parse("2/5"), 1.0); }) == ErrorCode::kPreconditionViolated);
}

TEST_CASE("fit") {
  std::vector<double> xs, ps;
  std::vector<CountRow> rows;
  for (int i = 0; i < 20; ++i) {
    double x = 10.0 * std::pow(1.3, i);
    xs.push_back(x);
    ps.push_back(6.0 * x * std::log(x) + 2.0 * x);
    rows.push_back({x, static_cast<std::int64_t>(std::llround(ps.back()))});
  }
  Fit f = fit_coefficient(xs, ps);
  CHECK(f.a == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(f.b == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(f.residual < 1e-14);
  // Rounding to integer counts moves the fit only slightly.
  Fit r = fit_coefficient(rows);
  CHECK(r.a == doctest::Approx(6.0).epsilon(1e-3));

  std::vector<CountRow> nine(rows.begin(), rows.begin() + 9);
  CHECK(code_of([&] { fit_coefficient(nine); }) == ErrorCode::kInsufficientData);
  std::vector<CountRow> flat(12, CountRow{50.0, 400});
  CHECK(code_of([&] { fit_coefficient(flat); }) == ErrorCode::kIllConditioned);
  std::vector<CountRow> narrow;
  for (int i = 0; i < 12; ++i) narrow.push_back({100.0 + i, 1000 + 10 * i});
  CHECK(code_of([&] { fit_coefficient(narrow); }) == ErrorCode::kInsufficientData);
}
