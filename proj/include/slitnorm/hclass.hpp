#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace slitnorm {

/// Integral homology class (m, n) of a torus.
struct HClass {
  std::int64_t m = 0;
  std::int64_t n = 0;

  bool is_zero() const { return m == 0 && n == 0; }
  /// gcd(|m|, |n|); zero only for the zero class.
  std::int64_t multiplicity() const { return std::gcd(m, n); }
  bool is_primitive() const { return multiplicity() == 1; }
  HClass primitive() const {
    std::int64_t g = multiplicity();
    return g == 0 ? *this : HClass{m / g, n / g};
  }

  HClass operator-() const { return {-m, -n}; }
  friend HClass operator+(HClass a, HClass b) { return {a.m + b.m, a.n + b.n}; }
  friend HClass operator-(HClass a, HClass b) { return {a.m - b.m, a.n - b.n}; }
  friend HClass operator*(std::int64_t k, HClass a) { return {k * a.m, k * a.n}; }
  friend bool operator==(const HClass&, const HClass&) = default;
  friend auto operator<=>(const HClass&, const HClass&) = default;

  std::string str() const { return std::to_string(m) + "," + std::to_string(n); }

  /// Parses "m,n". Throws kParseError.
  static HClass parse(std::string_view text);
};

/// Throws kZeroClass for (0,0) and kNonPrimitive when gcd > 1.
void require_primitive(const HClass& h);

}  // namespace slitnorm
