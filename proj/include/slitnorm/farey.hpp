#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "slitnorm/rational.hpp"

namespace slitnorm {

/// The two neighbors whose mediant is a given rational, low < high.
struct FareyParents {
  Rational low;
  Rational high;
};

struct ContinuedFraction {
  std::vector<BigInt> quotients;
  std::vector<Rational> convergents;
};

Rational mediant(const Rational& a, const Rational& b);

/// |a.num*b.den - b.num*a.den| == 1. Throws kEqualInputs when a == b.
bool are_neighbors(const Rational& a, const Rational& b);

/// Throws kIntegerHasNoParents for integers.
FareyParents farey_parents(const Rational& x);

/// (k*base.num + neighbor.num) / (k*base.den + neighbor.den), k >= 1.
Rational child_toward(const Rational& base, const Rational& neighbor, std::int64_t k);

/// Canonical expansion of a rational: every quotient after a0 is >= 1 and the
/// last one is >= 2 (unless the input is an integer). At most max_depth terms.
ContinuedFraction continued_fraction(const Rational& x,
                                     int max_depth = std::numeric_limits<int>::max());

/// Expansion of a real number. Stops after max_depth terms or once the
/// fractional remainder drops below tol.
ContinuedFraction continued_fraction(double x, int max_depth, double tol = 1e-12);

/// Word over {s,t}: "st" followed by one letter per interior grid crossing of
/// the open segment (0,0)-(m,n). word(1,0) = "s" and word(0,1) = "t".
std::string cutting_word(std::int64_t m, std::int64_t n);

/// Parents of n/m (m >= 2, gcd(m,n) = 1) as classes (den, num), i.e. the low
/// parent a/b is returned as {b, a}. Pure 64-bit fast path.
struct ClassParents {
  std::int64_t low_m, low_n;    // (b, a)
  std::int64_t high_m, high_n;  // (d, c)
};
ClassParents class_parents(std::int64_t m, std::int64_t n);

}  // namespace slitnorm
