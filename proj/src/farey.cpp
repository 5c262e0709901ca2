#include "slitnorm/farey.hpp"

#include <cmath>
#include <numeric>

#include "slitnorm/errors.hpp"

namespace slitnorm {

Rational mediant(const Rational& a, const Rational& b) {
  return Rational(a.num() + b.num(), a.den() + b.den());
}

bool are_neighbors(const Rational& a, const Rational& b) {
  if (a == b) throw Error(ErrorCode::kEqualInputs, a.str() + " given twice");
  BigInt det = a.num() * b.den() - b.num() * a.den();
  return det == 1 || det == -1;
}

ContinuedFraction continued_fraction(const Rational& x, int max_depth) {
  if (max_depth < 1) throw Error(ErrorCode::kPreconditionViolated, "max_depth must be >= 1");
  ContinuedFraction cf;
  BigInt p_prev = 0, q_prev = 1, p = 1, q = 0;
  BigInt num = x.num(), den = x.den();
  while (static_cast<int>(cf.quotients.size()) < max_depth) {
    BigInt a = num / den;
    if (num < 0 && a * den != num) a -= 1;  // floor
    BigInt r = num - a * den;
    cf.quotients.push_back(a);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    cf.convergents.emplace_back(p, q);
    if (r == 0) break;
    num = den;
    den = r;
  }
  return cf;
}

ContinuedFraction continued_fraction(double x, int max_depth, double tol) {
  if (max_depth < 1) throw Error(ErrorCode::kPreconditionViolated, "max_depth must be >= 1");
  if (!std::isfinite(x)) throw Error(ErrorCode::kParseError, "non-finite input");
  ContinuedFraction cf;
  BigInt p_prev = 0, q_prev = 1, p = 1, q = 0;
  long double rest = x;
  while (static_cast<int>(cf.quotients.size()) < max_depth) {
    long double fl = std::floor(rest);
    BigInt a(static_cast<long long>(fl));
    cf.quotients.push_back(a);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    cf.convergents.emplace_back(p, q);
    long double frac = rest - fl;
    if (frac < tol) break;
    rest = 1.0L / frac;
  }
  return cf;
}

FareyParents farey_parents(const Rational& x) {
  if (x.is_integer()) {
    throw Error(ErrorCode::kIntegerHasNoParents, x.str() + " is an integer");
  }
  ContinuedFraction cf = continued_fraction(x);
  const std::size_t k = cf.convergents.size() - 1;  // k >= 1 for non-integers
  const Rational& last = cf.convergents[k];
  const Rational& prev = cf.convergents[k - 1];
  Rational other(last.num() - prev.num(), last.den() - prev.den());
  if (prev < other) return {prev, other};
  return {other, prev};
}

Rational child_toward(const Rational& base, const Rational& neighbor, std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::kPreconditionViolated, "k must be positive");
  if (base == neighbor || !are_neighbors(base, neighbor)) {
    throw Error(ErrorCode::kNotNeighbors, base.str() + " and " + neighbor.str());
  }
  return Rational(BigInt(k) * base.num() + neighbor.num(), BigInt(k) * base.den() + neighbor.den());
}

std::string cutting_word(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0 || (m == 0 && n == 0)) {
    throw Error(ErrorCode::kPreconditionViolated,
                "cutting words need m, n >= 0, not both zero");
  }
  if (std::gcd(m, n) != 1) {
    throw Error(ErrorCode::kNotCoprime, std::to_string(m) + "," + std::to_string(n));
  }
  if (n == 0) return "s";
  if (m == 0) return "t";
  std::string word = "st";
  word.reserve(static_cast<std::size_t>(m + n));
  // Interior crossings at x = i (time i/m) and y = j (time j/n); coprimality
  // keeps them distinct.
  std::int64_t i = 1, j = 1;
  while (i < m || j < n) {
    bool take_s;
    if (i >= m) {
      take_s = false;
    } else if (j >= n) {
      take_s = true;
    } else {
      take_s = static_cast<__int128>(i) * n < static_cast<__int128>(j) * m;
    }
    if (take_s) {
      word.push_back('s');
      ++i;
    } else {
      word.push_back('t');
      ++j;
    }
  }
  return word;
}

ClassParents class_parents(std::int64_t m, std::int64_t n) {
  if (m < 2) throw Error(ErrorCode::kIntegerHasNoParents, "denominator below 2");
  if (std::gcd(m, n) != 1) {
    throw Error(ErrorCode::kNotCoprime, std::to_string(m) + "," + std::to_string(n));
  }
  // Low parent a/b satisfies n*b - a*m = 1 with 0 < b < m, so b = n^{-1} mod m.
  std::int64_t r0 = m, r1 = ((n % m) + m) % m;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  std::int64_t b = ((t0 % m) + m) % m;
  __int128 a128 = (static_cast<__int128>(n) * b - 1) / m;
  std::int64_t a = static_cast<std::int64_t>(a128);
  return {b, a, m - b, n - a};
}

}  // namespace slitnorm
