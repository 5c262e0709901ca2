#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace slitnorm {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Exact fraction over arbitrary-precision integers.
 *
 * Always stored in lowest terms with a positive denominator, so structural
 * equality coincides with numeric equality and zero is uniquely 0/1.
 */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design of arithmetic
  Rational(BigInt num, BigInt den);

  /// Parses "p/q", "-p/q" or a bare integer "p". Whitespace is not accepted.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_.sign(); }

  /// Largest integer not exceeding the value.
  BigInt floor() const;

  double to_double() const;

  /// Canonical "p/q" text; integers still print with "/1".
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Converts to int64, throwing kParseError when the value does not fit.
std::int64_t to_int64(const BigInt& value);

}  // namespace slitnorm
