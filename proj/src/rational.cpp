#include "slitnorm/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "slitnorm/errors.hpp"

namespace slitnorm {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw Error(ErrorCode::kParseError, "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorCode::kParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) {
    throw Error(ErrorCode::kParseError, "zero denominator");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text), BigInt(1));
  }
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw Error(ErrorCode::kParseError, "sign belongs on the numerator: '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_integer(text.substr(0, slash), text), den);
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

double Rational::to_double() const {
  // Division in long double keeps a correctly rounded result for the
  // magnitudes used here; cpp_int's own conversion handles big operands.
  if (boost::multiprecision::abs(num_) < BigInt(1) << 60 && den_ < BigInt(1) << 60) {
    return static_cast<double>(static_cast<long double>(num_.convert_to<std::int64_t>()) /
                               static_cast<long double>(den_.convert_to<std::int64_t>()));
  }
  using boost::multiprecision::cpp_bin_float_double;
  return (cpp_bin_float_double(num_) / cpp_bin_float_double(den_)).convert_to<double>();
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::kParseError, "division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kParseError, "integer " + value.str() + " exceeds 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace slitnorm
