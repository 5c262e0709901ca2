#include "slitnorm/hclass.hpp"

#include <charconv>

#include "slitnorm/errors.hpp"
#include "slitnorm/geometry.hpp"

namespace slitnorm {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "bad class '" + std::string(whole) + "', expected m,n");
  }
  return v;
}

}  // namespace

HClass HClass::parse(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "bad class '" + std::string(text) + "', expected m,n");
  }
  return {parse_int(text.substr(0, comma), text), parse_int(text.substr(comma + 1), text)};
}

void require_primitive(const HClass& h) {
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  if (!h.is_primitive()) throw Error(ErrorCode::kNonPrimitive, "class " + h.str());
}

double polyline_length(const std::vector<Point>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += norm2(pts[i] - pts[i - 1]);
  return total;
}

}  // namespace slitnorm
