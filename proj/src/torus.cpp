#include "slitnorm/torus.hpp"

#include <cstdlib>

#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"

namespace slitnorm {

VerticalSlitTorus::VerticalSlitTorus(Rational rho) : rho_(std::move(rho)) {
  if (rho_ <= Rational(0) || rho_ >= Rational(1)) {
    throw Error(ErrorCode::kInvalidTorus, "slit length " + rho_.str() + " outside (0,1)");
  }
  rho_num_ = to_int64(rho_.num());
  rho_den_ = to_int64(rho_.den());
  rho_d_ = rho_.to_double();
}

bool VerticalSlitTorus::column_visible(std::int64_t m) const {
  __int128 lhs = static_cast<__int128>(m < 0 ? -m : m) * rho_num_;
  return lhs <= rho_den_;
}

bool VerticalSlitTorus::column_strictly_visible(std::int64_t m) const {
  __int128 lhs = static_cast<__int128>(m < 0 ? -m : m) * rho_num_;
  return lhs < rho_den_;
}

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::kVisibleSegment: return "VisibleSegment";
    case CertKind::kTwoSegmentSimple: return "TwoSegmentSimple";
    case CertKind::kFlatSplit: return "FlatSplit";
  }
  return "?";
}

const char* direction_kind_name(DirectionKind k) {
  return k == DirectionKind::kVertex ? "Vertex" : "FlatInterior";
}

namespace {

bool parents_give_vertex(const VerticalSlitTorus& t, const ClassParents& p) {
  const bool lo = t.column_visible(p.low_m), hi = t.column_visible(p.high_m);
  return (lo && hi) || t.column_strictly_visible(p.low_m) || t.column_strictly_visible(p.high_m);
}

void append_path(const NormCertificate& c, Point origin, std::vector<Point>& out) {
  switch (c.kind) {
    case CertKind::kVisibleSegment:
      out.push_back(origin + c.endpoint);
      break;
    case CertKind::kTwoSegmentSimple:
      out.push_back(origin + c.bend);
      out.push_back(origin + c.endpoint);
      break;
    case CertKind::kFlatSplit:
      append_path(c.children[0], origin, out);
      append_path(c.children[1], origin + c.children[0].endpoint, out);
      break;
  }
}

NormCertificate primitive_norm(const VerticalSlitTorus& t, HClass h, const Mat2& map) {
  if (h.m < 0 || (h.m == 0 && h.n < 0)) return negate_certificate(primitive_norm(t, -h, map));

  NormCertificate c;
  c.cls = h;
  c.endpoint = map.apply({static_cast<double>(h.m), static_cast<double>(h.n)});
  if (t.column_visible(h.m)) {
    c.kind = CertKind::kVisibleSegment;
    c.value = norm2(c.endpoint);
    return c;
  }
  ClassParents p = class_parents(h.m, h.n);
  if (parents_give_vertex(t, p)) {
    c.kind = CertKind::kTwoSegmentSimple;
    c.bend = map.apply({static_cast<double>(p.low_m), static_cast<double>(p.low_n) + t.rho_value()});
    c.value = norm2(c.bend) + norm2(c.endpoint - c.bend);
    return c;
  }
  c.kind = CertKind::kFlatSplit;
  c.children.push_back(primitive_norm(t, {p.low_m, p.low_n}, map));
  c.children.push_back(primitive_norm(t, {p.high_m, p.high_n}, map));
  c.value = c.children[0].value + c.children[1].value;
  return c;
}

}  // namespace

std::vector<Point> NormCertificate::polyline() const {
  std::vector<Point> out{{0.0, 0.0}};
  Point origin;
  for (std::int64_t i = 0; i < multiplicity; ++i) {
    append_path(*this, origin, out);
    origin = origin + endpoint;
  }
  return out;
}

NormCertificate negate_certificate(const NormCertificate& c) {
  NormCertificate r = c;
  r.cls = -c.cls;
  r.endpoint = -1.0 * c.endpoint;
  r.bend = c.bend - c.endpoint;
  for (auto& child : r.children) child = negate_certificate(child);
  return r;
}

double replay_length(const NormCertificate& cert) { return polyline_length(cert.polyline()); }

bool is_visible(const VerticalSlitTorus& t, const HClass& h) {
  require_primitive(h);
  return t.column_visible(h.m);
}

NormCertificate stable_norm_mapped(const VerticalSlitTorus& t, const HClass& h, const Mat2& map) {
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "class 0,0");
  std::int64_t k = h.multiplicity();
  NormCertificate c = primitive_norm(t, h.primitive(), map);
  c.cls = h;
  c.multiplicity = k;
  c.value *= static_cast<double>(k);
  return c;
}

NormCertificate stable_norm(const VerticalSlitTorus& t, const HClass& h) {
  return stable_norm_mapped(t, h, Mat2::identity());
}

DirectionKind classify_direction(const VerticalSlitTorus& t, const HClass& h) {
  require_primitive(h);
  if (t.column_visible(h.m)) return DirectionKind::kVertex;
  HClass p = h.m < 0 ? -h : h;
  if (parents_give_vertex(t, class_parents(p.m, p.n))) return DirectionKind::kVertex;
  return DirectionKind::kFlatInterior;
}

std::vector<Point> minimizing_path(const VerticalSlitTorus& t, const HClass& h) {
  return stable_norm(t, h).polyline();
}

}  // namespace slitnorm
