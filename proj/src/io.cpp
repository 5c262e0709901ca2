#include "slitnorm/io.hpp"

#include <cstdio>
#include <cstdlib>

#include "slitnorm/errors.hpp"

namespace slitnorm {

using nlohmann::json;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

double round12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

json point_json(Point p) { return json::array({round12(p.x), round12(p.y)}); }

json certificate_json(const NormCertificate& c) {
  json j{{"class", c.cls.str()},
         {"multiplicity", c.multiplicity},
         {"value", round12(c.value)},
         {"kind", cert_kind_name(c.kind)},
         {"endpoint", point_json(c.endpoint)}};
  if (c.kind == CertKind::kTwoSegmentSimple) j["bend"] = point_json(c.bend);
  if (c.kind == CertKind::kFlatSplit) {
    json children = json::array();
    for (const auto& child : c.children) children.push_back(certificate_json(child));
    j["children"] = std::move(children);
  }
  return j;
}

namespace {

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParseError, "expected [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

CertKind kind_from_name(const std::string& s) {
  for (CertKind k : {CertKind::kVisibleSegment, CertKind::kTwoSegmentSimple, CertKind::kFlatSplit}) {
    if (s == cert_kind_name(k)) return k;
  }
  throw Error(ErrorCode::kParseError, "unknown certificate kind '" + s + "'");
}

}  // namespace

NormCertificate certificate_from_json(const json& j) {
  try {
    NormCertificate c;
    c.cls = HClass::parse(j.at("class").get<std::string>());
    c.multiplicity = j.at("multiplicity").get<std::int64_t>();
    c.value = j.at("value").get<double>();
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    c.endpoint = point_from_json(j.at("endpoint"));
    if (j.contains("bend")) c.bend = point_from_json(j.at("bend"));
    if (j.contains("children")) {
      for (const json& child : j.at("children")) c.children.push_back(certificate_from_json(child));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("certificate: ") + e.what());
  }
}

json scene_json(const CoverScene& s) {
  json j{{"slit_vector", point_json(s.slit())}, {"window", s.padding()}, {"exact", s.exact()}};
  const Mat2& m = s.metric();
  j["metric"] = json::array({json::array({round12(m.a), round12(m.b)}), json::array({round12(m.c), round12(m.d)})});
  return j;
}

json path_json(const PathResult& p) {
  json poly = json::array();
  for (Point q : p.polyline) poly.push_back(point_json(q));
  return {{"length", round12(p.length)},
          {"polyline", std::move(poly)},
          {"nodes_expanded", p.nodes_expanded},
          {"near_boundary", p.near_boundary},
          {"window", p.padding_used}};
}

json vertex_json(const VertexEntry& v) {
  json j{{"m", v.cls.m}, {"n", v.cls.n}, {"norm", round12(v.norm)}, {"kind", vertex_kind_name(v.kind)}};
  if (v.kind == VertexKind::kChildOfVisible) {
    j["parent"] = v.parent.str();
    j["k"] = v.k;
  }
  return j;
}

json glued_norm_json(const GluedClass& h, const GluedNorm& n) {
  json blocks = json::array();
  for (const BlockCertificate& b : n.blocks) {
    json c = certificate_json(b.cert);
    c["component"] = b.component;
    blocks.push_back(std::move(c));
  }
  return {{"class", h.str()}, {"value", round12(n.value)}, {"blocks", std::move(blocks)}};
}

}  // namespace slitnorm
