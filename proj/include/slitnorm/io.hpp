#pragma once

#include <string>

#include <json.hpp>

#include "slitnorm/counting.hpp"
#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/glued.hpp"
#include "slitnorm/torus.hpp"
#include "slitnorm/unit_ball.hpp"

namespace slitnorm {

/// Value rounded to 12 significant digits, so dumps are stable.
double round12(double x);
/// "%.12g" text for CSV cells.
std::string fmt12(double x);

nlohmann::json point_json(Point p);

/// {class, multiplicity, value, kind, endpoint, bend?, children?}
nlohmann::json certificate_json(const NormCertificate& c);
/// Inverse of certificate_json, up to the rounding of the numbers.
NormCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json scene_json(const CoverScene& s);
nlohmann::json path_json(const PathResult& p);
nlohmann::json vertex_json(const VertexEntry& v);
nlohmann::json glued_norm_json(const GluedClass& h, const GluedNorm& n);

}  // namespace slitnorm
