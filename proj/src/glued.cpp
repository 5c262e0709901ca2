#include "slitnorm/glued.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "slitnorm/cover_oracle.hpp"
#include "slitnorm/errors.hpp"

namespace slitnorm {

GluedSurface::GluedSurface(std::vector<VerticalSlitTorus> components, double cylinder_width)
    : components_(std::move(components)), width_(cylinder_width) {
  if (components_.size() < 2) {
    throw Error(ErrorCode::kPreconditionViolated, "a glued surface needs at least two tori");
  }
  if (!std::isfinite(width_)) throw Error(ErrorCode::kCylinderTooShort, "width is not finite");
  for (const auto& t : components_) {
    if (!(width_ > t.rho_value())) {
      throw Error(ErrorCode::kCylinderTooShort,
                  "width " + std::to_string(width_) + " does not exceed rho " + t.rho().str());
    }
  }
}

GluedSurface GluedSurface::copies(const VerticalSlitTorus& t, std::size_t n, double cylinder_width) {
  return GluedSurface(std::vector<VerticalSlitTorus>(n, t), cylinder_width);
}

bool GluedClass::is_zero() const { return nonzero_blocks() == 0; }

std::size_t GluedClass::nonzero_blocks() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const HClass& b) { return !b.is_zero(); }));
}

std::string GluedClass::str() const {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += ';';
    out += blocks[i].str();
  }
  return out;
}

GluedClass GluedClass::parse(std::string_view text) {
  GluedClass h;
  std::size_t start = 0;
  while (true) {
    auto semi = text.find(';', start);
    h.blocks.push_back(HClass::parse(text.substr(start, semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return h;
}

namespace {

void check_shape(const GluedSurface& s, const GluedClass& h) {
  if (h.blocks.size() != s.size()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "class has " + std::to_string(h.blocks.size()) + " blocks, surface has " +
                    std::to_string(s.size()) + " components");
  }
  if (h.is_zero()) throw Error(ErrorCode::kZeroClass, "every block is zero");
}

std::int64_t det(const HClass& a, const HClass& b) { return a.m * b.n - a.n * b.m; }

Point unit(const VerticalSlitTorus& t, const HClass& h) {
  const double k = 1.0 / stable_norm(t, h).value;
  return {k * static_cast<double>(h.m), k * static_cast<double>(h.n)};
}

}  // namespace

GluedNorm glued_norm(const GluedSurface& s, const GluedClass& h) {
  check_shape(s, h);
  GluedNorm out;
  for (std::size_t i = 0; i < h.blocks.size(); ++i) {
    if (h.blocks[i].is_zero()) continue;
    BlockCertificate b{i, stable_norm(s.component(i), h.blocks[i])};
    out.value += b.cert.value;
    out.blocks.push_back(std::move(b));
  }
  return out;
}

DirectionKind glued_classify(const GluedSurface& s, const GluedClass& h) {
  check_shape(s, h);
  if (h.nonzero_blocks() > 1) return DirectionKind::kFlatInterior;
  for (std::size_t i = 0; i < h.blocks.size(); ++i) {
    if (!h.blocks[i].is_zero()) return classify_direction(s.component(i), h.blocks[i].primitive());
  }
  return DirectionKind::kFlatInterior;
}

std::vector<GluedVertex> glued_vertices(const GluedSurface& s, double max_norm) {
  std::vector<GluedVertex> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (const VertexEntry& e : enumerate_vertices(s.component(i), max_norm)) {
      GluedClass g{std::vector<HClass>(s.size())};
      g.blocks[i] = e.cls;
      out.push_back({i, e, std::move(g)});
    }
  }
  return out;
}

void require_adjacent(const VerticalSlitTorus& t, const HClass& a, const HClass& b) {
  require_primitive(a);
  require_primitive(b);
  const std::string pair = "(" + a.str() + ") and (" + b.str() + ")";
  if (std::abs(det(a, b)) != 1) throw Error(ErrorCode::kNotAdjacent, pair + " are not unimodular");
  if (classify_direction(t, a) != DirectionKind::kVertex ||
      classify_direction(t, b) != DirectionKind::kVertex) {
    throw Error(ErrorCode::kNotAdjacent, pair + " are not both vertices");
  }
  // With det = 1 no class lies strictly between a and b except positive
  // combinations, and a flat through a + b spans the whole cone.
  const HClass mid = a + b;
  const NormCertificate c = stable_norm(t, mid);
  const double sum = stable_norm(t, a).value + stable_norm(t, b).value;
  if (classify_direction(t, mid) != DirectionKind::kFlatInterior ||
      std::abs(c.value - sum) > 1e-12 * sum) {
    throw Error(ErrorCode::kNotAdjacent, pair + " have a vertex between them");
  }
}

bool flat_face_check(const GluedSurface& s, const HClass& v1, const HClass& v2,
                     const HClass& w1, const HClass& w2, const std::array<double, 4>& weights,
                     double tol) {
  double total = 0.0;
  for (double l : weights) {
    if (!(l >= 0.0)) throw Error(ErrorCode::kPreconditionViolated, "weights must be nonnegative");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kPreconditionViolated, "weights must sum to 1");
  }
  const VerticalSlitTorus& t0 = s.component(0);
  const VerticalSlitTorus& t1 = s.component(1);
  require_adjacent(t0, v1, v2);
  require_adjacent(t1, w1, w2);
  const Point b0 = weights[0] * unit(t0, v1) + weights[1] * unit(t0, v2);
  const Point b1 = weights[2] * unit(t1, w1) + weights[3] * unit(t1, w2);
  return std::abs(norm_of_vector(t0, b0) + norm_of_vector(t1, b1) - 1.0) <= tol;
}

double glued_oracle_norm(const GluedSurface& s, const GluedClass& h) {
  check_shape(s, h);
  if (h.nonzero_blocks() != 1) {
    throw Error(ErrorCode::kPreconditionViolated, "the glued oracle models single-block classes");
  }
  for (std::size_t i = 0; i < h.blocks.size(); ++i) {
    if (h.blocks[i].is_zero()) continue;
    return oracle_norm(CoverScene::vertical(s.component(i).rho()), h.blocks[i]);
  }
  return 0.0;
}

}  // namespace slitnorm
