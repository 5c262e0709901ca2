#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "slitnorm/counting.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"
#include "slitnorm/glued.hpp"
#include "slitnorm/io.hpp"
#include "slitnorm/torus_spec.hpp"
#include "slitnorm/unit_ball.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace slitnorm;

namespace {

// Tori cross the boundary as JSON text; results go back the same way.
TorusSpec spec_of(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return TorusSpec::from_json(j);
}

VerticalSlitTorus vertical_of(const std::string& rho) { return VerticalSlitTorus{Rational::parse(rho)}; }

SignConvention convention_of(const std::string& name) {
  if (name == "signed") return SignConvention::kSigned;
  if (name == "up-to-sign") return SignConvention::kUpToSign;
  throw Error(ErrorCode::kParseError, "unknown convention '" + name + "'");
}

GluedSurface glued_of(const std::vector<std::string>& rhos, double width) {
  std::vector<VerticalSlitTorus> parts;
  for (const auto& r : rhos) parts.push_back(vertical_of(r));
  return GluedSurface(std::move(parts), width);
}

}  // namespace

PYBIND11_MODULE(_slitnorm, m) {
  static py::exception<Error> error(m, "SlitnormError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("norm", [](const std::string& torus, const std::string& cls) {
    return certificate_json(spec_of(torus).norm(HClass::parse(cls))).dump();
  });
  m.def("classify", [](const std::string& torus, const std::string& cls) {
    return std::string(direction_kind_name(spec_of(torus).classify(HClass::parse(cls))));
  });
  m.def("visibility", [](const std::string& torus, const std::string& cls) {
    return std::string(visibility_name(spec_of(torus).visibility(HClass::parse(cls))));
  });
  m.def("oracle", [](const std::string& torus, const std::string& cls) {
    CoverScene scene = spec_of(torus).scene();
    PathResult r;
    {
      py::gil_scoped_release release;
      r = shortest_path(scene, HClass::parse(cls));
    }
    return path_json(r).dump();
  });
  m.def("vertices", [](const std::string& rho, double max_norm) {
    json out = json::array();
    for (const auto& v : enumerate_vertices(vertical_of(rho), max_norm)) out.push_back(vertex_json(v));
    return out.dump();
  });
  m.def("norm_of_vector", [](const std::string& rho, double x, double y) {
    return norm_of_vector(vertical_of(rho), Point{x, y});
  });
  m.def("cutting_word", &cutting_word);
  m.def("farey_parents", [](const std::string& x) {
    FareyParents p = farey_parents(Rational::parse(x));
    return py::make_tuple(p.low.str(), p.high.str());
  });
  m.def("totient_sum", [](const std::string& rho) { return totient_sum(Rational::parse(rho)).str(); });
  m.def("expected_coefficient", [](const std::string& rho, int copies, const std::string& conv) {
    return expected_coefficient(Rational::parse(rho), copies, convention_of(conv));
  });
  m.def("count", [](const std::string& rho, const std::vector<double>& xs, const std::string& conv,
                    int copies, unsigned workers) {
    VerticalSlitTorus t = vertical_of(rho);
    SignConvention c = convention_of(conv);
    CountTable table;
    {
      py::gil_scoped_release release;
      table = count_table(t, xs, c, copies, workers);
    }
    std::vector<std::pair<double, std::int64_t>> rows;
    for (const auto& r : table.rows) rows.emplace_back(r.x, r.p);
    return rows;
  });
  m.def("fit_coefficient", [](const std::vector<double>& xs, const std::vector<double>& ps) {
    Fit f = fit_coefficient(xs, ps);
    return py::make_tuple(f.a, f.b, f.residual);
  });
  m.def("glued_norm", [](const std::vector<std::string>& rhos, double width, const std::string& cls) {
    GluedSurface s = glued_of(rhos, width);
    GluedClass h = GluedClass::parse(cls);
    return glued_norm_json(h, glued_norm(s, h)).dump();
  });
  m.def("glued_classify", [](const std::vector<std::string>& rhos, double width, const std::string& cls) {
    return std::string(direction_kind_name(glued_classify(glued_of(rhos, width), GluedClass::parse(cls))));
  });
}
