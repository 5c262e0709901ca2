// Command-line front end. Every subcommand writes one JSON document or one
// CSV table, to stdout unless --output (or SLITNORM_OUTPUT_DIR) says otherwise.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slitnorm/counting.hpp"
#include "slitnorm/errors.hpp"
#include "slitnorm/farey.hpp"
#include "slitnorm/glued.hpp"
#include "slitnorm/io.hpp"
#include "slitnorm/torus_spec.hpp"
#include "slitnorm/unit_ball.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slitnorm;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitOracleMismatch = 3;

struct Options {
  std::vector<std::string> rho;
  std::string matrix;
  std::string slit;
  std::string torus_json;
  std::vector<std::string> classes;
  std::string format = "json";
  std::string output;
  unsigned workers = 0;

  bool oracle = false;
  double tol = 1e-6;
  double max_norm = 0.0;
  int samples = 64;
  std::int64_t max_denominator = 12;
  std::size_t copies = 0;
  double width = 0.0;
  std::string face;
  std::string weights = "0.25,0.25,0.25,0.25";
  double xmin = 1.0;
  double xmax = 0.0;
  double step = 1.0;
  std::string convention = "signed";
  std::string dump_graph;
};

// Output that is either a JSON document or CSV text.
struct Output {
  std::string text;
  bool csv = false;
};

Output as_json(const json& j) { return {j.dump(2) + "\n", false}; }

fs::path resolve(const std::string& path) {
  const char* dir = std::getenv("SLITNORM_OUTPUT_DIR");
  fs::path p(path);
  if (dir && *dir && p.is_relative()) return fs::path(dir) / p;
  return p;
}

void emit(const Options& o, const std::string& name, const Output& out) {
  std::string path = o.output;
  const char* dir = std::getenv("SLITNORM_OUTPUT_DIR");
  if (path.empty() && dir && *dir) path = name + (out.csv ? ".csv" : ".json");
  if (path.empty()) {
    std::cout << out.text;
    return;
  }
  fs::path target = resolve(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream f(target, std::ios::binary);
  if (!f) throw Error(ErrorCode::kPreconditionViolated, "cannot write " + target.string());
  f << out.text;
}

bool want_csv(const Options& o) { return o.format == "csv"; }

TorusSpec torus(const Options& o) {
  int given = (!o.rho.empty()) + (!o.slit.empty()) + (!o.torus_json.empty());
  if (given != 1) {
    throw Error(ErrorCode::kPreconditionViolated, "give exactly one of --rho, --slit, --torus-json");
  }
  if (!o.matrix.empty() && o.rho.empty()) {
    throw Error(ErrorCode::kPreconditionViolated, "--matrix needs --rho");
  }
  if (!o.torus_json.empty()) {
    std::string text = o.torus_json;
    if (text.find('{') == std::string::npos) {
      std::ifstream f(text);
      if (!f) throw Error(ErrorCode::kParseError, "cannot read " + text);
      std::stringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kParseError, "torus spec is not valid JSON");
    return TorusSpec::from_json(j);
  }
  if (!o.slit.empty()) return TorusSpec::slit(parse_slit(o.slit));
  if (o.rho.size() != 1) throw Error(ErrorCode::kPreconditionViolated, "expected a single --rho");
  Rational rho = Rational::parse(o.rho[0]);
  if (!o.matrix.empty()) return TorusSpec::sheared(parse_matrix(o.matrix), rho);
  return TorusSpec::vertical(rho);
}

HClass single_class(const Options& o) {
  if (o.classes.size() != 1) throw Error(ErrorCode::kPreconditionViolated, "expected one --class");
  return HClass::parse(o.classes[0]);
}

// Denominator first, then slope.
bool enumeration_less(const HClass& a, const HClass& b) {
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

int cmd_norm(const Options& o) {
  TorusSpec t = torus(o);
  HClass h = single_class(o);
  NormCertificate c = t.norm(h);
  HClass prim = h.primitive();
  json j{{"torus", t.to_json()},
         {"certificate", certificate_json(c)},
         {"direction", direction_kind_name(t.classify(prim))},
         {"visibility", visibility_name(t.visibility(prim))}};
  int status = 0;
  double delta = 0.0;
  PathResult path;
  if (o.oracle) {
    path = shortest_path(t.scene(), prim);
    double length = path.length * static_cast<double>(c.multiplicity);
    delta = std::abs(length - c.value) / c.value;
    j["oracle"] = {{"length", round12(length)},
                   {"delta", round12(delta)},
                   {"tolerance", o.tol},
                   {"near_boundary", path.near_boundary},
                   {"nodes_expanded", path.nodes_expanded},
                   {"window", path.padding_used}};
    if (delta > o.tol) status = kExitOracleMismatch;
  }
  if (want_csv(o)) {
    std::string s = o.oracle ? "m,n,value,kind,oracle,delta\n" : "m,n,value,kind\n";
    s += std::to_string(h.m) + "," + std::to_string(h.n) + "," + fmt12(c.value) + "," + cert_kind_name(c.kind);
    if (o.oracle) s += "," + fmt12(path.length * static_cast<double>(c.multiplicity)) + "," + fmt12(delta);
    emit(o, "norm", {s + "\n", true});
  } else {
    emit(o, "norm", as_json(j));
  }
  if (status) std::cerr << "oracle delta " << fmt12(delta) << " exceeds " << fmt12(o.tol) << "\n";
  return status;
}

int cmd_classify(const Options& o) {
  TorusSpec t = torus(o);
  if (o.classes.empty()) throw Error(ErrorCode::kPreconditionViolated, "expected --class");
  json rows = json::array();
  std::string csv = "m,n,visibility,direction\n";
  for (const std::string& text : o.classes) {
    HClass h = HClass::parse(text);
    require_primitive(h);
    const char* vis = visibility_name(t.visibility(h));
    const char* dir = direction_kind_name(t.classify(h));
    rows.push_back({{"class", h.str()}, {"visibility", vis}, {"direction", dir}});
    csv += std::to_string(h.m) + "," + std::to_string(h.n) + "," + vis + "," + dir + "\n";
  }
  emit(o, "classify", want_csv(o) ? Output{csv, true} : as_json({{"torus", t.to_json()}, {"classes", rows}}));
  return 0;
}

int cmd_vertices(const Options& o) {
  TorusSpec t = torus(o);
  auto v = enumerate_vertices(t.as_vertical(), o.max_norm);
  std::sort(v.begin(), v.end(),
            [](const VertexEntry& a, const VertexEntry& b) { return enumeration_less(a.cls, b.cls); });
  json list = json::array();
  std::string csv = "m,n,norm,kind\n";
  for (const VertexEntry& e : v) {
    list.push_back(vertex_json(e));
    csv += std::to_string(e.cls.m) + "," + std::to_string(e.cls.n) + "," + fmt12(e.norm) + "," +
           vertex_kind_name(e.kind) + "\n";
  }
  emit(o, "vertices", want_csv(o) ? Output{csv, true}
                                  : as_json({{"torus", t.to_json()}, {"max_norm", o.max_norm}, {"vertices", list}}));
  return 0;
}

int cmd_profile(const Options& o) {
  TorusSpec t = torus(o);
  auto samples = deviation_profile(t.as_vertical(), o.samples);
  json list = json::array();
  std::string csv = "flattened_coord,gap,m,n,kind\n";
  for (const ProfileSample& s : samples) {
    list.push_back({{"flattened_coord", round12(s.coord)},
                    {"gap", round12(s.gap)},
                    {"m", s.cls.m},
                    {"n", s.cls.n},
                    {"visible", s.visible},
                    {"kind", direction_kind_name(s.kind)}});
    csv += fmt12(s.coord) + "," + fmt12(s.gap) + "," + std::to_string(s.cls.m) + "," + std::to_string(s.cls.n) +
           "," + direction_kind_name(s.kind) + "\n";
  }
  emit(o, "profile", want_csv(o) ? Output{csv, true} : as_json({{"torus", t.to_json()}, {"samples", list}}));
  return 0;
}

int cmd_ball(const Options& o) {
  TorusSpec t = torus(o);
  auto pts = boundary_polyline(t.as_vertical(), o.max_denominator);
  json list = json::array();
  std::string csv = "x,y\n";
  for (Point p : pts) {
    list.push_back(point_json(p));
    csv += fmt12(p.x) + "," + fmt12(p.y) + "\n";
  }
  emit(o, "ball", want_csv(o) ? Output{csv, true}
                              : as_json({{"torus", t.to_json()},
                                         {"max_denominator", o.max_denominator},
                                         {"polyline", list}}));
  return 0;
}

int cmd_word(const Options& o) {
  HClass h = single_class(o);
  std::string w = cutting_word(h.m, h.n);
  auto s = std::count(w.begin(), w.end(), 's');
  auto tc = std::count(w.begin(), w.end(), 't');
  if (want_csv(o)) {
    emit(o, "word", {"m,n,word\n" + std::to_string(h.m) + "," + std::to_string(h.n) + "," + w + "\n", true});
  } else {
    emit(o, "word", as_json({{"class", h.str()}, {"word", w}, {"s_count", s}, {"t_count", tc}}));
  }
  return 0;
}

std::array<double, 4> parse_weights(const std::string& text) {
  std::array<double, 4> w{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 4) break;
    std::size_t used = 0;
    try {
      w[i] = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw Error(ErrorCode::kParseError, "bad weight '" + part + "'");
    ++i;
  }
  if (i != 4 || std::getline(ss, part, ',')) throw Error(ErrorCode::kParseError, "expected 4 weights");
  return w;
}

int cmd_glue(const Options& o) {
  if (o.rho.empty()) throw Error(ErrorCode::kPreconditionViolated, "glue needs --rho");
  std::vector<VerticalSlitTorus> parts;
  for (const auto& r : o.rho) parts.emplace_back(Rational::parse(r));
  if (parts.size() == 1) {
    parts.assign(o.copies ? o.copies : 2, parts[0]);
  } else if (o.copies && o.copies != parts.size()) {
    throw Error(ErrorCode::kPreconditionViolated, "--copies disagrees with the number of --rho values");
  }
  GluedSurface s(std::move(parts), o.width);
  json surface{{"components", json::array()}, {"cylinder_width", o.width}};
  for (std::size_t i = 0; i < s.size(); ++i) surface["components"].push_back(s.component(i).rho().str());

  if (!o.face.empty()) {
    GluedClass f = GluedClass::parse(o.face);
    if (f.blocks.size() != 4) throw Error(ErrorCode::kParseError, "--face needs 'v1;v2;w1;w2'");
    bool ok = flat_face_check(s, f.blocks[0], f.blocks[1], f.blocks[2], f.blocks[3], parse_weights(o.weights));
    emit(o, "glue", as_json({{"surface", surface}, {"face", f.str()}, {"weights", o.weights}, {"on_unit_sphere", ok}}));
    return 0;
  }
  if (!o.classes.empty()) {
    json rows = json::array();
    std::string csv = "class,value,direction\n";
    for (const auto& text : o.classes) {
      GluedClass h = GluedClass::parse(text);
      GluedNorm n = glued_norm(s, h);
      json j = glued_norm_json(h, n);
      j["direction"] = direction_kind_name(glued_classify(s, h));
      csv += "\"" + h.str() + "\"," + fmt12(n.value) + "," + direction_kind_name(glued_classify(s, h)) + "\n";
      rows.push_back(std::move(j));
    }
    emit(o, "glue", want_csv(o) ? Output{csv, true} : as_json({{"surface", surface}, {"classes", rows}}));
    return 0;
  }
  if (o.max_norm <= 0.0) throw Error(ErrorCode::kPreconditionViolated, "glue needs --class, --face or --max-norm");
  auto v = glued_vertices(s, o.max_norm);
  std::stable_sort(v.begin(), v.end(), [](const GluedVertex& a, const GluedVertex& b) {
    if (a.component != b.component) return a.component < b.component;
    return enumeration_less(a.entry.cls, b.entry.cls);
  });
  json list = json::array();
  std::string csv = "component,class,norm,kind\n";
  for (const GluedVertex& g : v) {
    json e = vertex_json(g.entry);
    e["component"] = g.component;
    e["class"] = g.embedded.str();
    list.push_back(std::move(e));
    csv += std::to_string(g.component) + ",\"" + g.embedded.str() + "\"," + fmt12(g.entry.norm) + "," +
           vertex_kind_name(g.entry.kind) + "\n";
  }
  emit(o, "glue", want_csv(o) ? Output{csv, true}
                              : as_json({{"surface", surface}, {"max_norm", o.max_norm}, {"vertices", list}}));
  return 0;
}

int cmd_count(const Options& o) {
  TorusSpec t = torus(o);
  const VerticalSlitTorus& vt = t.as_vertical();
  SignConvention conv;
  if (o.convention == "signed") {
    conv = SignConvention::kSigned;
  } else if (o.convention == "up-to-sign") {
    conv = SignConvention::kUpToSign;
  } else {
    throw Error(ErrorCode::kParseError, "convention must be signed or up-to-sign");
  }
  const int copies = o.copies ? static_cast<int>(o.copies) : 1;
  if (!(o.xmax >= 1.0)) throw Error(ErrorCode::kPreconditionViolated, "--xmax must be >= 1");
  CountTable table = count_table(vt, threshold_range(o.xmin, o.xmax, o.step), conv, copies, o.workers);
  const double coef = expected_coefficient(vt.rho(), copies, conv);

  json rows = json::array();
  std::string csv = "x,p,estimate,ratio\n";
  for (const CountRow& r : table.rows) {
    const double est = coef * r.x * std::log(r.x);
    json row{{"x", round12(r.x)}, {"p", r.p}, {"estimate", round12(est)}, {"ratio", nullptr}};
    std::string ratio;
    if (est > 0.0) {
      row["ratio"] = round12(static_cast<double>(r.p) / est);
      ratio = fmt12(static_cast<double>(r.p) / est);
    }
    rows.push_back(std::move(row));
    csv += fmt12(r.x) + "," + std::to_string(r.p) + "," + fmt12(est) + "," + ratio + "\n";
  }
  json fit = nullptr;
  try {
    Fit f = fit_coefficient(table.rows);
    fit = {{"A", round12(f.a)}, {"B", round12(f.b)}, {"residual", round12(f.residual)},
           {"A_over_expected", round12(f.a / coef)}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientData && e.code() != ErrorCode::kIllConditioned) throw;
    fit = {{"error", e.what()}};
  }
  json j{{"torus", t.to_json()},
         {"convention", sign_convention_name(conv)},
         {"copies", copies},
         {"totient_sum", totient_sum(vt.rho()).str()},
         {"expected_coefficient", round12(coef)},
         {"rows", rows},
         {"fit", fit}};
  emit(o, "count", want_csv(o) ? Output{csv, true} : as_json(j));
  return 0;
}

int cmd_oracle(const Options& o) {
  TorusSpec t = torus(o);
  HClass h = single_class(o);
  require_primitive(h);
  CoverScene scene = t.scene();
  PathResult p = shortest_path(scene, h);
  json nodes = json::array();
  for (const Node& n : p.nodes) nodes.push_back({{"p", n.p}, {"q", n.q}, {"tip", n.tip}});
  json j{{"torus", t.to_json()}, {"class", h.str()}, {"scene", scene_json(scene)}, {"path", path_json(p)}};
  j["path"]["nodes"] = std::move(nodes);
  if (!o.dump_graph.empty()) {
    scene.set_padding(p.padding_used);
    std::string csv = "from_p,from_q,from_tip,to_p,to_q,to_tip,weight\n";
    for (const VisibilityEdge& e : visibility_edges(scene, h)) {
      csv += std::to_string(e.from.p) + "," + std::to_string(e.from.q) + "," + (e.from.tip ? "1" : "0") + "," +
             std::to_string(e.to.p) + "," + std::to_string(e.to.q) + "," + (e.to.tip ? "1" : "0") + "," +
             fmt12(e.weight) + "\n";
    }
    fs::path target = resolve(o.dump_graph);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ofstream(target, std::ios::binary) << csv;
  }
  if (want_csv(o)) {
    std::string csv = "x,y\n";
    for (Point q : p.polyline) csv += fmt12(q.x) + "," + fmt12(q.y) + "\n";
    emit(o, "oracle", {csv, true});
  } else {
    emit(o, "oracle", as_json(j));
  }
  return 0;
}

void add_torus(CLI::App* sub, Options& o, bool rho_many = false) {
  auto* r = sub->add_option("--rho", o.rho, "vertical slit length p/q");
  if (!rho_many) r->expected(1);
  sub->add_option("--matrix", o.matrix, "unimodular map a,b,c,d applied to the --rho torus");
  sub->add_option("--slit", o.slit, "slit vector beta,alpha (p/q for exact, decimals for real)");
  sub->add_option("--torus-json", o.torus_json, "torus spec as a JSON file or inline JSON");
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.output, "output file (relative paths go under SLITNORM_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable norms on slit tori"};
  app.require_subcommand(1);
  Options o;

  auto* norm = app.add_subcommand("norm", "stable norm certificate of one class");
  add_torus(norm, o);
  add_output(norm, o);
  norm->add_option("--class", o.classes, "class m,n")->required()->expected(1);
  norm->add_flag("--oracle", o.oracle, "cross-check against the cover oracle");
  norm->add_option("--tol", o.tol, "relative tolerance for --oracle");

  auto* classify = app.add_subcommand("classify", "visibility and vertex/flat type");
  add_torus(classify, o);
  add_output(classify, o);
  classify->add_option("--class", o.classes, "class m,n (repeatable)")->required();

  auto* vertices = app.add_subcommand("vertices", "first-quadrant vertex directions");
  add_torus(vertices, o);
  add_output(vertices, o);
  vertices->add_option("--max-norm", o.max_norm, "norm bound")->required();

  auto* profile = app.add_subcommand("profile", "deviation profile over the first octant");
  add_torus(profile, o);
  add_output(profile, o);
  profile->add_option("--samples", o.samples, "Farey order and number of angle samples");

  auto* ball = app.add_subcommand("ball", "first-quadrant boundary of the unit ball");
  add_torus(ball, o);
  add_output(ball, o);
  ball->add_option("--max-denominator", o.max_denominator, "largest |m| and |n| of the directions used");

  auto* word = app.add_subcommand("word", "cutting word of a coprime class");
  add_output(word, o);
  word->add_option("--class", o.classes, "class m,n")->required()->expected(1);

  auto* glue = app.add_subcommand("glue", "glued surfaces: norms, vertices, flat faces");
  add_output(glue, o);
  glue->add_option("--rho", o.rho, "component slit lengths (repeatable)")->required();
  glue->add_option("--copies", o.copies, "number of copies of a single --rho (default 2)");
  glue->add_option("--width", o.width, "cylinder width")->required();
  glue->add_option("--class", o.classes, "glued class m1,n1;m2,n2;... (repeatable)");
  glue->add_option("--max-norm", o.max_norm, "list vertices up to this norm");
  glue->add_option("--face", o.face, "flat face check for v1;v2;w1;w2");
  glue->add_option("--weights", o.weights, "four weights for --face");

  auto* count = app.add_subcommand("count", "count simple classes and fit the growth rate");
  add_torus(count, o);
  add_output(count, o);
  count->add_option("--xmin", o.xmin, "first threshold");
  count->add_option("--xmax", o.xmax, "last threshold")->required();
  count->add_option("--step", o.step, "threshold step");
  count->add_option("--copies", o.copies, "glued copies");
  count->add_option("--convention", o.convention, "signed or up-to-sign");
  count->add_option("--workers", o.workers, "worker threads (0 = all cores)");

  auto* oracle = app.add_subcommand("oracle", "raw shortest path in the cover");
  add_torus(oracle, o);
  add_output(oracle, o);
  oracle->add_option("--class", o.classes, "target class m,n")->required()->expected(1);
  oracle->add_option("--dump-graph", o.dump_graph, "write the visibility graph as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (*norm) return cmd_norm(o);
    if (*classify) return cmd_classify(o);
    if (*vertices) return cmd_vertices(o);
    if (*profile) return cmd_profile(o);
    if (*ball) return cmd_ball(o);
    if (*word) return cmd_word(o);
    if (*glue) return cmd_glue(o);
    if (*count) return cmd_count(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kTargetUnreachable:
      case ErrorCode::kWindowTooSmall:
        return 1;
      default:
        return kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
