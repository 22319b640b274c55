#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "densitykit/acceptance.hpp"
#include "densitykit/densitykit.hpp"

using namespace densitykit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotApplicable = 2;

struct Options {
  std::string out;
  std::string csv;
  std::string svg;
  std::string obj;
  int res = 64;
  std::string catalog_name;
  std::vector<std::string> params;
  std::string p = "inf";
  std::string which = "full";
  std::vector<std::string> x0;
  std::string radii = "auto";
  std::string mesh;
  std::string curve;
  std::string theorem = "embeddedness";
  int corner = -1;
  double delta = 1.0;
  bool delta_set = false;
  int only = 0;
};

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  int field = 0;
  while (std::getline(ss, tok, ',')) {
    ++field;
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      fail(ErrorKind::parse_error, what + ": field " + std::to_string(field) + " ('" + tok + "') is not a number");
    }
  }
  require(!out.empty(), ErrorKind::parse_error, what + ": empty list");
  return out;
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  const double p = split_numbers(s, "--p").at(0);
  require(p > 2.0, ErrorKind::out_of_range, "--p must exceed 2 or be inf");
  return p;
}

Params parse_params(const std::vector<std::string>& kv) {
  Params out;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::parse_error, "--param expects key=value, got '" + item + "'");
    out[item.substr(0, eq)] = split_numbers(item.substr(eq + 1), "--param " + item.substr(0, eq)).at(0);
  }
  return out;
}

Scene load_scene(const Options& o) {
  require(o.catalog_name.empty() != o.mesh.empty(), ErrorKind::invalid_parameter,
          "give exactly one of --catalog NAME or --mesh FILE");
  if (!o.catalog_name.empty()) return make_scene(o.catalog_name, parse_params(o.params), o.res);
  return load_scene_file(o.mesh);
}

std::vector<PointN> points(const Options& o, int dim, const PointN* fallback) {
  std::vector<PointN> out;
  for (const auto& s : o.x0) {
    const auto c = split_numbers(s, "--x0");
    require(static_cast<int>(c.size()) == dim, ErrorKind::invalid_parameter,
            "--x0 " + s + " needs " + std::to_string(dim) + " coordinates");
    out.push_back(VecN::from(c));
  }
  if (out.empty() && fallback) out.push_back(*fallback);
  require(!out.empty(), ErrorKind::invalid_parameter, "--x0 is required");
  return out;
}

std::vector<double> radii_for(const Options& o, const SurfaceModel& s, const PointN& x0) {
  if (o.radii == "auto") return default_radii(s, x0);
  return split_numbers(o.radii, "--radii");
}

void emit(const Options& o, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty() || o.out == "-")
    std::cout << text;
  else
    write_atomic(o.out, text);
}

json scene_json(const Scene& sc) {
  return {{"name", sc.name}, {"provenance", sc.provenance}, {"resolution", sc.res},
          {"vertices", sc.surface->vertex_count()}, {"faces", sc.surface->face_count()}};
}

int analyze_curve(const Options& o) {
  PolylineCurve c = o.curve.empty() ? load_scene(o).boundary : load_curve_file(o.curve);
  const std::vector<PointN> pts = points(o, c.dim(), nullptr);
  json analyses = json::array();
  for (const auto& x0 : pts) {
    const BoundReport rep = projection_bound_report(c, x0);
    json a = to_json(rep);
    a["x0"] = point_json(x0);
    a["cone_density"] = rep.projection_length / kTwoPi;
    analyses.push_back(a);
  }
  json corners = json::array();
  for (const auto& f : c.corners()) corners.push_back({{"index", f.index}, {"theta", f.theta}});
  json j = {{"dimension", c.dim()},
            {"vertices", c.size()},
            {"length", c.length()},
            {"diameter", c.diameter()},
            {"tc", total_curvature(c)},
            {"tc_kind", "polygonal TC"},
            {"corners", corners},
            {"projection_length", analyses[0]["projection_length"]},
            {"cone_density", analyses[0]["cone_density"]},
            {"analyses", analyses}};
  emit(o, j);
  return kExitOk;
}

int analyze_surface(const Options& o) {
  const Scene sc = load_scene(o);
  const SurfaceModel& s = *sc.surface;
  const double p = parse_p(o.p);
  const MeanCurvatureField H = mean_curvature_field(s);
  json j = {{"scene", scene_json(sc)},
            {"dimension", s.dim()},
            {"area", s.total_area()},
            {"extrinsic_diameter", extrinsic_diameter(s)},
            {"boundary_loops", s.boundary_loops().size()},
            {"euler_characteristic", s.euler_characteristic()},
            {"orientable", s.orientable()},
            {"degenerate_faces", s.degenerate_face_count()},
            {"tc", total_curvature(sc.boundary)},
            {"mean_curvature",
             {{"provenance", H.magnitude.provenance},
              {"unreliable_vertices", H.magnitude.unreliable_count()},
              {"linf", lp_norm(H.magnitude, s, kInfinity)}}},
            {"property_p", to_json(property_p_constants(s, p))}};
  if (s.orientable()) j["genus"] = s.genus();
  if (std::isfinite(p)) j["mean_curvature"]["lp"] = lp_norm(H.magnitude, s, p);
  if (s.has_source()) {
    const SecondFormSup a = second_form_sup(s);
    j["second_form_sup"] = {{"value", a.value}, {"samples", a.samples}};
  }
  json dens = json::array();
  for (const auto& x : points(o, s.dim(), &sc.x0)) {
    json d = {{"x0", point_json(x)}};
    try {
      const DensityResult r = density(s, x, DensityMode::extrapolated);
      d["extrapolated"] = r.value;
      d["boundary_point"] = r.boundary_point;
    } catch (const Error& e) {
      d["extrapolated_error"] = e.what();
    }
    if (vertex_at(s, x)) {
      const DensityResult r = density(s, x, DensityMode::pl_exact);
      d["pl_exact"] = r.value;
      if (!r.label.empty()) d["pl_exact_label"] = r.label;
    }
    dens.push_back(d);
  }
  j["densities"] = dens;
  emit(o, j);
  return kExitOk;
}

int monotonicity(const Options& o) {
  const Scene sc = load_scene(o);
  const SurfaceModel& s = *sc.surface;
  const PropertyPConstants k = property_p_constants(s, parse_p(o.p));
  json runs = json::array();
  bool first = true;
  for (const auto& x0 : points(o, s.dim(), &sc.x0)) {
    const MonotonicityProfile prof = m_profile(s, sc.boundary, x0, radii_for(o, s, x0), k);
    const WeightedMonotonicityReport w = check_weighted_monotonicity(prof);
    json r = to_json(prof, w);
    r["property_p"] = to_json(check_property_p(s, k, prof));
    bool has_large = false;
    for (double rr : prof.radii) has_large = has_large || rr >= prof.r0;
    if (has_large) r["large_radius"] = to_json(check_large_radius_bound(prof));
    runs.push_back(r);
    if (first) {
      if (!o.csv.empty()) write_atomic(o.csv, profile_csv(prof, w));
      if (!o.svg.empty()) write_atomic(o.svg, profile_svg(prof));
      first = false;
    }
  }
  emit(o, {{"scene", scene_json(sc)}, {"constants", to_json(k)}, {"runs", runs}});
  return kExitOk;
}

int verdict_exit(const Certificate& c) {
  switch (c.verdict()) {
    case Verdict::certified: return kExitOk;
    case Verdict::not_applicable: return kExitNotApplicable;
    case Verdict::violated: return kExitError;
  }
  return kExitError;
}

int certify(const Options& o) {
  const Scene sc = load_scene(o);
  const SurfaceModel& s = *sc.surface;
  const double p = parse_p(o.p);
  Certificate c;
  if (o.theorem == "embeddedness") {
    require(o.which == "interior" || o.which == "full", ErrorKind::invalid_parameter, "--which must be interior or full");
    c = embeddedness_certificate(s, sc.boundary, p, o.which == "full" ? EmbeddedWhich::full : EmbeddedWhich::interior);
  } else if (o.theorem == "density") {
    c = density_estimate_certificate(s, sc.boundary, points(o, s.dim(), &sc.x0).front(), p);
  } else if (o.theorem == "corner") {
    require(o.corner >= 0, ErrorKind::invalid_parameter, "--corner INDEX is required for the corner theorem");
    c = corner_density_certificate(s, sc.boundary, o.corner, p);
  } else if (o.theorem == "genus") {
    c = genus_certificate(s, sc.boundary, o.delta, p);
  } else {
    fail(ErrorKind::invalid_parameter, "unknown theorem '" + o.theorem + "'; available: embeddedness, density, corner, genus");
  }
  json j = to_json(c);
  j["scene"] = scene_json(sc);
  emit(o, j);
  return verdict_exit(c);
}

int genus(const Options& o) {
  const Scene sc = load_scene(o);
  const SurfaceModel& s = *sc.surface;
  const int b = static_cast<int>(s.boundary_loops().size());
  json j = {{"scene", scene_json(sc)},
            {"V", s.vertex_count()},
            {"E", s.edge_count()},
            {"F", s.face_count()},
            {"euler_characteristic", s.euler_characteristic()},
            {"boundary_loops", b},
            {"orientable", s.orientable()}};
  require(s.orientable(), ErrorKind::unsupported, "genus of a non-orientable mesh");
  j["genus"] = s.genus();
  const double tc = total_curvature(sc.boundary);
  j["tc"] = tc;
  const GenusBound gb = genus_bound(tc, o.delta, b);
  j["bound"] = {{"delta", o.delta}, {"chi_min", gb.chi_min}, {"g_max", gb.g_max}};
  const Certificate c = genus_certificate(s, sc.boundary, o.delta, parse_p(o.p));
  j["certificate"] = to_json(c);
  emit(o, j);
  return verdict_exit(c);
}

int catalog_cmd(const Options& o) {
  if (!o.catalog_name.empty()) {
    const Scene sc = make_scene(o.catalog_name, parse_params(o.params), o.res);
    if (!o.obj.empty()) write_atomic(o.obj, to_obj(*sc.surface));
    json params = json::object();
    for (const auto& [k, v] : sc.params) params[k] = v;
    emit(o, {{"scene", scene_json(sc)}, {"params", params}, {"x0", point_json(sc.x0)}});
    return kExitOk;
  }
  json list = json::array();
  for (const auto& e : catalog()) {
    json params = json::object();
    for (const auto& [k, v] : e.defaults) params[k] = v;
    list.push_back({{"name", e.name}, {"description", e.description}, {"defaults", params}});
  }
  emit(o, {{"catalog", list}});
  return kExitOk;
}

int selftest(const Options& o) {
  json results = json::array();
  bool ok = true;
  const int n = static_cast<int>(acceptance::criteria().size());
  for (int id = 1; id <= n; ++id) {
    if (o.only > 0 && id != o.only) continue;
    const acceptance::CriterionResult r = acceptance::run(id);
    std::cerr << acceptance::line(r) << '\n';
    ok = ok && r.pass;
    json values = json::object();
    for (const auto& [k, v] : r.values) values[k] = num(v);
    results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                       {"values", values}, {"seconds", r.seconds}});
  }
  emit(o, {{"criteria", results}, {"all_pass", ok}});
  return ok ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"densitykit: densities, monotonicity profiles and embeddedness certificates for surfaces with boundary"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "JSON report path (default stdout)");
    sub->add_option("--res", o.res, "catalog resolution")->check(CLI::PositiveNumber);
    sub->add_option("--catalog", o.catalog_name, "catalog surface name");
    sub->add_option("--param", o.params, "catalog parameter key=value (repeatable)");
    sub->add_option("--mesh", o.mesh, "mesh file (.obj, .off, .json)");
    sub->add_option("--x0", o.x0, "comma-separated point (repeatable)");
    sub->add_option("--p", o.p, "L^p exponent of H: inf or a number > 2");
  };

  auto* curve = app.add_subcommand("analyze-curve", "total curvature and radial projection of a curve");
  common(curve);
  curve->add_option("--curve", o.curve, "curve JSON file");

  auto* surf = app.add_subcommand("analyze-surface", "area, diameter, densities and mean curvature of a surface");
  common(surf);

  auto* mono = app.add_subcommand("monotonicity", "m(r) profile and monotonicity checks");
  common(mono);
  mono->add_option("--radii", o.radii, "auto or comma-separated radii");
  mono->add_option("--csv", o.csv, "CSV profile path");
  mono->add_option("--svg", o.svg, "SVG plot path");

  auto* cert = app.add_subcommand("certify", "certificate for one theorem");
  common(cert);
  cert->add_option("--theorem", o.theorem, "embeddedness | density | corner | genus");
  cert->add_option("--which", o.which, "interior | full");
  cert->add_option("--corner", o.corner, "boundary vertex index of the corner");
  cert->add_option("--delta", o.delta, "Delta for the genus bound");

  auto* gen = app.add_subcommand("genus", "Euler characteristic, genus and genus bound");
  common(gen);
  gen->add_option("--delta", o.delta, "Delta > r0 sup|A|");

  auto* cat = app.add_subcommand("catalog", "list catalog surfaces or build one");
  common(cat);
  cat->add_option("--obj", o.obj, "write the built mesh as OBJ");

  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--out", o.out, "JSON report path (default stdout)");
  self->add_option("--only", o.only, "run a single criterion by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (curve->parsed()) return analyze_curve(o);
    if (surf->parsed()) return analyze_surface(o);
    if (mono->parsed()) return monotonicity(o);
    if (cert->parsed()) return certify(o);
    if (gen->parsed()) return genus(o);
    if (cat->parsed()) return catalog_cmd(o);
    if (self->parsed()) return selftest(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
