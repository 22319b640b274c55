#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "densitykit/catalog.hpp"
#include "densitykit/certificates.hpp"

namespace densitykit {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Mesh and curve input

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& source, int line, const std::string& msg) {
  fail(ErrorKind::parse_error, source + ":" + std::to_string(line) + ": " + msg);
}

inline double to_double(const std::string& tok, const std::string& source, int line) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) parse_fail(source, line, "bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(source, line, "bad number '" + tok + "'");
  }
}

inline long to_long(const std::string& tok, const std::string& source, int line) {
  try {
    size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) parse_fail(source, line, "bad integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(source, line, "bad integer '" + tok + "'");
  }
}

/// Polygon (a, b, c, ...) as a triangle fan from a.
inline void fan(const std::vector<int>& poly, std::vector<Face>& out) {
  for (size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
}

}  // namespace detail

/// Wavefront OBJ: 'v x y z' and 'f i j k ...' (1-based, negative relative,
/// 'i/t/n' forms accepted); other records are ignored.
inline MeshData parse_obj(std::istream& in, const std::string& source = "<obj>") {
  MeshData m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::vector<double> c;
      std::string tok;
      while (ls >> tok) c.push_back(detail::to_double(tok, source, lineno));
      if (c.size() < 3) detail::parse_fail(source, lineno, "vertex needs 3 coordinates");
      c.resize(3);  // drop optional w / colour
      m.vertices.push_back(VecN::from(c));
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        long idx = detail::to_long(head, source, lineno);
        const long nv = static_cast<long>(m.vertices.size());
        if (idx < 0) idx = nv + idx + 1;
        if (idx < 1 || idx > nv) detail::parse_fail(source, lineno, "face index " + head + " out of range");
        poly.push_back(static_cast<int>(idx - 1));
      }
      if (poly.size() < 3) detail::parse_fail(source, lineno, "face needs at least 3 vertices");
      detail::fan(poly, m.faces);
    }
  }
  if (m.vertices.empty()) detail::parse_fail(source, lineno, "no vertices");
  if (m.faces.empty()) detail::parse_fail(source, lineno, "no faces");
  return m;
}

/// OFF: header, counts, vertices, then 'k i0 ... i{k-1}' faces (0-based).
inline MeshData parse_off(std::istream& in, const std::string& source = "<off>") {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(lineno, line);
  }
  size_t at = 0;
  if (lines.empty()) detail::parse_fail(source, lineno, "empty file");
  std::string first = lines[0].second;
  first.erase(0, first.find_first_not_of(" \t"));
  if (first.rfind("OFF", 0) != 0) detail::parse_fail(source, lines[0].first, "missing OFF header");
  first.erase(0, 3);
  std::istringstream hs(first);
  long nv = -1, nf = -1, ne = 0;
  if (!(hs >> nv >> nf >> ne)) {
    ++at;
    if (at >= lines.size()) detail::parse_fail(source, lineno, "missing counts");
    std::istringstream cs(lines[at].second);
    if (!(cs >> nv >> nf)) detail::parse_fail(source, lines[at].first, "bad counts line");
  }
  ++at;
  if (nv <= 0 || nf <= 0) detail::parse_fail(source, lines[0].first, "counts must be positive");
  MeshData m;
  for (long i = 0; i < nv; ++i, ++at) {
    if (at >= lines.size()) detail::parse_fail(source, lineno, "expected " + std::to_string(nv) + " vertices");
    std::istringstream vs(lines[at].second);
    std::vector<double> c;
    std::string tok;
    while (vs >> tok) c.push_back(detail::to_double(tok, source, lines[at].first));
    if (c.size() < 3) detail::parse_fail(source, lines[at].first, "vertex needs 3 coordinates");
    c.resize(3);
    m.vertices.push_back(VecN::from(c));
  }
  for (long i = 0; i < nf; ++i, ++at) {
    if (at >= lines.size()) detail::parse_fail(source, lineno, "expected " + std::to_string(nf) + " faces");
    std::istringstream fs(lines[at].second);
    std::string tok;
    if (!(fs >> tok)) detail::parse_fail(source, lines[at].first, "empty face record");
    const long k = detail::to_long(tok, source, lines[at].first);
    if (k < 3) detail::parse_fail(source, lines[at].first, "face needs at least 3 vertices");
    std::vector<int> poly;
    for (long q = 0; q < k; ++q) {
      if (!(fs >> tok)) detail::parse_fail(source, lines[at].first, "face record too short");
      const long idx = detail::to_long(tok, source, lines[at].first);
      if (idx < 0 || idx >= nv) detail::parse_fail(source, lines[at].first, "face index out of range");
      poly.push_back(static_cast<int>(idx));
    }
    detail::fan(poly, m.faces);
  }
  return m;
}

namespace detail {

inline PointN json_point(const json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(ErrorKind::parse_error, what + ": expected " + std::to_string(dim) + " coordinates");
  std::vector<double> c;
  for (const auto& x : j) {
    if (!x.is_number()) fail(ErrorKind::parse_error, what + ": non-numeric coordinate");
    c.push_back(x.get<double>());
  }
  return VecN::from(c);
}

inline json parse_json_text(std::istream& in, const std::string& source) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse_error, source + ": " + e.what());
  }
}

inline std::vector<CornerFlag> json_corners(const json& j) {
  std::vector<CornerFlag> out;
  if (!j.contains("corners")) return out;
  int rec = 0;
  for (const auto& c : j.at("corners")) {
    if (!c.contains("index") || !c.contains("theta"))
      fail(ErrorKind::parse_error, "corner record " + std::to_string(rec) + " needs index and theta");
    out.push_back({c.at("index").get<int>(), c.at("theta").get<double>()});
    ++rec;
  }
  return out;
}

}  // namespace detail

/// {"dimension": n, "vertices": [[...]], "closed": true, "corners": [{"index", "theta"}]}
inline PolylineCurve parse_curve_json(std::istream& in, const std::string& source = "<curve>") {
  const json j = detail::parse_json_text(in, source);
  try {
    const int dim = j.value("dimension", 3);
    std::vector<PointN> pts;
    int rec = 0;
    for (const auto& p : j.at("vertices")) pts.push_back(detail::json_point(p, dim, "vertex " + std::to_string(rec++)));
    return PolylineCurve(std::move(pts), j.value("closed", true), detail::json_corners(j));
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, source + ": " + e.what());
  }
}

struct JsonScene {
  MeshData mesh;
  std::vector<std::vector<int>> boundary_loops;
  std::vector<CornerFlag> corners;
};

/// {"dimension": n, "vertices": [...], "faces": [[i,j,k],...], "boundary_loops": [[...]], "corners": [...]}
inline JsonScene parse_scene_json(std::istream& in, const std::string& source = "<scene>") {
  const json j = detail::parse_json_text(in, source);
  JsonScene out;
  try {
    const int dim = j.value("dimension", 3);
    int rec = 0;
    for (const auto& p : j.at("vertices"))
      out.mesh.vertices.push_back(detail::json_point(p, dim, "vertex " + std::to_string(rec++)));
    rec = 0;
    for (const auto& f : j.at("faces")) {
      std::vector<int> poly = f.get<std::vector<int>>();
      if (poly.size() < 3) fail(ErrorKind::parse_error, source + ": face " + std::to_string(rec) + " has < 3 vertices");
      for (int v : poly)
        if (v < 0 || v >= static_cast<int>(out.mesh.vertices.size()))
          fail(ErrorKind::parse_error, source + ": face " + std::to_string(rec) + " index out of range");
      detail::fan(poly, out.mesh.faces);
      ++rec;
    }
    if (j.contains("boundary_loops")) out.boundary_loops = j.at("boundary_loops").get<std::vector<std::vector<int>>>();
    out.corners = detail::json_corners(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, source + ": " + e.what());
  }
  return out;
}

/// Scene from an .obj, .off or .json file; declared boundary loops must
/// agree with the mesh.
inline Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse_error, "cannot open " + path);
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".obj") {
    MeshData m = parse_obj(in, path);
    return scene_from_mesh(std::move(m.vertices), std::move(m.faces), "file:" + path);
  }
  if (ext == ".off") {
    MeshData m = parse_off(in, path);
    return scene_from_mesh(std::move(m.vertices), std::move(m.faces), "file:" + path);
  }
  if (ext == ".json") {
    JsonScene js = parse_scene_json(in, path);
    Scene sc = scene_from_mesh(std::move(js.mesh.vertices), std::move(js.mesh.faces), "file:" + path);
    if (!js.boundary_loops.empty()) {
      require(js.boundary_loops.size() == sc.surface->boundary_loops().size(), ErrorKind::input_inconsistent,
              "declared boundary loop count differs from the mesh");
      std::vector<PointN> pts;
      for (int v : js.boundary_loops.front()) {
        require(v >= 0 && v < sc.surface->vertex_count(), ErrorKind::input_inconsistent, "boundary index out of range");
        pts.push_back(sc.surface->vertex(v));
      }
      PolylineCurve declared(std::move(pts), true, js.corners);
      require(boundary_matches(*sc.surface, declared), ErrorKind::input_inconsistent,
              "declared boundary loop does not match the mesh boundary");
      sc.boundary = std::move(declared);
    } else if (!js.corners.empty()) {
      sc.boundary = sc.surface->boundary_curve(0, js.corners);
    }
    return sc;
  }
  fail(ErrorKind::parse_error, "unknown mesh extension '" + ext + "' (expected .obj, .off or .json)");
}

inline PolylineCurve load_curve_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse_error, "cannot open " + path);
  return parse_curve_json(in, path);
}

// ---------------------------------------------------------------------------
// Output

/// Writes through a sibling temporary file and renames it into place.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::string>{}(path + content) & 0xffff);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorKind::invalid_parameter, "cannot write " + tmp.string());
    out << content;
    out.flush();
    require(out.good(), ErrorKind::invalid_parameter, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorKind::invalid_parameter, "cannot rename into " + path + ": " + ec.message());
  }
}

inline std::string to_obj(const SurfaceModel& s) {
  require(s.dim() == 3, ErrorKind::unsupported, "OBJ output is 3-dimensional only");
  std::ostringstream o;
  o << std::setprecision(17);
  for (const auto& v : s.vertices()) o << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& f : s.faces()) o << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return o.str();
}

/// JSON numbers cannot hold inf / nan; those become strings.
inline json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline json point_json(const PointN& p) {
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline json to_json(const Conclusion& c) {
  return {{"name", c.name}, {"relation", c.relation}, {"bound", num(c.bound)}, {"measured", num(c.measured)},
          {"slack", num(c.slack)}, {"ok", c.ok}};
}

inline json to_json(const Certificate& c) {
  json hyps = json::array();
  for (const auto& h : c.hypotheses)
    hyps.push_back({{"name", h.name}, {"relation", h.relation}, {"required", num(h.required)},
                    {"measured", num(h.measured)}, {"ok", h.ok}});
  json checks = json::array();
  for (const auto& k : c.checks) checks.push_back(to_json(k));
  return {{"theorem", std::string(to_string(c.theorem))},
          {"verdict", std::string(to_string(c.verdict()))},
          {"hypotheses", hyps},
          {"conclusion", to_json(c.conclusion)},
          {"checks", checks},
          {"citations", c.citations},
          {"notes", c.notes},
          {"inputs_digest", c.inputs_digest}};
}

inline json to_json(const BoundReport& r) {
  json j = {{"projection_length", r.projection_length},
            {"tc", r.tc},
            {"tc_kind", r.tc_kind},
            {"bound", r.bound},
            {"slack", r.slack},
            {"tolerance", r.tolerance},
            {"violation", r.violation},
            {"boundary_mode", r.boundary_mode}};
  if (r.boundary_mode) {
    j["vertex"] = r.vertex;
    j["theta"] = r.theta;
  }
  return j;
}

inline json to_json(const PropertyPConstants& k) {
  return {{"p", num(k.p)},           {"alpha", k.alpha},
          {"lambda", k.lambda},      {"c_p", k.c_p},
          {"h_norm", k.h_norm},      {"r0", k.r0},
          {"scaled_lambda", k.scaled_lambda()},
          {"smallness_ok", k.smallness_ok},
          {"smallness_lhs", num(k.smallness_lhs)},
          {"smallness_rhs", num(k.smallness_rhs)},
          {"smallness_margin", num(k.smallness_margin)},
          {"provenance", k.provenance}};
}

inline json to_json(const SlackReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"r", x.r}, {"lhs", x.lhs}, {"rhs", x.rhs}, {"slack", x.slack}, {"tol", x.tol}, {"ok", x.ok}});
  return {{"rows", rows}, {"min_slack", num(r.min_slack)}, {"violations", r.violations}};
}

inline json to_json(const MonotonicityProfile& p, const WeightedMonotonicityReport& w) {
  json rows = json::array();
  for (size_t i = 0; i < p.radii.size(); ++i)
    rows.push_back({{"r", p.radii[i]},
                    {"m", p.m_values[i]},
                    {"weighted_m", p.weighted(i)},
                    {"defect", w.per_radius[i]},
                    {"surface_area", p.surface_area[i]},
                    {"cone_area", p.cone_area[i]}});
  return {{"x0", point_json(p.x0)},
          {"alpha", p.alpha},
          {"lambda", p.lambda},
          {"r0", p.r0},
          {"m_r0", p.m_r0},
          {"cone_t_max", p.cone_t_max},
          {"conormal_max", num(p.conormal_max)},
          {"tol_disc", w.tol},
          {"min_defect", num(w.min_defect)},
          {"violations", w.violations},
          {"profile", rows}};
}

/// CSV with header r,m,weighted_m,defect.
inline std::string profile_csv(const MonotonicityProfile& p, const WeightedMonotonicityReport& w) {
  std::ostringstream o;
  o << std::setprecision(12) << "r,m,weighted_m,defect\n";
  for (size_t i = 0; i < p.radii.size(); ++i)
    o << p.radii[i] << ',' << p.m_values[i] << ',' << p.weighted(i) << ',' << w.per_radius[i] << '\n';
  return o.str();
}

/// Line plot of m(r) and e^{Lambda r^alpha} m(r) against log r.
inline std::string profile_svg(const MonotonicityProfile& p) {
  const double W = 640, H = 400, L = 70, R = 20, T = 30, B = 50;
  double ymin = kInfinity, ymax = -kInfinity;
  for (size_t i = 0; i < p.radii.size(); ++i) {
    ymin = std::min({ymin, p.m_values[i], p.weighted(i)});
    ymax = std::max({ymax, p.m_values[i], p.weighted(i)});
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double xl = std::log(p.radii.front()), xr = std::log(p.radii.back());
  const auto X = [&](double r) { return L + (xr > xl ? (std::log(r) - xl) / (xr - xl) : 0.5) * (W - L - R); };
  const auto Y = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = ymin + (ymax - ymin) * k / 4;
    o << "<text x=\"" << L - 6 << "\" y=\"" << Y(y) + 4 << "\" text-anchor=\"end\">" << std::setprecision(4) << y
      << std::setprecision(2) << "</text>\n";
  }
  o << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\">" << std::setprecision(4) << p.radii.front() << "</text>\n";
  o << "<text x=\"" << W - R << "\" y=\"" << H - B + 18 << "\" text-anchor=\"end\">" << p.radii.back() << "</text>\n"
    << std::setprecision(2);
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">r (log scale)</text>\n";
  const auto line = [&](const char* colour, auto value) {
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < p.radii.size(); ++i) o << X(p.radii[i]) << ',' << Y(value(i)) << ' ';
    o << "\"/>\n";
  };
  line("steelblue", [&](size_t i) { return p.m_values[i]; });
  line("firebrick", [&](size_t i) { return p.weighted(i); });
  o << "<text x=\"" << L + 10 << "\" y=\"" << T - 10 << "\" fill=\"steelblue\">m(r)</text>\n";
  o << "<text x=\"" << L + 80 << "\" y=\"" << T - 10 << "\" fill=\"firebrick\">exp(Lambda r^alpha) m(r)</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace densitykit
