#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "densitykit/analytic.hpp"
#include "densitykit/curve.hpp"
#include "densitykit/mesh.hpp"

namespace densitykit {

using Params = std::map<std::string, double>;

/// A surface with its boundary curve and the provenance needed to rebuild it.
struct Scene {
  std::string name;
  Params params;
  int res = 64;
  std::shared_ptr<const SurfaceModel> surface;
  PolylineCurve boundary;
  PointN x0;  // default analysis point
  std::string provenance;
};

struct MeshData {
  std::vector<PointN> vertices;
  std::vector<Face> faces;
  std::vector<UV> uv;
};

namespace detail {

struct RowVertex {
  int index;
  double pos;  // fraction along the row in [0, 1]
};

/// Triangulates the strip between two rows ordered by `pos`, always advancing
/// whichever row has the nearer next vertex.
inline void stitch(const std::vector<RowVertex>& a, const std::vector<RowVertex>& b, std::vector<Face>& out) {
  size_t i = 0, k = 0;
  while (i + 1 < a.size() || k + 1 < b.size()) {
    const bool adv_b = i + 1 >= a.size() || (k + 1 < b.size() && b[k + 1].pos <= a[i + 1].pos);
    if (adv_b) {
      out.push_back({a[i].index, b[k].index, b[k + 1].index});
      ++k;
    } else {
      out.push_back({a[i].index, b[k].index, a[i + 1].index});
      ++i;
    }
  }
}

}  // namespace detail

/// Polar rings on a disk or sector domain: ring j of N = res/2 has about
/// 6 m j vertices (m the angular multiplicity), fanned to a centre vertex.
inline MeshData polar_mesh(const AnalyticPatch& patch, int res) {
  const ParamDomain dom = patch.domain();
  require(dom.kind != DomainKind::rectangle, ErrorKind::invalid_parameter, "polar mesh needs a disk or sector domain");
  const bool periodic = dom.kind == DomainKind::disk;
  const int N = std::max(2, res / 2);
  const int base = 6 * std::max(1, patch.angular_multiplicity());
  MeshData m;
  const auto add = [&](double u, double v) {
    m.uv.push_back({u, v});
    m.vertices.push_back(patch.position(u, v));
    return static_cast<int>(m.vertices.size()) - 1;
  };
  const int centre = add(0.0, 0.0);
  std::vector<detail::RowVertex> prev{{centre, 0.0}, {centre, 1.0}};
  for (int j = 1; j <= N; ++j) {
    const double rho = dom.radius * j / N;
    std::vector<detail::RowVertex> row;
    if (periodic) {
      const int n = base * j;
      for (int k = 0; k < n; ++k) {
        const double a = kTwoPi * k / n;
        row.push_back({add(rho * std::cos(a), rho * std::sin(a)), static_cast<double>(k) / n});
      }
      row.push_back({row.front().index, 1.0});
    } else {
      const int n = std::max(1, static_cast<int>(std::ceil(base * j * dom.angle / kTwoPi)));
      for (int k = 0; k <= n; ++k) {
        const double a = dom.angle * k / n;
        row.push_back({add(rho * std::cos(a), rho * std::sin(a)), static_cast<double>(k) / n});
      }
    }
    if (j == 1) {
      for (size_t k = 0; k + 1 < row.size(); ++k) m.faces.push_back({centre, row[k].index, row[k + 1].index});
    } else {
      detail::stitch(prev, row, m.faces);
    }
    prev = std::move(row);
  }
  return m;
}

/// (res+1) x (res+1) grid on a rectangle domain, split along one diagonal.
inline MeshData grid_mesh(const AnalyticPatch& patch, int res) {
  const ParamDomain d = patch.domain();
  require(d.kind == DomainKind::rectangle, ErrorKind::invalid_parameter, "grid mesh needs a rectangle domain");
  MeshData m;
  const int n = std::max(2, res);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double u = d.u0 + (d.u1 - d.u0) * i / n;
      const double v = d.v0 + (d.v1 - d.v0) * j / n;
      m.uv.push_back({u, v});
      m.vertices.push_back(patch.position(u, v));
    }
  const auto id = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

/// Drops vertices no face uses and renumbers.
inline void compact(MeshData& m) {
  std::vector<int> remap(m.vertices.size(), -1);
  for (const auto& f : m.faces)
    for (int v : f) remap[v] = 0;
  MeshData out;
  for (size_t v = 0; v < m.vertices.size(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(m.vertices[v]);
    if (!m.uv.empty()) out.uv.push_back(m.uv[v]);
  }
  for (auto f : m.faces) {
    for (int& v : f) v = remap[v];
    out.faces.push_back(f);
  }
  m = std::move(out);
}

/// Torus of radii (R, r) on a periodic res x res grid with a 2 x 2 block of
/// quads removed: one boundary loop, genus 1.
inline MeshData torus_minus_disk_mesh(double R, double r, int res) {
  require(R > r && r > 0, ErrorKind::invalid_parameter, "torus needs R > r > 0");
  const int n = std::max(6, res);
  MeshData m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = kTwoPi * i / n, v = kTwoPi * j / n;
      m.vertices.push_back(PointN{(R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u), r * std::sin(v)});
    }
  const auto id = [&](int i, int j) { return (i % n) * n + (j % n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < 2 && j < 2) continue;
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  compact(m);
  return m;
}

namespace detail {

inline std::shared_ptr<const SurfaceModel> make_surface(MeshData m, std::shared_ptr<const AnalyticPatch> patch) {
  SurfaceOptions opts;
  if (patch) {
    opts.uv = std::move(m.uv);
    opts.patch = std::move(patch);
  }
  return std::make_shared<const SurfaceModel>(std::move(m.vertices), std::move(m.faces), std::move(opts));
}

/// Position of mesh vertex v inside boundary loop 0, or -1.
inline int loop_position(const SurfaceModel& s, int v) {
  const auto& loop = s.boundary_loops().front();
  for (size_t i = 0; i < loop.size(); ++i)
    if (loop[i] == v) return static_cast<int>(i);
  return -1;
}

/// Exterior angle between two smooth boundary arcs leaving a corner along
/// directions a and b: pi minus the interior angle.
inline double corner_angle(const VecN& a, const VecN& b) { return kPi - angle_between(a, b); }

inline int vertex_with_uv(const MeshData& m, double u, double v) {
  for (size_t i = 0; i < m.uv.size(); ++i)
    if (std::abs(m.uv[i][0] - u) < 1e-12 && std::abs(m.uv[i][1] - v) < 1e-12) return static_cast<int>(i);
  return -1;
}

inline Scene finish(std::string name, Params params, int res, std::shared_ptr<const SurfaceModel> s,
                    std::vector<std::pair<int, double>> corner_vertices, PointN x0) {
  require(!s->boundary_loops().empty(), ErrorKind::construction, "catalog surface has no boundary");
  std::vector<CornerFlag> corners;
  for (const auto& [v, theta] : corner_vertices) {
    const int pos = loop_position(*s, v);
    require(pos >= 0, ErrorKind::construction, "corner vertex is not on the boundary");
    corners.push_back({pos, std::clamp(theta, 0.0, kPi)});
  }
  PolylineCurve boundary = s->boundary_curve(0, corners);
  std::string prov = "catalog:" + name;
  for (const auto& [k, v] : params) prov += " " + k + "=" + std::to_string(v);
  prov += " res=" + std::to_string(res);
  return Scene{std::move(name), std::move(params), res, std::move(s), std::move(boundary), std::move(x0), std::move(prov)};
}

inline Scene polar_scene(std::string name, Params params, int res, std::shared_ptr<const AnalyticPatch> patch) {
  MeshData m = polar_mesh(*patch, res);
  const ParamDomain dom = patch->domain();
  std::vector<std::pair<int, double>> corners;
  if (dom.kind == DomainKind::sector) {
    corners.push_back({0, std::abs(kPi - dom.angle)});
    const double rho = dom.radius;
    for (double a : {0.0, dom.angle}) {
      const double u = rho * std::cos(a), v = rho * std::sin(a);
      const LocalGeometry g = patch->local(u, v);
      const VecN radial_in = -(g.xu * std::cos(a) + g.xv * std::sin(a));
      VecN arc = g.xu * (-std::sin(a)) + g.xv * std::cos(a);
      if (a > 0.0) arc = -arc;
      corners.push_back({vertex_with_uv(m, u, v), corner_angle(radial_in, arc)});
    }
  }
  const PointN x0 = m.vertices[0];
  auto s = make_surface(std::move(m), patch);
  return finish(std::move(name), std::move(params), res, std::move(s), std::move(corners), x0);
}

}  // namespace detail

struct CatalogEntry {
  std::string name;
  std::string description;
  Params defaults;
  std::function<Scene(const Params&, int)> build;
};

namespace detail {

inline double param(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  require(it != p.end(), ErrorKind::invalid_parameter, "missing parameter " + key);
  return it->second;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  using detail::param;
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"flat_disk", "flat unit disk in the plane z = 0", {{"radius", 1.0}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<FlatPatch>(ParamDomain::disk(param(p, "radius")));
                   return detail::polar_scene("flat_disk", p, res, patch);
                 }});
    e.push_back({"flat_sector", "flat circular sector of the given opening angle",
                 {{"angle", kPi / 2}, {"radius", 1.0}}, [](const Params& p, int res) {
                   const double a = param(p, "angle");
                   require(a > 0 && a < kTwoPi, ErrorKind::invalid_parameter, "sector angle must lie in (0, 2 pi)");
                   auto patch = std::make_shared<FlatPatch>(ParamDomain::sector(param(p, "radius"), a));
                   return detail::polar_scene("flat_sector", p, res, patch);
                 }});
    e.push_back({"flat_slit", "flat disk minus a thin wedge; the centre is a cusp of a planar boundary",
                 {{"gap", 0.05}, {"radius", 1.0}}, [](const Params& p, int res) {
                   const double gap = param(p, "gap");
                   require(gap > 0 && gap < kPi, ErrorKind::invalid_parameter, "gap must lie in (0, pi)");
                   auto patch = std::make_shared<FlatPatch>(ParamDomain::sector(param(p, "radius"), kTwoPi - gap));
                   Scene s = detail::polar_scene("flat_slit", p, res, patch);
                   // The centre stands for a cusp: intended exterior angle pi.
                   std::vector<CornerFlag> corners = s.boundary.corners();
                   for (auto& c : corners)
                     if (distance(s.boundary.vertex(c.index), s.x0) == 0.0) c.theta = kPi;
                   s.boundary = s.surface->boundary_curve(0, corners);
                   return s;
                 }});
    e.push_back({"branched_disk", "z -> (z^m, h z^(m+1)) over the unit disk, branch point of order m at 0",
                 {{"m", 2.0}, {"h", 0.5}, {"radius", 1.0}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<BranchedDiskPatch>(static_cast<int>(std::lround(param(p, "m"))),
                                                                    param(p, "h"), param(p, "radius"));
                   return detail::polar_scene("branched_disk", p, res, patch);
                 }});
    e.push_back({"cap", "spherical cap of radius R and polar angle theta around the north pole",
                 {{"R", 10.0}, {"theta", 0.1}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<SpherePatch>(param(p, "R"), param(p, "theta"));
                   return detail::polar_scene("cap", p, res, patch);
                 }});
    e.push_back({"hemisphere", "upper hemisphere of radius R", {{"R", 1.0}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<SpherePatch>(param(p, "R"), kPi / 2);
                   return detail::polar_scene("hemisphere", p, res, patch);
                 }});
    e.push_back({"catenoid", "rectangular catenoid piece (s, phi) in [-h/2, h/2] x [-span/2, span/2]",
                 {{"waist", 1.0}, {"height", 1.0}, {"span", kPi / 2}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<CatenoidPatch>(param(p, "waist"), param(p, "height"), param(p, "span"));
                   MeshData m = grid_mesh(*patch, res);
                   const ParamDomain d = patch->domain();
                   std::vector<std::pair<int, double>> corners;
                   for (double u : {d.u0, d.u1})
                     for (double v : {d.v0, d.v1}) {
                       const LocalGeometry g = patch->local(u, v);
                       const VecN a = g.xu * (u == d.u0 ? 1.0 : -1.0);
                       const VecN b = g.xv * (v == d.v0 ? 1.0 : -1.0);
                       corners.push_back({detail::vertex_with_uv(m, u, v), detail::corner_angle(a, b)});
                     }
                   const int n = std::max(2, res);
                   const PointN x0 = m.vertices[(n / 2) * (n + 1) + n / 2];
                   auto s = detail::make_surface(std::move(m), patch);
                   return detail::finish("catenoid", p, res, std::move(s), std::move(corners), x0);
                 }});
    e.push_back({"enneper", "Enneper surface over the parameter disk of the given radius",
                 {{"scale", 1.0}, {"radius", 0.8}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<EnneperPatch>(param(p, "scale"), param(p, "radius"));
                   return detail::polar_scene("enneper", p, res, patch);
                 }});
    e.push_back({"graph_disk", "graph of a seeded random cubic over the unit disk",
                 {{"seed", 1.0}, {"amp", 0.1}}, [](const Params& p, int res) {
                   auto patch = std::make_shared<GraphDiskPatch>(static_cast<std::uint64_t>(std::llround(param(p, "seed"))),
                                                                 param(p, "amp"));
                   return detail::polar_scene("graph_disk", p, res, patch);
                 }});
    e.push_back({"torus_minus_disk", "torus with a small square hole (mesh only)", {{"R", 1.0}, {"r", 0.4}},
                 [](const Params& p, int res) {
                   MeshData m = torus_minus_disk_mesh(param(p, "R"), param(p, "r"), res);
                   const PointN x0 = m.vertices[m.vertices.size() / 2];
                   auto s = detail::make_surface(std::move(m), nullptr);
                   return detail::finish("torus_minus_disk", p, res, std::move(s), {}, x0);
                 }});
    return e;
  }();
  return entries;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) out.push_back(e.name);
  return out;
}

/// Builds a catalog scene; unknown names list the alternatives, unknown
/// parameter keys are rejected.
inline Scene make_scene(const std::string& name, const Params& overrides = {}, int res = 64) {
  require(res >= 4, ErrorKind::invalid_parameter, "resolution must be at least 4");
  for (const auto& e : catalog()) {
    if (e.name != name) continue;
    Params p = e.defaults;
    for (const auto& [k, v] : overrides) {
      require(p.count(k) > 0, ErrorKind::invalid_parameter, "unknown parameter '" + k + "' for " + name);
      p[k] = v;
    }
    return e.build(p, res);
  }
  std::string alts;
  for (const auto& n : catalog_names()) alts += (alts.empty() ? "" : ", ") + n;
  fail(ErrorKind::invalid_parameter, "unknown catalog surface '" + name + "'; available: " + alts);
}

/// Scene from a bare mesh: boundary is loop 0, corners as given.
inline Scene scene_from_mesh(std::vector<PointN> vertices, std::vector<Face> faces, std::string provenance,
                             std::vector<CornerFlag> corners = {}) {
  auto s = std::make_shared<const SurfaceModel>(std::move(vertices), std::move(faces));
  require(!s->boundary_loops().empty(), ErrorKind::input_inconsistent, "mesh has no boundary");
  PolylineCurve boundary = s->boundary_curve(0, std::move(corners));
  const PointN x0 = s->vertex(0);
  return Scene{"mesh", {}, 0, std::move(s), std::move(boundary), x0, std::move(provenance)};
}

/// Homothety x -> lambda x of a whole scene, analytic source included.
inline Scene scaled(const Scene& sc, double lambda) {
  require(lambda > 0.0, ErrorKind::invalid_parameter, "scale factor must be positive");
  std::vector<PointN> v;
  for (const auto& p : sc.surface->vertices()) v.push_back(p * lambda);
  SurfaceOptions opts;
  if (sc.surface->has_source()) {
    opts.uv = sc.surface->uv();
    opts.patch = std::make_shared<ScaledPatch>(sc.surface->patch(), lambda);
  }
  auto s = std::make_shared<const SurfaceModel>(std::move(v), sc.surface->faces(), std::move(opts));
  std::vector<PointN> bv;
  for (const auto& p : sc.boundary.vertices()) bv.push_back(p * lambda);
  PolylineCurve b(std::move(bv), true, sc.boundary.corners());
  return Scene{sc.name, sc.params, sc.res, std::move(s), std::move(b), sc.x0 * lambda,
               sc.provenance + " scaled=" + std::to_string(lambda)};
}

}  // namespace densitykit
