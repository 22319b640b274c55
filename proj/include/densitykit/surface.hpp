#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "densitykit/mesh.hpp"

namespace densitykit {

inline constexpr double kDefaultClipTol = 1e-6;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Integral of f(face, x, bary) over s intersected with B_r(x0). Faces whose
/// culling sphere is inside the ball are integrated whole, faces outside are
/// skipped, the rest go through the clip subdivision.
template <class F>
double integrate_in_ball(const SurfaceModel& s, const PointN& x0, double r, F&& f, double tol = kDefaultClipTol) {
  const Ball ball(x0, r);
  require(x0.dim() == s.dim(), ErrorKind::invalid_parameter, "centre has the wrong dimension");
  CompensatedSum sum;
  for (int fi = 0; fi < s.face_count(); ++fi) {
    if (s.face_area(fi) == 0.0) continue;
    const double d = distance(s.face_center(fi), x0);
    const double rf = s.face_radius(fi);
    if (d - rf > r) continue;
    const auto g = [&](const PointN& x, const Bary& b) { return f(fi, x, b); };
    const Triangle t = s.triangle(fi);
    if (d + rf <= r) {
      sum += integrate_piece(detail::root_piece(t, s.face_area(fi)), g);
    } else {
      sum += clip_integrate(t, ball, tol, g);
    }
  }
  return sum.value();
}

/// area(M ∩ B_r(x0)), multiplicity counted face by face.
inline double area_in_ball(const SurfaceModel& s, const PointN& x0, double r, double tol = kDefaultClipTol) {
  const Ball ball(x0, r);
  require(x0.dim() == s.dim(), ErrorKind::invalid_parameter, "centre has the wrong dimension");
  CompensatedSum sum;
  for (int fi = 0; fi < s.face_count(); ++fi) {
    const double a = s.face_area(fi);
    if (a == 0.0) continue;
    const double d = distance(s.face_center(fi), x0);
    const double rf = s.face_radius(fi);
    if (d - rf > r) continue;
    if (d + rf <= r)
      sum += a;
    else
      sum += clip_area_in_ball(s.triangle(fi), ball, tol);
  }
  return sum.value();
}

inline int nearest_vertex(const SurfaceModel& s, const PointN& x) {
  int best = 0;
  double bd = kInfinity;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const double d = distance2(s.vertex(v), x);
    if (d < bd) {
      bd = d;
      best = v;
    }
  }
  return best;
}

/// Vertex index whose position is within 1e-12 x scale of x, if any.
inline std::optional<int> vertex_at(const SurfaceModel& s, const PointN& x) {
  const int v = nearest_vertex(s, x);
  const double scale = std::max(1.0, norm(x));
  if (distance(s.vertex(v), x) <= 1e-12 * scale) return v;
  return std::nullopt;
}

inline double mean_edge_length(const SurfaceModel& s, int v) {
  const auto nb = s.vertex_neighbors(v);
  CompensatedSum sum;
  for (int w : nb) sum += distance(s.vertex(v), s.vertex(w));
  return nb.empty() ? 0.0 : sum.value() / static_cast<double>(nb.size());
}

inline double distance_to_boundary(const SurfaceModel& s, const PointN& x) {
  double best = kInfinity;
  for (const auto& loop : s.boundary_loops())
    for (size_t i = 0; i < loop.size(); ++i)
      best = std::min(best, point_segment_distance(x, s.vertex(loop[i]), s.vertex(loop[(i + 1) % loop.size()])));
  return best;
}

enum class DensityMode { pl_exact, extrapolated };

struct DensityResult {
  double value = 0.0;
  DensityMode mode = DensityMode::extrapolated;
  bool boundary_point = false;
  std::string label;           // "flat-PL interpretation" at boundary vertices
  std::vector<double> radii;   // extrapolated mode
  std::vector<double> ratios;  // area / (pi r^2) per radius
};

/// Default extrapolation radius in units of the local edge length. Slightly
/// below 5 so that the three radii avoid the rings of structured meshes.
inline constexpr double kDensityRadiusFactor = 4.9;

/// Theta(M, x). pl_exact: angle sum at a mesh vertex over 2 pi. extrapolated:
/// intercept of the least-squares line of area(r)/(pi r^2) against r^2 at
/// r1, r1/2, r1/4; r1 defaults to 4.9 x mean edge length at the nearest vertex.
inline DensityResult density(const SurfaceModel& s, const PointN& x, DensityMode mode,
                             std::optional<double> r1 = std::nullopt, double tol = kDefaultClipTol) {
  DensityResult res;
  res.mode = mode;
  if (mode == DensityMode::pl_exact) {
    const auto v = vertex_at(s, x);
    require(v.has_value(), ErrorKind::invalid_parameter, "pl_exact density needs a mesh vertex");
    std::vector<Triangle> star;
    for (int f : s.vertex_faces(*v)) star.push_back(s.triangle(f));
    res.value = vertex_total_angle(s.vertex(*v), star) / kTwoPi;
    res.boundary_point = s.is_boundary_vertex(*v);
    if (res.boundary_point) res.label = "flat-PL interpretation";
    return res;
  }
  const int nv = nearest_vertex(s, x);
  const double dist_b = distance_to_boundary(s, x);
  const double scale = std::max(s.total_area(), 1e-300);
  res.boundary_point = dist_b <= 1e-9 * std::sqrt(scale);
  const double r = r1.value_or(kDensityRadiusFactor * mean_edge_length(s, nv));
  require(r > 0.0, ErrorKind::invalid_parameter, "extrapolation radius must be positive");
  if (!res.boundary_point)
    require(r < dist_b, ErrorKind::radius_too_large,
            "extrapolation radius " + std::to_string(r) + " reaches the boundary (distance " + std::to_string(dist_b) + ")");
  // Fit q(r) = a + b r^2.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double rr : {r, r / 2, r / 4}) {
    const double q = area_in_ball(s, x, rr, tol) / (kPi * rr * rr);
    res.radii.push_back(rr);
    res.ratios.push_back(q);
    const double t = rr * rr;
    sx += t;
    sy += q;
    sxx += t * t;
    sxy += t * q;
  }
  const double n = 3.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  res.value = (sy - slope * sx) / n;
  return res;
}

inline double density_value(const SurfaceModel& s, const PointN& x, DensityMode mode) {
  return density(s, x, mode).value;
}

/// Per-vertex scalar samples with their provenance.
struct ScalarField {
  std::vector<double> values;
  std::string provenance;     // "analytic" | "discrete"
  std::vector<char> unreliable;

  int unreliable_count() const {
    return static_cast<int>(std::count(unreliable.begin(), unreliable.end(), 1));
  }
};

struct MeanCurvatureField {
  std::vector<VecN> vectors;
  ScalarField magnitude;
};

namespace detail {

inline double cot_at(const PointN& apex, const PointN& p, const PointN& q) {
  const VecN a = p - apex, b = q - apex;
  const double w = std::sqrt(wedge_norm2(a, b));
  return w > 0.0 ? dot(a, b) / w : 0.0;
}

inline MeanCurvatureField discrete_mean_curvature(const SurfaceModel& s) {
  const int nv = s.vertex_count();
  std::vector<VecN> acc(nv, VecN::zero(s.dim()));
  std::vector<char> bad(nv, 0);
  for (int f = 0; f < s.face_count(); ++f) {
    const Face& t = s.face(f);
    if (s.face_area(f) == 0.0) {
      for (int v : t) bad[v] = 1;
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      const int i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      const double c = cot_at(s.vertex(t[k]), s.vertex(i), s.vertex(j));
      const VecN e = s.vertex(j) - s.vertex(i);
      acc[i] += e * c;
      acc[j] -= e * c;
    }
  }
  MeanCurvatureField out;
  out.vectors.assign(nv, VecN::zero(s.dim()));
  out.magnitude.provenance = "discrete";
  out.magnitude.values.assign(nv, 0.0);
  out.magnitude.unreliable = bad;
  const auto& area = s.per_vertex_area();
  for (int v = 0; v < nv; ++v)
    if (!s.is_boundary_vertex(v) && area[v] > 0.0) out.vectors[v] = acc[v] / (2.0 * area[v]);
  // Boundary: average of interior neighbours, always flagged.
  for (int v = 0; v < nv; ++v) {
    if (!s.is_boundary_vertex(v)) continue;
    VecN sum = VecN::zero(s.dim());
    int cnt = 0;
    for (int w : s.vertex_neighbors(v))
      if (!s.is_boundary_vertex(w)) {
        sum += out.vectors[w];
        ++cnt;
      }
    if (cnt > 0) out.vectors[v] = sum / cnt;
    out.magnitude.unreliable[v] = 1;
  }
  for (int v = 0; v < nv; ++v) out.magnitude.values[v] = norm(out.vectors[v]);
  return out;
}

}  // namespace detail

/// H at the vertices: analytic when the surface carries a patch, otherwise the
/// cotangent Laplacian of the position over the barycentric area.
inline MeanCurvatureField mean_curvature_field(const SurfaceModel& s, bool force_discrete = false) {
  if (!s.has_source() || force_discrete) return detail::discrete_mean_curvature(s);
  MeanCurvatureField out;
  out.magnitude.provenance = "analytic";
  out.magnitude.unreliable.assign(s.vertex_count(), 0);
  for (int v = 0; v < s.vertex_count(); ++v) {
    const auto& uv = s.uv()[v];
    const LocalGeometry g = s.patch()->local(uv[0], uv[1]);
    out.vectors.push_back(g.mean_curvature());
    out.magnitude.values.push_back(norm(out.vectors.back()));
    if (!g.regular) out.magnitude.unreliable[v] = 1;
  }
  return out;
}

/// Lumped L^p norm (sum f_i^p A_i)^(1/p); p = infinity gives the max.
inline double lp_norm(const ScalarField& f, const SurfaceModel& s, double p) {
  require(p > 2.0, ErrorKind::out_of_range, "L^p norm needs p > 2 (or infinity)");
  require(f.values.size() == static_cast<size_t>(s.vertex_count()), ErrorKind::invalid_parameter,
          "field length does not match the vertex count");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.values) m = std::max(m, std::abs(x));
    return m;
  }
  CompensatedSum sum;
  const auto& area = s.per_vertex_area();
  for (size_t i = 0; i < f.values.size(); ++i) sum += std::pow(std::abs(f.values[i]), p) * area[i];
  return std::pow(sum.value(), 1.0 / p);
}

/// Max pairwise vertex distance.
inline double extrinsic_diameter(const SurfaceModel& s) {
  double best = 0.0;
  const auto& v = s.vertices();
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) best = std::max(best, distance2(v[i], v[j]));
  return std::sqrt(best);
}

struct SecondFormSup {
  double value = 0.0;
  int samples = 0;
};

/// sup |A| sampled at every vertex and face centroid of the parameter mesh.
inline SecondFormSup second_form_sup(const SurfaceModel& s) {
  require(s.has_source(), ErrorKind::unsupported, "second fundamental form needs an analytic source");
  SecondFormSup out;
  const auto sample = [&](double u, double v) {
    out.value = std::max(out.value, s.patch()->second_form_norm(u, v));
    ++out.samples;
  };
  for (const auto& uv : s.uv()) sample(uv[0], uv[1]);
  for (int f = 0; f < s.face_count(); ++f) {
    const UV c = s.face_uv(f, Bary{1.0 / 3, 1.0 / 3, 1.0 / 3});
    sample(c[0], c[1]);
  }
  return out;
}

}  // namespace densitykit
