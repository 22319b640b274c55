#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "densitykit/curve.hpp"
#include "densitykit/mesh.hpp"

namespace densitykit {

enum class ConeKind { exterior, unit };

/// Triangulated cone {apex + t (x - apex) : x in base, t in [t_min, t_max]}.
struct ConeSurface {
  PointN apex;
  PolylineCurve base;
  ConeKind kind;
  double t_min, t_max;
  std::shared_ptr<const SurfaceModel> mesh;
};

namespace detail {

/// Geometric levels from a to b (a > 0) with ratio at most `ratio`.
inline std::vector<double> geometric_levels(double a, double b, double ratio) {
  const int n = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / std::log(ratio))));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = a * std::pow(b / a, static_cast<double>(i) / n);
  t.front() = a;
  t.back() = b;
  return t;
}

}  // namespace detail

/// Exterior cone (t in [1, R]) or unit cone (t in [0, 1]) over c with vertex
/// x0. Base vertices coinciding with x0 are dropped along with their two
/// segments, whose cone pieces are degenerate.
inline ConeSurface build_cone(const PolylineCurve& c, const PointN& x0, ConeKind kind, double R = 2.0) {
  require(x0.dim() == c.dim(), ErrorKind::invalid_parameter, "cone apex has the wrong dimension");
  require(c.closed(), ErrorKind::invalid_parameter, "cone base must be closed");
  if (kind == ConeKind::exterior)
    require(R > 1.0 && std::isfinite(R), ErrorKind::invalid_parameter, "exterior cone needs R > 1");

  const int k = c.size();
  const double eps = 1e-12 * c.diameter();
  int skip = -1;
  for (int i = 0; i < k; ++i)
    if (distance(c.vertex(i), x0) <= eps) skip = i;
  for (int i = 0; i < c.segment_count(); ++i) {
    if (skip >= 0 && (i == skip || (i + 1) % k == skip)) continue;
    const auto [a, b] = c.segment(i);
    require(point_segment_distance(x0, a, b) > eps, ErrorKind::projection_singular,
            "cone apex lies on base segment " + std::to_string(i));
  }

  // Columns: base vertices in cyclic order starting after the skipped one.
  std::vector<int> cols;
  for (int j = 0; j < k; ++j) {
    const int i = skip >= 0 ? (skip + 1 + j) % k : j;
    if (i != skip) cols.push_back(i);
  }
  const bool periodic = skip < 0;

  std::vector<double> levels;
  if (kind == ConeKind::exterior) {
    levels = detail::geometric_levels(1.0, R, 1.25);
  } else {
    levels = detail::geometric_levels(1.0 / 64.0, 1.0, 1.25);
  }

  std::vector<PointN> verts;
  std::vector<Face> faces;
  const int ncol = static_cast<int>(cols.size());
  int apex_index = -1;
  if (kind == ConeKind::unit && periodic) {
    apex_index = 0;
    verts.push_back(x0);
  }
  const int base_index = static_cast<int>(verts.size());
  for (double t : levels)
    for (int i : cols) verts.push_back(x0 + (c.vertex(i) - x0) * t);
  const auto id = [&](int level, int col) { return base_index + level * ncol + col; };

  const int nseg = periodic ? ncol : ncol - 1;
  for (int l = 0; l + 1 < static_cast<int>(levels.size()); ++l)
    for (int j = 0; j < nseg; ++j) {
      const int j1 = (j + 1) % ncol;
      faces.push_back({id(l, j), id(l, j1), id(l + 1, j1)});
      faces.push_back({id(l, j), id(l + 1, j1), id(l + 1, j)});
    }
  if (kind == ConeKind::unit) {
    if (periodic) {
      for (int j = 0; j < nseg; ++j) faces.push_back({apex_index, id(0, (j + 1) % ncol), id(0, j)});
    } else {
      // Apex on the base: fan from x0 itself, which is then the skipped vertex.
      apex_index = static_cast<int>(verts.size());
      verts.push_back(x0);
      for (int j = 0; j < nseg; ++j) faces.push_back({apex_index, id(0, j + 1), id(0, j)});
    }
  }

  SurfaceOptions opts;
  opts.check_boundary_simple = false;
  auto mesh = std::make_shared<const SurfaceModel>(std::move(verts), std::move(faces), std::move(opts));
  return ConeSurface{x0, c, kind, kind == ConeKind::exterior ? 1.0 : 0.0, kind == ConeKind::exterior ? R : 1.0,
                     std::move(mesh)};
}

}  // namespace densitykit
