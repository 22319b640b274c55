#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "densitykit/vec.hpp"

namespace densitykit {

/// Closed ball B_r(center).
struct Ball {
  PointN center;
  double radius;

  Ball(PointN c, double r) : center(std::move(c)), radius(r) {
    require(radius > 0.0 && std::isfinite(radius), ErrorKind::invalid_parameter,
            "ball radius must be positive and finite");
  }

  bool contains(const PointN& p) const noexcept { return distance2(p, center) <= radius * radius; }
};

struct Triangle {
  std::array<PointN, 3> v;
  int orientation = +1;

  Triangle(PointN a, PointN b, PointN c, int orient = +1) : v{std::move(a), std::move(b), std::move(c)}, orientation(orient) {
    require(v[0].dim() == v[1].dim() && v[1].dim() == v[2].dim(), ErrorKind::construction,
            "triangle vertices have mixed dimensions");
    require(orient == 1 || orient == -1, ErrorKind::construction, "orientation must be +1 or -1");
  }

  int dim() const noexcept { return v[0].dim(); }
  PointN centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }
  double squared_diameter() const noexcept {
    return std::max({distance2(v[0], v[1]), distance2(v[1], v[2]), distance2(v[0], v[2])});
  }
};

/// Degenerate-area threshold relative to the squared diameter.
inline constexpr double kDegenerateAreaTol = 1e-14;

/// Area of the triangle spanned by three points, without the degeneracy cut.
inline double raw_triangle_area(const PointN& a, const PointN& b, const PointN& c) noexcept {
  return 0.5 * std::sqrt(wedge_norm2(b - a, c - a));
}

/// Area via the Gram determinant; slivers below the degeneracy threshold
/// report zero.
inline double triangle_area(const Triangle& t) noexcept {
  const double a = raw_triangle_area(t.v[0], t.v[1], t.v[2]);
  return a < kDegenerateAreaTol * t.squared_diameter() ? 0.0 : a;
}

inline bool is_degenerate(const Triangle& t) noexcept {
  return triangle_area(t) == 0.0;
}

/// Closest point of triangle (a, b, c) to p. Voronoi-region walk that only
/// needs dot products, so it is valid in any ambient dimension.
inline PointN closest_point_on_triangle(const PointN& p, const PointN& a, const PointN& b, const PointN& c) {
  const VecN ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const VecN bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + ab * (d1 / (d1 - d3));

  const VecN cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + ac * (d2 / (d2 - d6));

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

  const double denom = va + vb + vc;
  if (!(std::abs(denom) > 0.0)) return a;  // collapsed triangle
  const double v = vb / denom, w = vc / denom;
  return a + ab * v + ac * w;
}

inline PointN closest_point_on_segment(const PointN& p, const PointN& a, const PointN& b) noexcept {
  const VecN ab = b - a;
  const double l2 = norm2(ab);
  if (l2 == 0.0) return a;
  const double s = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
  return a + ab * s;
}

inline double point_segment_distance(const PointN& p, const PointN& a, const PointN& b) noexcept {
  return distance(p, closest_point_on_segment(p, a, b));
}

using Bary = std::array<double, 3>;

/// Sub-triangle produced while clipping; `bary` locates each corner in the
/// barycentric frame of the source triangle.
struct ClipPiece {
  std::array<PointN, 3> p;
  std::array<Bary, 3> bary;
  double area;

  PointN centroid() const { return (p[0] + p[1] + p[2]) / 3.0; }
};

namespace detail {

inline ClipPiece root_piece(const Triangle& t, double area) {
  return ClipPiece{{t.v[0], t.v[1], t.v[2]}, {Bary{1, 0, 0}, Bary{0, 1, 0}, Bary{0, 0, 1}}, area};
}

inline Bary mid(const Bary& a, const Bary& b) noexcept {
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

inline constexpr int kMaxClipDepth = 64;

/// Share of a leaf piece inside the ball. g = r^2 - |x - c|^2 is replaced by
/// its linear interpolant over the piece and the share where it is positive
/// is taken in closed form. With all corners outside the ball can still cut
/// the piece's interior; then the cross-section disk pi (r^2 - h^2), h the
/// distance to the piece's plane, is used, capped at the piece area.
inline double leaf_fraction(const ClipPiece& piece, const PointN& c, double r2) {
  std::array<double, 3> g;
  for (int q = 0; q < 3; ++q) g[q] = r2 - distance2(piece.p[q], c);
  const int pos = (g[0] > 0.0) + (g[1] > 0.0) + (g[2] > 0.0);
  if (pos == 3) return 1.0;
  if (pos == 0) {
    if (piece.area <= 0.0) return 0.0;
    const VecN u = piece.p[1] - piece.p[0], v = piece.p[2] - piece.p[0], w = c - piece.p[0];
    const double uu = dot(u, u), uv = dot(u, v), vv = dot(v, v), uw = dot(u, w), vw = dot(v, w);
    const double det = uu * vv - uv * uv;
    if (!(det > 0.0)) return 0.0;
    const double a = (vv * uw - uv * vw) / det, b = (uu * vw - uv * uw) / det;
    const double h2 = distance2(piece.p[0] + u * a + v * b, c);
    return std::min(1.0, kPi * std::max(0.0, r2 - h2) / piece.area);
  }
  // Lone corner k on one side: its corner triangle has share g_k^2 / ((g_k - g_i)(g_k - g_j)).
  const bool lone_inside = pos == 1;
  int k = 0;
  for (int q = 0; q < 3; ++q)
    if ((g[q] > 0.0) == lone_inside) k = q;
  const double gk = g[k], gi = g[(k + 1) % 3], gj = g[(k + 2) % 3];
  const double corner = gk * gk / ((gk - gi) * (gk - gj));
  return lone_inside ? corner : 1.0 - corner;
}

}  // namespace detail

/// Adaptive longest-edge bisection of `t` against `ball`.
///
/// Pieces entirely inside the ball are handed to `whole(piece)`; pieces
/// entirely outside contribute nothing; straddling pieces are bisected until
/// their area drops below tol * area(t), at which point they count through
/// `whole` scaled by leaf_fraction. Contributions are summed with
/// compensation in a fixed depth-first order.
template <class Whole>
double clip_accumulate(const Triangle& t, const Ball& ball, double tol, Whole&& whole) {
  require(tol > 0.0 && std::isfinite(tol), ErrorKind::invalid_parameter, "clip tolerance must be positive");
  const double area = triangle_area(t);
  if (area == 0.0) return 0.0;

  const PointN& c = ball.center;
  const double r2 = ball.radius * ball.radius;
  const auto inside = [&](const PointN& p) { return distance2(p, c) <= r2; };

  const double L01 = distance2(t.v[0], t.v[1]), L12 = distance2(t.v[1], t.v[2]), L20 = distance2(t.v[2], t.v[0]);
  const auto edge2 = [&](const Bary& a, const Bary& b) {
    const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
    return -(d0 * d1 * L01 + d1 * d2 * L12 + d2 * d0 * L20);
  };

  const double leaf_area = tol * area;
  CompensatedSum sum;
  std::vector<std::pair<ClipPiece, int>> stack;
  stack.emplace_back(detail::root_piece(t, area), 0);

  while (!stack.empty()) {
    auto [piece, depth] = std::move(stack.back());
    stack.pop_back();

    const bool i0 = inside(piece.p[0]), i1 = inside(piece.p[1]), i2 = inside(piece.p[2]);
    if (i0 && i1 && i2) {
      sum += whole(piece);
      continue;
    }
    if (!i0 && !i1 && !i2) {
      const PointN q = closest_point_on_triangle(c, piece.p[0], piece.p[1], piece.p[2]);
      if (distance2(q, c) > r2) continue;
    }
    if (piece.area < leaf_area || depth >= detail::kMaxClipDepth) {
      const double f = detail::leaf_fraction(piece, c, r2);
      if (f > 0.0) sum += f * whole(piece);
      continue;
    }

    // Split the longest edge (i, j); k is the opposite corner. Lengths come
    // from the exact barycentric differences, lengths within 1e-9 of the longest count as
    // ties and go to the first edge in (01, 12, 20) order.
    const double l01 = edge2(piece.bary[0], piece.bary[1]);
    const double l12 = edge2(piece.bary[1], piece.bary[2]);
    const double l20 = edge2(piece.bary[2], piece.bary[0]);
    const double lmax = std::max({l01, l12, l20}) * (1.0 - 1e-9);
    int i = 0, j = 1, k = 2;
    if (l01 < lmax) {
      if (l12 >= lmax) {
        i = 1; j = 2; k = 0;
      } else {
        i = 2; j = 0; k = 1;
      }
    }
    const PointN m = (piece.p[i] + piece.p[j]) * 0.5;
    const Bary mb = detail::mid(piece.bary[i], piece.bary[j]);
    const double half = 0.5 * piece.area;

    ClipPiece first{{piece.p[i], m, piece.p[k]}, {piece.bary[i], mb, piece.bary[k]}, half};
    ClipPiece second{{m, piece.p[j], piece.p[k]}, {mb, piece.bary[j], piece.bary[k]}, half};
    stack.emplace_back(std::move(second), depth + 1);
    stack.emplace_back(std::move(first), depth + 1);
  }
  return sum.value();
}

/// Area of t intersected with the ball, to relative tolerance `tol`.
inline double clip_area_in_ball(const Triangle& t, const Ball& ball, double tol) {
  return clip_accumulate(t, ball, tol, [](const ClipPiece& p) { return p.area; });
}

/// Degree-5, 7-point triangle quadrature (barycentric nodes and weights).
struct QuadNode {
  Bary w;
  double weight;
};

inline const std::array<QuadNode, 7>& triangle_rule7() {
  static const std::array<QuadNode, 7> rule = [] {
    constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115;
    constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456;
    constexpr double w0 = 0.225, w1 = 0.132394152788506, w2 = 0.125939180544827;
    return std::array<QuadNode, 7>{{
        {{1.0 / 3, 1.0 / 3, 1.0 / 3}, w0},
        {{a1, b1, b1}, w1}, {{b1, a1, b1}, w1}, {{b1, b1, a1}, w1},
        {{a2, b2, b2}, w2}, {{b2, a2, b2}, w2}, {{b2, b2, a2}, w2},
    }};
  }();
  return rule;
}

/// Integral over one clip piece of f(point, source-barycentric).
template <class F>
double integrate_piece(const ClipPiece& piece, F&& f) {
  double s = 0.0;
  for (const auto& node : triangle_rule7()) {
    const PointN x = piece.p[0] * node.w[0] + piece.p[1] * node.w[1] + piece.p[2] * node.w[2];
    Bary b{};
    for (int q = 0; q < 3; ++q)
      b[q] = piece.bary[0][q] * node.w[0] + piece.bary[1][q] * node.w[1] + piece.bary[2][q] * node.w[2];
    s += node.weight * f(x, b);
  }
  return s * piece.area;
}

/// Integral of f over t intersected with the ball (same subdivision as
/// clip_area_in_ball). 7-point quadrature on counted pieces down to 1e-3 of
/// the face area, centroid rule below that.
template <class F>
double clip_integrate(const Triangle& t, const Ball& ball, double tol, F&& f) {
  const double fine = 1e-3 * triangle_area(t);
  return clip_accumulate(t, ball, tol, [&](const ClipPiece& p) {
    if (p.area >= fine) return integrate_piece(p, f);
    Bary b{};
    for (int q = 0; q < 3; ++q) b[q] = (p.bary[0][q] + p.bary[1][q] + p.bary[2][q]) / 3.0;
    return p.area * f(p.centroid(), b);
  });
}

/// Parameter interval [s0, s1] of the segment a + s (b - a), s in [0, 1],
/// lying inside the ball; nullopt when the segment misses it.
inline std::optional<std::pair<double, double>> segment_ball_interval(const PointN& a, const PointN& b, const Ball& ball) {
  const VecN d = b - a, f = a - ball.center;
  const double A = norm2(d), B = 2.0 * dot(f, d), C = norm2(f) - ball.radius * ball.radius;
  if (A == 0.0) {
    if (C <= 0.0) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Numerically stable root pair.
  const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
  double s0 = q / A, s1 = q != 0.0 ? C / q : -B / (2.0 * A);
  if (s0 > s1) std::swap(s0, s1);
  const double lo = std::max(0.0, s0), hi = std::min(1.0, s1);
  if (lo >= hi) return std::nullopt;
  return std::pair{lo, hi};
}

/// Sum of apex angles at `apex` over a star of triangles that each contain it.
inline double vertex_total_angle(const PointN& apex, std::span<const Triangle> star) {
  require(!star.empty(), ErrorKind::invalid_parameter, "vertex_total_angle: empty star");
  CompensatedSum sum;
  for (const auto& t : star) {
    const double scale = std::max(t.squared_diameter(), 1e-300);
    int k = -1;
    for (int q = 0; q < 3; ++q)
      if (distance2(t.v[q], apex) <= 1e-24 * scale) k = q;
    require(k >= 0, ErrorKind::invalid_parameter, "vertex_total_angle: triangle does not contain the apex");
    if (is_degenerate(t)) continue;
    sum += angle_between(t.v[(k + 1) % 3] - t.v[k], t.v[(k + 2) % 3] - t.v[k]);
  }
  return sum.value();
}

/// Minimum distance between two triangles in R^n.
///
/// The minimiser of |x - y|^2 over T1 x T2 lies in the relative interior of
/// some face pair; every pair is solved as an unconstrained least-squares
/// problem and kept when its affine coordinates land inside both faces.
inline double triangle_triangle_distance(const Triangle& t1, const Triangle& t2) {
  static constexpr std::array<std::array<int, 3>, 7> kFaces{{
      {0, -1, -1}, {1, -1, -1}, {2, -1, -1}, {0, 1, -1}, {1, 2, -1}, {2, 0, -1}, {0, 1, 2}}};
  const auto face_size = [](const std::array<int, 3>& f) { return f[2] >= 0 ? 3 : (f[1] >= 0 ? 2 : 1); };
  const int n = t1.dim();

  double best = std::numeric_limits<double>::infinity();
  for (const auto& f1 : kFaces) {
    for (const auto& f2 : kFaces) {
      const int k1 = face_size(f1) - 1, k2 = face_size(f2) - 1;
      const PointN& a0 = t1.v[f1[0]];
      const PointN& b0 = t2.v[f2[0]];
      if (k1 + k2 == 0) {
        best = std::min(best, distance(a0, b0));
        continue;
      }
      Eigen::MatrixXd M(n, k1 + k2);
      Eigen::VectorXd d(n);
      for (int r = 0; r < n; ++r) {
        d(r) = b0[r] - a0[r];
        for (int q = 0; q < k1; ++q) M(r, q) = t1.v[f1[q + 1]][r] - a0[r];
        for (int q = 0; q < k2; ++q) M(r, k1 + q) = -(t2.v[f2[q + 1]][r] - b0[r]);
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
      qr.setThreshold(1e-12);
      if (qr.rank() < k1 + k2) continue;
      const Eigen::VectorXd sol = qr.solve(d);
      double s1 = 0.0, s2 = 0.0;
      bool ok = true;
      for (int q = 0; q < k1; ++q) {
        ok = ok && sol(q) > 0.0;
        s1 += sol(q);
      }
      for (int q = 0; q < k2; ++q) {
        ok = ok && sol(k1 + q) > 0.0;
        s2 += sol(k1 + q);
      }
      if (!ok || s1 >= 1.0 || s2 >= 1.0) continue;
      best = std::min(best, (M * sol - d).norm());
    }
  }
  return best;
}

}  // namespace densitykit
