#pragma once

#include <optional>
#include <string>
#include <vector>

#include "densitykit/geometry.hpp"

namespace densitykit {

/// A vertex that stands for a genuine corner of a piecewise-C^1 curve, with
/// its intended exterior angle theta in [0, pi].
struct CornerFlag {
  int index;
  double theta;
};

/// Closest points between segments [p1,q1] and [p2,q2]; dimension-agnostic.
inline double segment_segment_distance(const PointN& p1, const PointN& q1, const PointN& p2, const PointN& q2) {
  const VecN d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  if (a == 0.0 && e == 0.0) return distance(p1, p2);
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return distance(p1 + d1 * s, p2 + d2 * t);
}

/// Oriented polyline approximating a boundary curve. Construction validates
/// vertex count, distinct consecutive vertices and simplicity (O(k^2)).
class PolylineCurve {
 public:
  PolylineCurve(std::vector<PointN> vertices, bool closed = true, std::vector<CornerFlag> corners = {})
      : vertices_(std::move(vertices)), closed_(closed), corners_(std::move(corners)) {
    dim_ = common_dimension(vertices_, "curve");
    require(vertices_.size() >= 3, ErrorKind::construction, "curve needs at least 3 vertices");
    diameter_ = 0.0;
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j)
        diameter_ = std::max(diameter_, distance(vertices_[i], vertices_[j]));
    const double eps = 1e-12 * diameter_;
    for (int i = 0; i < segment_count(); ++i) {
      const auto [a, b] = segment(i);
      require(distance(a, b) > eps, ErrorKind::construction,
              "consecutive curve vertices " + std::to_string(i) + " coincide");
    }
    for (const auto& c : corners_) {
      require(c.index >= 0 && c.index < size(), ErrorKind::construction, "corner index out of range");
      require(c.theta >= 0.0 && c.theta <= kPi, ErrorKind::construction, "corner angle must lie in [0, pi]");
    }
    check_simple(eps);
  }

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  bool closed() const noexcept { return closed_; }
  double diameter() const noexcept { return diameter_; }
  const std::vector<PointN>& vertices() const noexcept { return vertices_; }
  const PointN& vertex(int i) const { return vertices_[wrap(i)]; }
  const std::vector<CornerFlag>& corners() const noexcept { return corners_; }

  std::optional<double> corner_theta(int i) const {
    for (const auto& c : corners_)
      if (c.index == i) return c.theta;
    return std::nullopt;
  }

  int segment_count() const noexcept { return closed_ ? size() : size() - 1; }
  std::pair<PointN, PointN> segment(int i) const { return {vertex(i), vertex(i + 1)}; }

  /// Exterior (turning) angle at vertex i, in [0, pi].
  double turning_angle(int i) const {
    return angle_between(vertex(i) - vertex(i - 1), vertex(i + 1) - vertex(i));
  }

  double length() const {
    CompensatedSum s;
    for (int i = 0; i < segment_count(); ++i) s += distance(vertex(i), vertex(i + 1));
    return s.value();
  }

 private:
  int wrap(int i) const noexcept {
    const int n = size();
    return ((i % n) + n) % n;
  }

  void check_simple(double eps) const {
    const int m = segment_count();
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const bool adjacent = (j == i + 1) || (closed_ && i == 0 && j == m - 1);
        if (adjacent) {
          // Shared vertex only: reject a fold-back where the two segments overlap.
          const int shared = (j == i + 1) ? j : i;
          const PointN& s = vertex(shared);
          if (angle_between(vertex(shared - 1) - s, vertex(shared + 1) - s) < 1e-12)
            fail(ErrorKind::construction, "curve folds back on itself at vertex " + std::to_string(shared));
          continue;
        }
        const auto [a, b] = segment(i);
        const auto [c, d] = segment(j);
        if (segment_segment_distance(a, b, c, d) <= eps)
          fail(ErrorKind::construction,
               "curve is not simple: segments " + std::to_string(i) + " and " + std::to_string(j) + " meet");
      }
    }
  }

  std::vector<PointN> vertices_;
  bool closed_;
  std::vector<CornerFlag> corners_;
  int dim_ = 0;
  double diameter_ = 0.0;
};

/// Polygonal total curvature: sum of the turning angles.
inline double total_curvature(const PolylineCurve& c) {
  require(c.closed(), ErrorKind::invalid_parameter, "total curvature needs a closed curve");
  CompensatedSum s;
  for (int i = 0; i < c.size(); ++i) s += c.turning_angle(i);
  return s.value();
}

namespace detail {

/// Length of the radial projection of the straight segment [a, b] onto the
/// unit sphere about x0: the angle it subtends, split while near-singular.
inline double projected_segment(const PointN& a, const PointN& b, const PointN& x0, double eps, int depth = 0) {
  const VecN ua = a - x0, ub = b - x0;
  const double ang = angle_between(ua, ub);
  if (ang < kPi - 1e-3) return ang;
  const PointN m = (a + b) * 0.5;
  require(depth < 60 && distance(m, x0) > eps, ErrorKind::projection_singular,
          "projection centre lies on a curve segment");
  return projected_segment(a, m, x0, eps, depth + 1) + projected_segment(m, b, x0, eps, depth + 1);
}

}  // namespace detail

struct ProjectionResult {
  double length = 0.0;
  bool boundary_mode = false;  // x0 coincides with a curve vertex
  int vertex = -1;
};

/// Length of Pi_{x0}(curve), x0 + (x - x0)/|x - x0|. When x0 is a curve
/// vertex the two incident segments project to single points and drop out.
inline ProjectionResult radial_projection(const PolylineCurve& c, const PointN& x0) {
  require(x0.dim() == c.dim(), ErrorKind::invalid_parameter, "projection centre has the wrong dimension");
  const double eps = 1e-12 * c.diameter();
  ProjectionResult res;
  for (int i = 0; i < c.size(); ++i)
    if (distance(c.vertex(i), x0) <= eps) {
      res.boundary_mode = true;
      res.vertex = i;
      break;
    }
  CompensatedSum sum;
  for (int i = 0; i < c.segment_count(); ++i) {
    if (res.boundary_mode && (i == res.vertex || (i + 1) % c.size() == res.vertex)) continue;
    const auto [a, b] = c.segment(i);
    require(point_segment_distance(x0, a, b) > eps, ErrorKind::projection_singular,
            "projection centre lies on segment " + std::to_string(i));
    sum += detail::projected_segment(a, b, x0, eps);
  }
  res.length = sum.value();
  return res;
}

inline double radial_projection_length(const PolylineCurve& c, const PointN& x0) {
  return radial_projection(c, x0).length;
}

/// Density of the cone over the curve at its apex x0: length(Pi_{x0}) / 2 pi.
inline double cone_density(const PolylineCurve& c, const PointN& x0) {
  return radial_projection_length(c, x0) / kTwoPi;
}

struct BoundReport {
  bool boundary_mode = false;
  int vertex = -1;
  double projection_length = 0.0;
  double tc = 0.0;
  double theta = 0.0;  // exterior angle at x0 (boundary mode only)
  double bound = 0.0;  // tc, or tc - pi - theta
  double slack = 0.0;  // bound - projection_length
  double tolerance = 0.0;
  bool violation = false;
  std::string tc_kind = "polygonal TC";
};

/// Projection-length bound: length <= TC off the curve and
/// length <= TC - pi - theta at a curve vertex with exterior angle theta.
inline BoundReport projection_bound_report(const PolylineCurve& c, const PointN& x0,
                                           double discretization_allowance = 0.0) {
  BoundReport r;
  const ProjectionResult p = radial_projection(c, x0);
  r.boundary_mode = p.boundary_mode;
  r.vertex = p.vertex;
  r.projection_length = p.length;
  r.tc = total_curvature(c);
  if (p.boundary_mode) {
    r.theta = c.turning_angle(p.vertex);
    r.bound = r.tc - kPi - r.theta;
  } else {
    r.bound = r.tc;
  }
  r.slack = r.bound - r.projection_length;
  r.tolerance = 1e-9 + discretization_allowance;
  r.violation = r.slack < -r.tolerance;
  return r;
}

}  // namespace densitykit
