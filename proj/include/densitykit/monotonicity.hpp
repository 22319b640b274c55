#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "densitykit/cone.hpp"
#include "densitykit/surface.hpp"

namespace densitykit {

/// (alpha, Lambda) for which the growth condition
///   int_{M ∩ B(r)} |H| <= alpha Lambda r^(alpha+1) m(r)
/// is guaranteed, from ||H||_inf or a small ||H||_p.
struct PropertyPConstants {
  double p = kInfinity;
  double alpha = 1.0;
  double lambda = 0.0;
  double c_p = 1.0;          // Lambda = c_p ||H||_p
  double h_norm = 0.0;
  double r0 = 0.0;
  bool smallness_ok = true;
  double smallness_lhs = 0.0;  // ||H||_p r0^(1-2/p)
  double smallness_rhs = kInfinity;
  double smallness_margin = kInfinity;
  std::string provenance;

  /// Lambda r0^alpha, the scale-free size of the mean curvature.
  double scaled_lambda() const { return lambda * std::pow(r0, alpha); }
};

/// 2p/(p-2) (2/pi)^(1/p); 1 at p = infinity.
inline double holder_constant(double p) {
  require(p > 2.0, ErrorKind::out_of_range, "p must exceed 2");
  if (std::isinf(p)) return 1.0;
  return 2.0 * p / (p - 2.0) * std::pow(2.0 / kPi, 1.0 / p);
}

/// Constants from a mean-curvature norm, diameter and exponent.
inline PropertyPConstants property_p_from_norm(double h_norm, double r0, double p) {
  PropertyPConstants k;
  k.p = p;
  k.c_p = holder_constant(p);
  k.h_norm = h_norm;
  k.r0 = r0;
  if (std::isinf(p)) {
    k.alpha = 1.0;
    k.lambda = h_norm;
    k.smallness_ok = true;
    k.smallness_lhs = 0.0;
    k.smallness_rhs = kInfinity;
    k.smallness_margin = kInfinity;
    return k;
  }
  k.alpha = 1.0 - 2.0 / p;
  k.lambda = k.c_p * h_norm;
  k.smallness_lhs = h_norm * std::pow(r0, 1.0 - 2.0 / p);
  k.smallness_rhs = (p - 2.0) / 2.0 * std::pow(kPi / 2.0, 1.0 / p);
  k.smallness_margin = k.smallness_rhs - k.smallness_lhs;
  k.smallness_ok = k.smallness_lhs <= k.smallness_rhs;
  return k;
}

inline PropertyPConstants property_p_constants(const SurfaceModel& s, double p) {
  require(p > 2.0, ErrorKind::out_of_range, "property (P) constants need p > 2 (or infinity)");
  const MeanCurvatureField h = mean_curvature_field(s);
  PropertyPConstants k = property_p_from_norm(lp_norm(h.magnitude, s, p), extrinsic_diameter(s), p);
  k.provenance = h.magnitude.provenance;
  return k;
}

/// Minimal-surface constants: alpha = 1, Lambda = 0.
inline PropertyPConstants minimal_constants(double r0) { return property_p_from_norm(0.0, r0, kInfinity); }

struct MonotonicityProfile {
  PointN x0;
  std::vector<double> radii;
  std::vector<double> m_values;
  std::vector<double> surface_area;  // area(M ∩ B(r_i))
  std::vector<double> cone_area;     // area(E ∩ B(r_i))
  double alpha = 1.0;
  double lambda = 0.0;
  double r0 = 0.0;
  double m_r0 = 0.0;
  double clip_tol = kDefaultClipTol;
  double cone_t_max = 0.0;
  double conormal_max = 0.0;  // max over boundary vertices of (x - x0).(nu_E + nu_M)
  bool x0_on_boundary = false;

  double weighted(size_t i) const { return std::exp(lambda * std::pow(radii[i], alpha)) * m_values[i]; }

  /// 3 x clip tolerance x largest counted area / smallest r^2, times the
  /// largest exponential weight.
  double tol_disc() const {
    double amax = 0.0, rmin = kInfinity, rmax = r0;
    for (size_t i = 0; i < radii.size(); ++i) {
      amax = std::max(amax, m_values[i] * radii[i] * radii[i]);
      rmin = std::min(rmin, radii[i]);
      rmax = std::max(rmax, radii[i]);
    }
    amax = std::max(amax, m_r0 * r0 * r0);
    rmin = std::min(rmin, r0);
    return 3.0 * clip_tol * amax / (rmin * rmin) * std::exp(lambda * std::pow(rmax, alpha));
  }
};

/// True when c runs through the vertices of one boundary loop in order
/// (either direction) within 1e-9 x diameter.
inline bool boundary_matches(const SurfaceModel& s, const PolylineCurve& c) {
  const double tol = 1e-9 * std::max(c.diameter(), 1e-300);
  for (const auto& loop : s.boundary_loops()) {
    const int n = static_cast<int>(loop.size());
    if (n != c.size()) continue;
    int off = -1;
    for (int i = 0; i < n; ++i)
      if (distance(s.vertex(loop[i]), c.vertex(0)) <= tol) off = i;
    if (off < 0) continue;
    for (int dir : {1, -1}) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) ok = distance(s.vertex(loop[((off + dir * j) % n + n) % n]), c.vertex(j)) <= tol;
      if (ok) return true;
    }
  }
  return false;
}

/// Radii from 5 x local edge length up to 4 r0, spaced by sqrt(2).
inline std::vector<double> default_radii(const SurfaceModel& s, const PointN& x0) {
  const double r0 = extrinsic_diameter(s);
  double r = 5.0 * mean_edge_length(s, nearest_vertex(s, x0));
  if (!(r > 0.0)) r = r0 / 64.0;
  std::vector<double> out;
  for (; r <= 4.0 * r0 * (1 + 1e-12); r *= std::sqrt(2.0)) out.push_back(r);
  return out;
}

namespace detail {

/// Max of (x - x0).(nu_E + nu_M) over the boundary vertices, nu_M taken in
/// the planes of the two incident boundary faces.
inline double conormal_check(const SurfaceModel& s, const PolylineCurve& c, const PointN& x0) {
  double worst = -kInfinity;
  const double eps = 1e-12 * c.diameter();
  for (int i = 0; i < c.size(); ++i) {
    const PointN& x = c.vertex(i);
    const VecN w = x - x0;
    if (norm(w) <= eps) continue;
    const VecN T = normalized(c.vertex(i + 1) - c.vertex(i - 1));
    const VecN wp = w - T * dot(w, T);
    const VecN nu_e = -normalized(wp);
    // nu_M: average of the outward conormals of the two boundary edges at x.
    const auto v = vertex_at(s, x);
    if (!v) continue;
    VecN nu_m = VecN::zero(s.dim());
    for (int f : s.vertex_faces(*v)) {
      const Face& t = s.face(f);
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3], o = t[(k + 2) % 3];
        if (a != *v && b != *v) continue;
        if (!s.is_boundary_vertex(a) || !s.is_boundary_vertex(b)) continue;
        // Boundary edge iff only this face holds it.
        int holders = 0;
        for (int g : s.vertex_faces(a)) {
          const Face& tg = s.face(g);
          holders += (std::find(tg.begin(), tg.end(), b) != tg.end());
        }
        if (holders != 1) continue;
        const VecN d = normalized(s.vertex(b) - s.vertex(a));
        VecN q = s.vertex(a) - s.vertex(o);
        q -= d * dot(q, d);
        nu_m += normalized(q);
      }
    }
    VecN nm = nu_m - T * dot(nu_m, T);
    if (norm(nm) == 0.0) continue;
    nm = normalized(nm);
    worst = std::max(worst, dot(w, nu_e + nm));
  }
  return worst;
}

}  // namespace detail

/// m(r) = area((M ∪ E) ∩ B(r)) / r^2 with E the exterior cone over the
/// boundary from x0, truncated at t_max = 2 r_max / d_min + 1.
inline MonotonicityProfile m_profile(const SurfaceModel& s, const PolylineCurve& boundary, const PointN& x0,
                                     std::vector<double> radii, const PropertyPConstants& k,
                                     double clip_tol = kDefaultClipTol) {
  require(x0.dim() == s.dim(), ErrorKind::invalid_parameter, "x0 has the wrong dimension");
  require(boundary_matches(s, boundary), ErrorKind::input_inconsistent,
          "boundary curve does not match a boundary loop of the surface");
  require(!radii.empty(), ErrorKind::invalid_parameter, "no radii");
  std::sort(radii.begin(), radii.end());
  for (size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && std::isfinite(radii[i]), ErrorKind::invalid_parameter, "radii must be positive");
    require(i == 0 || radii[i] > radii[i - 1], ErrorKind::invalid_parameter, "radii must be distinct");
  }

  MonotonicityProfile prof;
  prof.x0 = x0;
  prof.radii = radii;
  prof.alpha = k.alpha;
  prof.lambda = k.lambda;
  prof.clip_tol = clip_tol;
  prof.r0 = extrinsic_diameter(s);

  const double eps = 1e-12 * boundary.diameter();
  int at_vertex = -1;
  for (int i = 0; i < boundary.size(); ++i)
    if (distance(boundary.vertex(i), x0) <= eps) at_vertex = i;
  prof.x0_on_boundary = at_vertex >= 0;
  double dmin = kInfinity;
  for (int i = 0; i < boundary.segment_count(); ++i) {
    if (at_vertex >= 0 && (i == at_vertex || (i + 1) % boundary.size() == at_vertex)) continue;
    const auto [a, b] = boundary.segment(i);
    dmin = std::min(dmin, point_segment_distance(x0, a, b));
  }
  require(dmin > eps, ErrorKind::projection_singular, "x0 lies on a boundary segment");
  const double rmax = std::max(radii.back(), prof.r0);
  prof.cone_t_max = 2.0 * rmax / dmin + 1.0;
  const ConeSurface cone = build_cone(boundary, x0, ConeKind::exterior, prof.cone_t_max);

  const auto m_at = [&](double r, double& am, double& ae) {
    am = area_in_ball(s, x0, r, clip_tol);
    ae = area_in_ball(*cone.mesh, x0, r, clip_tol);
    return (am + ae) / (r * r);
  };
  for (double r : radii) {
    double am = 0, ae = 0;
    prof.m_values.push_back(m_at(r, am, ae));
    prof.surface_area.push_back(am);
    prof.cone_area.push_back(ae);
  }
  double am = 0, ae = 0;
  prof.m_r0 = m_at(prof.r0, am, ae);
  prof.conormal_max = detail::conormal_check(s, boundary, x0);
  return prof;
}

inline MonotonicityProfile m_profile(const SurfaceModel& s, const PolylineCurve& boundary, const PointN& x0,
                                     std::vector<double> radii, double clip_tol = kDefaultClipTol) {
  return m_profile(s, boundary, x0, std::move(radii), minimal_constants(extrinsic_diameter(s)), clip_tol);
}

struct PairDefect {
  int i, j;
  double defect;
};

struct WeightedMonotonicityReport {
  std::vector<PairDefect> pairs;
  std::vector<double> per_radius;  // min_{j<i} (w_i - w_j); 0 at the first radius
  double min_defect = kInfinity;
  double tol = 0.0;
  int violations = 0;
  bool ok() const { return violations == 0; }
};

/// d_ij = e^{Lambda r_j^alpha} m(r_j) - e^{Lambda r_i^alpha} m(r_i) for i < j.
inline WeightedMonotonicityReport check_weighted_monotonicity(const MonotonicityProfile& prof) {
  WeightedMonotonicityReport rep;
  rep.tol = prof.tol_disc();
  const size_t n = prof.radii.size();
  rep.per_radius.assign(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    double worst = kInfinity;
    for (size_t i = 0; i < j; ++i) {
      const double d = prof.weighted(j) - prof.weighted(i);
      rep.pairs.push_back({static_cast<int>(i), static_cast<int>(j), d});
      rep.min_defect = std::min(rep.min_defect, d);
      worst = std::min(worst, d);
      if (d < -rep.tol) ++rep.violations;
    }
    rep.per_radius[j] = j == 0 ? 0.0 : worst;
  }
  return rep;
}

struct RadiusSlack {
  double r;
  double lhs;
  double rhs;
  double slack;
  double tol;
  bool ok;
};

struct SlackReport {
  std::vector<RadiusSlack> rows;
  double min_slack = kInfinity;
  int violations = 0;
  bool ok() const { return violations == 0; }

  void add(RadiusSlack row) {
    min_slack = std::min(min_slack, row.slack);
    if (!row.ok) ++violations;
    rows.push_back(row);
  }
};

/// m(r) >= m(r0) (1 - (alpha Lambda r0^alpha / 2)(1 - r0^2 / r^2)) for r >= r0.
inline SlackReport check_large_radius_bound(const MonotonicityProfile& prof) {
  SlackReport rep;
  const double tol = prof.tol_disc();
  const double a = prof.alpha * prof.lambda * std::pow(prof.r0, prof.alpha) / 2.0;
  for (size_t i = 0; i < prof.radii.size(); ++i) {
    const double r = prof.radii[i];
    if (r < prof.r0) continue;
    const double bound = prof.m_r0 * (1.0 - a * (1.0 - prof.r0 * prof.r0 / (r * r)));
    const double slack = prof.m_values[i] - bound;
    rep.add({r, prof.m_values[i], bound, slack, tol, slack >= -tol});
  }
  require(!rep.rows.empty(), ErrorKind::invalid_parameter, "profile has no radius >= r0");
  return rep;
}

/// Pointwise |H| as an integrand: analytic at the interpolated parameter, or
/// the barycentric blend of the vertex field.
inline auto abs_h_integrand(const SurfaceModel& s, const MeanCurvatureField& field) {
  return [&s, &field](int f, const PointN&, const Bary& b) {
    if (s.has_source()) {
      const UV uv = s.face_uv(f, b);
      return norm(s.patch()->mean_curvature(uv[0], uv[1]));
    }
    const Face& t = s.face(f);
    return b[0] * field.magnitude.values[t[0]] + b[1] * field.magnitude.values[t[1]] +
           b[2] * field.magnitude.values[t[2]];
  };
}

/// Per-radius slack alpha Lambda r^(alpha+1) m(r) - int_{M ∩ B(r)} |H|.
inline SlackReport check_property_p(const SurfaceModel& s, const PropertyPConstants& k, const MonotonicityProfile& prof) {
  SlackReport rep;
  const MeanCurvatureField field = mean_curvature_field(s);
  const auto integrand = abs_h_integrand(s, field);
  for (size_t i = 0; i < prof.radii.size(); ++i) {
    const double r = prof.radii[i];
    const double lhs = integrate_in_ball(s, prof.x0, r, integrand, prof.clip_tol);
    const double rhs = k.alpha * k.lambda * std::pow(r, k.alpha + 1.0) * prof.m_values[i];
    const double tol = 3.0 * prof.clip_tol * (std::abs(lhs) + std::abs(rhs)) + 1e-14;
    const double slack = rhs - lhs;
    rep.add({r, lhs, rhs, slack, tol, slack >= -tol});
  }
  return rep;
}

inline SlackReport check_property_p(const SurfaceModel& s, const PolylineCurve& boundary, const PropertyPConstants& k,
                                    const PointN& x0, const std::vector<double>& radii) {
  return check_property_p(s, k, m_profile(s, boundary, x0, radii, k));
}

struct IdentityTerms {
  double lhs = 0.0;       // A(r)/r^2 - A(sigma)/sigma^2
  double normal = 0.0;    // int_{B(r) \ B(sigma)} |(x - x0)^perp|^2 / rho^4
  double curvature = 0.0; // int_sigma^r s^-3 int_{B(s)} (x - x0).H
  double boundary = 0.0;  // -int_sigma^r s^-3 int_{dM ∩ B(s)} (x - x0).nu
  double defect = 0.0;
};

/// Integrated boundary monotonicity identity between sigma and r. The inner
/// ball integrals are swapped with the radial integral, giving the weight
/// w(rho) = (max(sigma, rho)^-2 - r^-2) / 2 on the surface and on its boundary.
inline IdentityTerms identity_terms(const SurfaceModel& s, const PointN& x0, double sigma, double r,
                                    double clip_tol = 1e-5) {
  require(s.has_source(), ErrorKind::unsupported, "identity defect needs an analytic source");
  require(sigma > 0.0 && sigma < r, ErrorKind::invalid_parameter, "need 0 < sigma < r");
  const AnalyticPatch& patch = *s.patch();
  IdentityTerms out;
  out.lhs = area_in_ball(s, x0, r, clip_tol) / (r * r) - area_in_ball(s, x0, sigma, clip_tol) / (sigma * sigma);

  const auto normal_term = [&](int f, const PointN&, const Bary& b) {
    const UV uv = s.face_uv(f, b);
    const LocalGeometry g = patch.local(uv[0], uv[1]);
    const VecN w = g.x - x0;
    const double rho2 = norm2(w);
    if (rho2 == 0.0) return 0.0;
    return norm2(g.normal_part(w)) / (rho2 * rho2);
  };
  out.normal = integrate_in_ball(s, x0, r, normal_term, clip_tol) - integrate_in_ball(s, x0, sigma, normal_term, clip_tol);

  const auto curv_term = [&](double cap) {
    return [&, cap](int f, const PointN&, const Bary& b) {
      const UV uv = s.face_uv(f, b);
      const LocalGeometry g = patch.local(uv[0], uv[1]);
      const VecN w = g.x - x0;
      const double rho2 = norm2(w);
      if (rho2 == 0.0) return 0.0;
      return dot(w, g.mean_curvature()) * 0.5 * (1.0 / rho2 - 1.0 / (cap * cap));
    };
  };
  out.curvature = integrate_in_ball(s, x0, r, curv_term(r), clip_tol) -
                  integrate_in_ball(s, x0, sigma, curv_term(sigma), clip_tol);

  // Boundary: 5-point Gauss-Legendre on every boundary edge piece inside B(r),
  // split at the sigma sphere.
  static constexpr double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                   0.9061798459386640};
  static constexpr double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                   0.2369268850561891};
  CompensatedSum bsum;
  const Ball big(x0, r), small(x0, sigma);
  for (int f = 0; f < s.face_count(); ++f) {
    const Face& t = s.face(f);
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3], o = t[(k + 2) % 3];
      if (!s.is_boundary_vertex(a) || !s.is_boundary_vertex(b)) continue;
      int holders = 0;
      for (int g : s.vertex_faces(a)) {
        const Face& tg = s.face(g);
        holders += (std::find(tg.begin(), tg.end(), b) != tg.end());
      }
      if (holders != 1) continue;
      const PointN& pa = s.vertex(a);
      const PointN& pb = s.vertex(b);
      const auto in = segment_ball_interval(pa, pb, big);
      if (!in) continue;
      std::vector<double> cuts{in->first, in->second};
      if (const auto si = segment_ball_interval(pa, pb, small)) {
        for (double c : {si->first, si->second})
          if (c > in->first && c < in->second) cuts.push_back(c);
      }
      std::sort(cuts.begin(), cuts.end());
      const double len = distance(pa, pb);
      const UV ua = s.uv()[a], ub = s.uv()[b];
      for (size_t q = 0; q + 1 < cuts.size(); ++q) {
        const double s0 = cuts[q], s1 = cuts[q + 1];
        if (s1 <= s0) continue;
        double piece = 0.0;
        for (int gpt = 0; gpt < 5; ++gpt) {
          const double sp = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * gx[gpt];
          const PointN x = pa + (pb - pa) * sp;
          const double rho = distance(x, x0);
          const double wgt = 0.5 * (1.0 / (std::max(sigma, rho) * std::max(sigma, rho)) - 1.0 / (r * r));
          const LocalGeometry g = patch.local(ua[0] + sp * (ub[0] - ua[0]), ua[1] + sp * (ub[1] - ua[1]));
          const VecN d = normalized(g.tangent_part(pb - pa));
          VecN q2 = g.tangent_part(pa - s.vertex(o));
          q2 -= d * dot(q2, d);
          const VecN nu = normalized(q2);
          piece += gw[gpt] * dot(x - x0, nu) * wgt;
        }
        bsum += -piece * 0.5 * (s1 - s0) * len;
      }
    }
  }
  out.boundary = bsum.value();
  out.defect = out.lhs - (out.normal + out.curvature + out.boundary);
  return out;
}

inline double identity_defect(const SurfaceModel& s, const PointN& x0, double sigma, double r, double clip_tol = 1e-5) {
  return identity_terms(s, x0, sigma, r, clip_tol).defect;
}

}  // namespace densitykit
