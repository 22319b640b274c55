#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "densitykit/monotonicity.hpp"

namespace densitykit {

// ---------------------------------------------------------------------------
// delta(epsilon)

enum class DeltaMode { interior, boundary, class_P };

inline std::string_view to_string(DeltaMode m) {
  switch (m) {
    case DeltaMode::interior: return "interior";
    case DeltaMode::boundary: return "boundary";
    case DeltaMode::class_P: return "class_P";
  }
  return "unknown";
}

struct DeltaSolution {
  double epsilon = 0.0;
  double alpha = 1.0;
  DeltaMode mode = DeltaMode::interior;
  double delta = 0.0;
  double margin = 0.0;  // rhs - lhs of the defining inequality at delta
};

/// lhs - rhs of the strict inequality defining delta; negative means it holds.
inline double delta_gap(double delta, double epsilon, double alpha, DeltaMode mode) {
  switch (mode) {
    case DeltaMode::interior: return std::exp(delta) / (2.0 - alpha * delta) * (4.0 - epsilon) - 2.0;
    case DeltaMode::boundary: return std::exp(delta) / (2.0 - alpha * delta) * (3.0 - epsilon) - 1.5;
    case DeltaMode::class_P: return std::exp(delta) / (1.0 - delta) - 4.0 / (4.0 - epsilon);
  }
  return 0.0;
}

inline constexpr double kDeltaSafety = 1e-9;

/// Largest delta in (0, 1) satisfying the mode's inequality, by bisection to
/// 1e-12, minus the safety margin.
inline DeltaSolution delta_for_epsilon(double epsilon, double alpha, DeltaMode mode) {
  require(epsilon > 0.0 && epsilon <= 2.0, ErrorKind::invalid_parameter, "epsilon must lie in (0, 2]");
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::invalid_parameter, "alpha must lie in (0, 1]");
  require(delta_gap(0.0, epsilon, alpha, mode) < 0.0, ErrorKind::infeasible, "no positive delta satisfies the inequality");
  double lo = 0.0, hi = 1.0;
  if (delta_gap(hi - kDeltaSafety, epsilon, alpha, mode) < 0.0) {
    lo = hi - kDeltaSafety;
  } else {
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (delta_gap(mid, epsilon, alpha, mode) < 0.0 ? lo : hi) = mid;
    }
  }
  DeltaSolution sol{epsilon, alpha, mode, lo - kDeltaSafety, 0.0};
  require(sol.delta > 0.0, ErrorKind::infeasible, "delta collapsed to zero");
  sol.margin = -delta_gap(sol.delta, epsilon, alpha, mode);
  return sol;
}

/// epsilon = 4 - TC/pi clamped to (0, 2]; nullopt when TC >= 4 pi.
inline std::optional<double> epsilon_from_tc(double tc) {
  const double e = 4.0 - tc / kPi;
  if (!(e > 0.0)) return std::nullopt;
  return std::min(e, 2.0);
}

// ---------------------------------------------------------------------------
// Certificate record

enum class TheoremId { density_estimate, interior_embeddedness, full_embeddedness, corner_density, genus_bound };

inline std::string_view to_string(TheoremId t) {
  switch (t) {
    case TheoremId::density_estimate: return "density_estimate";
    case TheoremId::interior_embeddedness: return "interior_embeddedness";
    case TheoremId::full_embeddedness: return "full_embeddedness";
    case TheoremId::corner_density: return "corner_density";
    case TheoremId::genus_bound: return "genus_bound";
  }
  return "unknown";
}

enum class Verdict { certified, violated, not_applicable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

struct Hypothesis {
  std::string name;
  std::string relation;  // measured <relation> required
  double required = 0.0;
  double measured = 0.0;
  bool ok = false;
};

struct Conclusion {
  std::string name;
  std::string relation;
  double bound = 0.0;
  double measured = 0.0;
  double slack = 0.0;
  bool ok = false;
};

struct Certificate {
  TheoremId theorem = TheoremId::density_estimate;
  std::vector<Hypothesis> hypotheses;
  Conclusion conclusion;
  std::vector<Conclusion> checks;  // supporting sub-conclusions
  std::vector<std::string> citations;
  std::vector<std::string> notes;
  std::string inputs_digest;

  bool hypotheses_ok() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.ok; });
  }

  Verdict verdict() const {
    if (!hypotheses_ok()) return Verdict::not_applicable;
    return conclusion.ok ? Verdict::certified : Verdict::violated;
  }

  /// Enforces the structural rule: no satisfied conclusion under a failed
  /// hypothesis.
  void seal() {
    if (!hypotheses_ok()) {
      conclusion.ok = false;
      for (auto& c : checks) c.ok = false;
    }
  }
};

// ---------------------------------------------------------------------------
// Input digest

class Fnv1a {
 public:
  void bytes(const void* p, size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h_ ^= b[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(double x) { bytes(&x, sizeof x); }
  void add(int x) { bytes(&x, sizeof x); }
  void add(std::string_view s) { bytes(s.data(), s.size()); }
  void add(const PointN& p) {
    add(p.dim());
    for (double c : p.coords()) add(c);
  }
  std::string hex() const {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[15 - i] = kHex[(h_ >> (4 * i)) & 0xF];
    return out;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline void digest_surface(Fnv1a& h, const SurfaceModel& s) {
  for (const auto& v : s.vertices()) h.add(v);
  for (const auto& f : s.faces())
    for (int i : f) h.add(i);
}

inline void digest_curve(Fnv1a& h, const PolylineCurve& c) {
  for (const auto& v : c.vertices()) h.add(v);
  for (const auto& k : c.corners()) {
    h.add(k.index);
    h.add(k.theta);
  }
}

// ---------------------------------------------------------------------------
// Shared hypothesis blocks

struct CurvatureBudget {
  double tc = 0.0;
  std::optional<double> epsilon;
  PropertyPConstants k;
};

inline CurvatureBudget curvature_budget(const SurfaceModel& s, const PolylineCurve& boundary, double p) {
  CurvatureBudget b;
  b.tc = total_curvature(boundary);
  b.epsilon = epsilon_from_tc(b.tc);
  b.k = property_p_constants(s, p);
  return b;
}

inline Hypothesis tc_hypothesis(const CurvatureBudget& b) {
  Hypothesis h{"total curvature below 4 pi (polygonal TC)", "<", 4.0 * kPi, b.tc, b.epsilon.has_value()};
  return h;
}

/// "Lambda r0^alpha < delta"; not satisfiable without a valid epsilon.
inline Hypothesis smallness_hypothesis(const CurvatureBudget& b, DeltaMode mode, double& delta_out,
                                       bool take_min_with_boundary = false) {
  Hypothesis h{"C(p) ||H||_p r0^alpha < delta", "<", 0.0, b.k.scaled_lambda(), false};
  if (!b.epsilon) {
    delta_out = 0.0;
    return h;
  }
  double d = delta_for_epsilon(*b.epsilon, b.k.alpha, mode).delta;
  if (take_min_with_boundary) {
    const DeltaSolution bd = delta_for_epsilon(*b.epsilon, b.k.alpha, DeltaMode::boundary);
    d = std::min(d, bd.delta);
  }
  delta_out = d;
  h.required = d;
  h.ok = h.measured < d;
  return h;
}

// ---------------------------------------------------------------------------
// Density estimate

inline constexpr double kDensityTol = 1e-3;

/// Theta(cone, x0) >= e^{-Lambda r0^alpha} (1 - alpha Lambda r0^alpha / 2) Theta(M, x0),
/// plus the area-ratio form over the profile radii r <= r0.
inline Certificate density_estimate_certificate(const SurfaceModel& s, const PolylineCurve& boundary, const PointN& x0,
                                                double p, std::vector<double> radii = {}) {
  Certificate c;
  c.theorem = TheoremId::density_estimate;
  c.citations = {"density estimate: cone density against surface density under property (P)",
                 "area-ratio form of the density estimate for r <= r0"};
  const PropertyPConstants k = property_p_constants(s, p);
  c.hypotheses.push_back({"property (P) exponent alpha in (0,1]", "<=", 1.0, k.alpha, k.alpha > 0.0 && k.alpha <= 1.0});
  c.hypotheses.push_back({"L^p smallness ||H||_p r0^(1-2/p) <= ((p-2)/2)(pi/2)^(1/p)", "<=", k.smallness_rhs,
                          k.smallness_lhs, k.smallness_ok});

  const double lr = k.scaled_lambda();
  const double factor = std::exp(-lr) * (1.0 - k.alpha * lr / 2.0);
  const double theta_cone = cone_density(boundary, x0);
  const double theta_m = density(s, x0, DensityMode::extrapolated).value;
  c.conclusion.name = "cone density >= e^{-Lambda r0^alpha}(1 - alpha Lambda r0^alpha/2) density";
  c.conclusion.relation = ">=";
  c.conclusion.bound = factor * theta_m;
  c.conclusion.measured = theta_cone;
  c.conclusion.slack = theta_cone - c.conclusion.bound;
  c.conclusion.ok = c.conclusion.slack >= -kDensityTol;

  if (radii.empty()) radii = default_radii(s, x0);
  std::vector<double> small;
  for (double r : radii)
    if (r <= k.r0) small.push_back(r);
  if (!small.empty()) {
    const MonotonicityProfile prof = m_profile(s, boundary, x0, small, k);
    const double tol = prof.tol_disc();
    for (size_t i = 0; i < prof.radii.size(); ++i) {
      const double r = prof.radii[i];
      const double b = std::exp(-k.lambda * (std::pow(k.r0, k.alpha) - std::pow(r, k.alpha))) *
                       (1.0 - k.alpha * lr / 2.0) * prof.m_values[i];
      Conclusion row{"pi cone density >= area-ratio bound at r = " + std::to_string(r), ">=", b, kPi * theta_cone,
                     kPi * theta_cone - b, kPi * theta_cone - b >= -tol};
      c.conclusion.ok = c.conclusion.ok && row.ok;
      c.checks.push_back(row);
    }
  }
  c.notes.push_back("surface density by extrapolation: " + std::to_string(theta_m));
  c.notes.push_back("Lambda r0^alpha = " + std::to_string(lr));

  Fnv1a h;
  h.add("density_estimate");
  digest_surface(h, s);
  digest_curve(h, boundary);
  h.add(x0);
  h.add(p);
  c.inputs_digest = h.hex();
  c.seal();
  return c;
}

// ---------------------------------------------------------------------------
// Triangle intersection sweep

struct SweepResult {
  long long pairs_tested = 0;
  int intersections = 0;
  std::vector<std::pair<int, int>> examples;  // first few offending face pairs
  bool clean() const { return intersections == 0; }
};

/// All face pairs that do not share a vertex and come closer than
/// 1e-12 x diameter. Sort-and-sweep on the first coordinate, then a full
/// bounding-box test, then the exact distance.
inline SweepResult intersection_sweep(const SurfaceModel& s, int max_examples = 8) {
  SweepResult res;
  const int nf = s.face_count();
  const int n = s.dim();
  double diam2 = 0.0;
  std::vector<std::array<double, 2 * kMaxDim>> box(nf);
  for (int f = 0; f < nf; ++f) {
    for (int d = 0; d < n; ++d) {
      double lo = kInfinity, hi = -kInfinity;
      for (int v : s.face(f)) {
        lo = std::min(lo, s.vertex(v)[d]);
        hi = std::max(hi, s.vertex(v)[d]);
      }
      box[f][2 * d] = lo;
      box[f][2 * d + 1] = hi;
    }
  }
  for (int d = 0; d < n; ++d) {
    double lo = kInfinity, hi = -kInfinity;
    for (int f = 0; f < nf; ++f) {
      lo = std::min(lo, box[f][2 * d]);
      hi = std::max(hi, box[f][2 * d + 1]);
    }
    diam2 += (hi - lo) * (hi - lo);
  }
  const double eps = 1e-12 * std::sqrt(diam2);
  std::vector<int> order(nf);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return box[a][0] < box[b][0]; });
  for (int ii = 0; ii < nf; ++ii) {
    const int a = order[ii];
    if (s.face_area(a) == 0.0) continue;
    for (int jj = ii + 1; jj < nf; ++jj) {
      const int b = order[jj];
      if (box[b][0] > box[a][1] + eps) break;
      if (s.face_area(b) == 0.0) continue;
      bool overlap = true;
      for (int d = 1; d < n && overlap; ++d)
        overlap = box[b][2 * d] <= box[a][2 * d + 1] + eps && box[a][2 * d] <= box[b][2 * d + 1] + eps;
      if (!overlap) continue;
      const Face& fa = s.face(a);
      const Face& fb = s.face(b);
      bool shared = false;
      for (int x : fa)
        for (int y : fb) shared = shared || x == y;
      if (shared) continue;
      if (distance(s.face_center(a), s.face_center(b)) > s.face_radius(a) + s.face_radius(b) + eps) continue;
      ++res.pairs_tested;
      if (triangle_triangle_distance(s.triangle(a), s.triangle(b)) <= eps) {
        ++res.intersections;
        if (static_cast<int>(res.examples.size()) < max_examples) res.examples.emplace_back(a, b);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Embeddedness

enum class EmbeddedWhich { interior, full };

struct EmbeddednessOptions {
  int interior_samples = 16;
  int boundary_samples = 16;
  bool sweep = true;
};

inline constexpr double kThresholdMargin = 0.05;

namespace detail {

inline std::vector<int> spread(const std::vector<int>& pool, int count) {
  if (static_cast<int>(pool.size()) <= count) return pool;
  std::vector<int> out;
  for (int i = 0; i < count; ++i) out.push_back(pool[(static_cast<size_t>(i) * pool.size()) / count]);
  return out;
}

}  // namespace detail

/// Interior: TC < 4 pi and C(p)||H||_p r0^alpha < delta_interior(eps) imply
/// density < 2 at interior points. Full: delta = min(interior, boundary) and
/// additionally density < 3/2 on the boundary.
inline Certificate embeddedness_certificate(const SurfaceModel& s, const PolylineCurve& boundary, double p,
                                            EmbeddedWhich which, const EmbeddednessOptions& opt = {}) {
  Certificate c;
  c.theorem = which == EmbeddedWhich::interior ? TheoremId::interior_embeddedness : TheoremId::full_embeddedness;
  c.citations = {"interior embeddedness under total curvature at most (4 - eps) pi",
                 "embeddedness up to the boundary under total curvature at most (4 - eps) pi",
                 "density thresholds: interior density 1, boundary density 1/2"};
  const CurvatureBudget b = curvature_budget(s, boundary, p);
  c.hypotheses.push_back(tc_hypothesis(b));
  double delta = 0.0;
  c.hypotheses.push_back(smallness_hypothesis(b, DeltaMode::interior, delta, which == EmbeddedWhich::full));
  if (b.epsilon) c.notes.push_back("epsilon = " + std::to_string(*b.epsilon));

  // Interior samples: spread over interior vertices plus every branch point.
  std::vector<int> interior, bnd;
  for (int v = 0; v < s.vertex_count(); ++v) (s.is_boundary_vertex(v) ? bnd : interior).push_back(v);
  std::vector<int> isamp = detail::spread(interior, opt.interior_samples);
  if (s.has_source())
    for (const auto& bp : s.patch()->branch_points())
      if (auto v = vertex_at(s, s.patch()->position(bp.u, bp.v)); v && !s.is_boundary_vertex(*v)) isamp.push_back(*v);

  double max_int = 0.0;
  for (int v : isamp) {
    const double edge = mean_edge_length(s, v);
    const double r1 = std::min(kDensityRadiusFactor * edge, 0.9 * distance_to_boundary(s, s.vertex(v)));
    max_int = std::max(max_int, density(s, s.vertex(v), DensityMode::extrapolated, r1).value);
  }
  c.conclusion = {"sampled interior density below 2", "<", 2.0 - kThresholdMargin, max_int,
                  2.0 - kThresholdMargin - max_int, max_int < 2.0 - kThresholdMargin};
  bool ok = c.conclusion.ok;
  if (which == EmbeddedWhich::full) {
    double max_b = 0.0;
    for (int v : detail::spread(bnd, opt.boundary_samples))
      max_b = std::max(max_b, density(s, s.vertex(v), DensityMode::extrapolated).value);
    Conclusion row{"sampled boundary density below 3/2", "<", 1.5 - kThresholdMargin, max_b, 1.5 - kThresholdMargin - max_b,
                   max_b < 1.5 - kThresholdMargin};
    ok = ok && row.ok;
    c.checks.push_back(row);
  }
  if (opt.sweep) {
    const SweepResult sw = intersection_sweep(s);
    Conclusion row{"triangle pairs closer than 1e-12 diameter (excluding vertex-adjacent)", "==", 0.0,
                   static_cast<double>(sw.intersections), -static_cast<double>(sw.intersections), sw.clean()};
    ok = ok && row.ok;
    c.checks.push_back(row);
  }
  c.conclusion.ok = ok;
  c.notes.push_back(ok ? "certified embedded (sampled)" : "embeddedness not confirmed");

  Fnv1a h;
  h.add(to_string(c.theorem));
  digest_surface(h, s);
  digest_curve(h, boundary);
  h.add(p);
  c.inputs_digest = h.hex();
  c.seal();
  return c;
}

// ---------------------------------------------------------------------------
// Corner densities

inline constexpr double kCornerTol = 0.05;

struct PlaneFit {
  double max_distance = 0.0;
  bool planar = false;
};

/// Best-fit plane through the curve vertices (principal components); planar
/// when every vertex is within 1e-9 r0 of it.
inline PlaneFit plane_fit(const PolylineCurve& c, double r0) {
  const int n = c.dim();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  for (const auto& v : c.vertices())
    for (int d = 0; d < n; ++d) mean(d) += v[d];
  mean /= static_cast<double>(c.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (const auto& v : c.vertices()) {
    Eigen::VectorXd w(n);
    for (int d = 0; d < n; ++d) w(d) = v[d] - mean(d);
    cov += w * w.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  // Eigenvalues ascend: the last two vectors span the plane.
  PlaneFit out;
  for (const auto& v : c.vertices()) {
    Eigen::VectorXd w(n);
    for (int d = 0; d < n; ++d) w(d) = v[d] - mean(d);
    double off = 0.0;
    for (int q = 0; q < n - 2; ++q) {
      const double comp = es.eigenvectors().col(q).dot(w);
      off += comp * comp;
    }
    out.max_distance = std::max(out.max_distance, std::sqrt(off));
  }
  out.planar = out.max_distance < 1e-9 * r0;
  return out;
}

inline std::vector<double> admissible_corner_densities(double theta, bool planar) {
  if (std::abs(theta - kPi) <= 1e-12) return planar ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.0};
  return {0.5 + theta / kTwoPi, 0.5 - theta / kTwoPi};
}

/// Statement-level check: the density at a flagged corner with exterior angle
/// theta is 1/2 +- theta/2pi (0 at a cusp unless the curve is planar).
inline Certificate corner_density_certificate(const SurfaceModel& s, const PolylineCurve& boundary, int corner_index,
                                              double p = kInfinity) {
  const auto theta = boundary.corner_theta(corner_index);
  require(theta.has_value(), ErrorKind::invalid_parameter,
          "vertex " + std::to_string(corner_index) + " is not flagged as a corner");
  Certificate c;
  c.theorem = TheoremId::corner_density;
  c.citations = {"boundary density at a corner of exterior angle theta", "P(eps, alpha) class"};
  const CurvatureBudget b = curvature_budget(s, boundary, p);
  c.hypotheses.push_back(tc_hypothesis(b));
  double delta = 0.0;
  c.hypotheses.push_back(smallness_hypothesis(b, DeltaMode::class_P, delta));

  const PlaneFit pf = plane_fit(boundary, b.k.r0);
  const auto adm = admissible_corner_densities(*theta, pf.planar);
  const double measured = density(s, boundary.vertex(corner_index), DensityMode::extrapolated).value;
  double best = kInfinity, nearest = adm.front();
  for (double a : adm)
    if (std::abs(measured - a) < best) {
      best = std::abs(measured - a);
      nearest = a;
    }
  c.conclusion = {"corner density within 0.05 of an admissible value", "~", nearest, measured, kCornerTol - best,
                  best <= kCornerTol};
  c.notes.push_back("statement-level check");
  c.notes.push_back("theta = " + std::to_string(*theta));
  if (std::abs(*theta - kPi) <= 1e-12 && pf.planar) c.notes.push_back("planar exception");
  std::string adm_s = "admissible:";
  for (double a : adm) adm_s += " " + std::to_string(a);
  c.notes.push_back(adm_s);

  Fnv1a h;
  h.add("corner_density");
  digest_surface(h, s);
  digest_curve(h, boundary);
  h.add(corner_index);
  h.add(p);
  c.inputs_digest = h.hex();
  c.seal();
  return c;
}

// ---------------------------------------------------------------------------
// Genus

struct GenusBound {
  double chi_min = 0.0;
  double g_max = 0.0;
};

/// chi >= -(TC + 3 pi Delta^2) / (2 pi), hence g <= (2 - chi_min - b) / 2.
inline GenusBound genus_bound(double tc, double Delta, int b) {
  require(Delta >= 0.0, ErrorKind::invalid_parameter, "Delta must be nonnegative");
  GenusBound g;
  g.chi_min = -(tc + 3.0 * kPi * Delta * Delta) / kTwoPi;
  g.g_max = (2.0 - g.chi_min - b) / 2.0;
  return g;
}

inline Certificate genus_certificate(const SurfaceModel& s, const PolylineCurve& boundary, double Delta,
                                     double p = kInfinity, std::optional<double> sup_A = std::nullopt) {
  require(Delta > 0.0, ErrorKind::invalid_parameter, "Delta must be positive");
  require(s.orientable(), ErrorKind::unsupported, "genus certificate needs an orientable mesh");
  Certificate c;
  c.theorem = TheoremId::genus_bound;
  c.citations = {"genus bound from Gauss-Bonnet and the 3 pi Delta^2 curvature-energy bound", "P(eps, alpha) class"};
  const int b = static_cast<int>(s.boundary_loops().size());
  c.hypotheses.push_back({"single boundary curve", "==", 1.0, static_cast<double>(b), b == 1});
  const CurvatureBudget cb = curvature_budget(s, boundary, p);
  c.hypotheses.push_back(tc_hypothesis(cb));
  double delta = 0.0;
  c.hypotheses.push_back(smallness_hypothesis(cb, DeltaMode::class_P, delta));
  if (!sup_A && s.has_source()) sup_A = second_form_sup(s).value;
  const double scaled = sup_A ? cb.k.r0 * *sup_A : std::numeric_limits<double>::quiet_NaN();
  c.hypotheses.push_back({"r0 sup|A| < Delta", "<", Delta, scaled, sup_A.has_value() && scaled < Delta});

  const int chi = s.euler_characteristic();
  const int g = s.genus();
  const GenusBound gb = genus_bound(cb.tc, Delta, b);
  c.conclusion = {"genus <= (2 - chi_min - b)/2", "<=", gb.g_max, static_cast<double>(g), gb.g_max - g, g <= gb.g_max};
  c.notes.push_back("chi = " + std::to_string(chi) + ", b = " + std::to_string(b) + ", g = " + std::to_string(g));
  c.notes.push_back("chi_min = " + std::to_string(gb.chi_min));

  Fnv1a h;
  h.add("genus_bound");
  digest_surface(h, s);
  digest_curve(h, boundary);
  h.add(Delta);
  h.add(p);
  c.inputs_digest = h.hex();
  c.seal();
  return c;
}

}  // namespace densitykit
