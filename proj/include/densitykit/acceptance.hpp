#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "densitykit/catalog.hpp"
#include "densitykit/certificates.hpp"

namespace densitykit::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::map<std::string, double> values;
  double seconds = 0.0;
};

// ---------------------------------------------------------------------------
// Random polygons

/// Seeded simple closed polygon in R^3 with 3..max_k vertices: either a
/// star-shaped loop around the z axis with height noise, or a random spatial
/// polygon (simple with probability one, re-drawn otherwise).
inline PolylineCurve random_polygon(std::mt19937_64& rng, int max_k = 40) {
  std::uniform_int_distribution<int> kdist(3, max_k);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    const int k = kdist(rng);
    std::vector<PointN> pts;
    if (u01(rng) < 0.6) {
      std::vector<double> ang(k);
      for (double& a : ang) a = kTwoPi * u01(rng);
      std::sort(ang.begin(), ang.end());
      const double zamp = u01(rng);
      for (double a : ang) {
        const double rad = 0.2 + 0.8 * u01(rng);
        pts.push_back({rad * std::cos(a), rad * std::sin(a), zamp * (2.0 * u01(rng) - 1.0)});
      }
    } else {
      for (int i = 0; i < k; ++i) pts.push_back({2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0});
    }
    try {
      return PolylineCurve(std::move(pts));
    } catch (const Error&) {
      // not simple or repeated vertex; draw again
    }
  }
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Unit circle sampled by k vertices in the plane z = 0.
inline PolylineCurve unit_circle(int k) {
  std::vector<PointN> pts;
  for (int i = 0; i < k; ++i) pts.push_back({std::cos(kTwoPi * i / k), std::sin(kTwoPi * i / k), 0.0});
  return PolylineCurve(std::move(pts));
}

inline int corner_at(const PolylineCurve& c, const PointN& x) {
  for (const auto& f : c.corners())
    if (distance(c.vertex(f.index), x) <= 1e-12 * c.diameter()) return f.index;
  fail(ErrorKind::invalid_parameter, "no corner flagged at the requested point");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Criteria

/// Unit cone over the unit circle: m(r) constant across r.
inline CriterionResult cone_ratio_constancy() {
  CriterionResult r{1, "cone-ratio constancy"};
  const PolylineCurve circle = detail::unit_circle(128);
  const PointN apex{0.0, 0.0, 0.0};
  const ConeSurface cone = build_cone(circle, apex, ConeKind::unit);
  const MonotonicityProfile prof = m_profile(*cone.mesh, circle, apex, {0.1, 0.5, 1.0, 2.0});
  const auto [lo, hi] = std::minmax_element(prof.m_values.begin(), prof.m_values.end());
  const double spread = (*hi - *lo) / *lo;
  r.values = {{"m_min", *lo}, {"m_max", *hi}, {"relative_spread", spread}};
  r.pass = spread < 1e-3;
  r.detail = "m in [" + detail::fmt(*lo) + ", " + detail::fmt(*hi) + "], spread " + detail::fmt(spread);
  return r;
}

/// Projection length <= TC for random polygons and exterior points.
inline CriterionResult projection_bound(int polygons = 1000, int points = 10, std::uint64_t seed = 20240601) {
  CriterionResult r{2, "projection bound"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  int violations = 0, cases = 0;
  double worst = kInfinity;
  for (int i = 0; i < polygons; ++i) {
    const PolylineCurve c = random_polygon(rng);
    for (int j = 0; j < points;) {
      const PointN x0{box(rng), box(rng), box(rng)};
      bool near = false;
      for (int s = 0; s < c.segment_count() && !near; ++s) {
        const auto [a, b] = c.segment(s);
        near = point_segment_distance(x0, a, b) <= 1e-6;
      }
      if (near) continue;
      const BoundReport rep = projection_bound_report(c, x0);
      worst = std::min(worst, rep.slack);
      violations += rep.slack < -1e-9;
      ++cases;
      ++j;
    }
  }
  r.values = {{"cases", double(cases)}, {"violations", double(violations)}, {"min_slack", worst}};
  r.pass = violations == 0 && cases == polygons * points;
  r.detail = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations, min slack " + detail::fmt(worst);
  return r;
}

/// Projection from a curve vertex <= TC - pi - theta.
inline CriterionResult boundary_projection_bound(int polygons = 200, std::uint64_t seed = 20240602) {
  CriterionResult r{3, "boundary projection bound"};
  std::mt19937_64 rng(seed);
  int violations = 0, cases = 0;
  double worst = kInfinity;
  for (int i = 0; i < polygons; ++i) {
    const PolylineCurve c = random_polygon(rng);
    for (int v = 0; v < c.size(); ++v) {
      const BoundReport rep = projection_bound_report(c, c.vertex(v));
      if (!rep.boundary_mode) continue;
      worst = std::min(worst, rep.slack);
      violations += rep.slack < -1e-9;
      ++cases;
    }
  }
  r.values = {{"cases", double(cases)}, {"violations", double(violations)}, {"min_slack", worst}};
  r.pass = violations == 0 && cases > 0;
  r.detail = std::to_string(cases) + " vertex cases, " + std::to_string(violations) + " violations, min slack " +
             detail::fmt(worst);
  return r;
}

/// Integrated monotonicity identity: flat disk closed form, hemisphere
/// refinement.
inline CriterionResult monotonicity_identity() {
  CriterionResult r{4, "integrated monotonicity identity"};
  const Scene disk = make_scene("flat_disk");
  const double flat = identity_defect(*disk.surface, disk.x0, 0.5, 2.0);
  double hemi[2];
  int idx = 0;
  for (int res : {64, 128}) {
    const Scene h = make_scene("hemisphere", {}, res);
    const PointN pole = h.surface->patch()->position(0.0, 0.0);
    hemi[idx++] = identity_defect(*h.surface, pole, 0.3, 0.8);
  }
  const double factor = std::abs(hemi[0]) / std::abs(hemi[1]);
  r.values = {{"flat_defect", flat}, {"hemisphere_defect_64", hemi[0]}, {"hemisphere_defect_128", hemi[1]},
              {"refinement_factor", factor}};
  r.pass = std::abs(flat) < 1e-3 && factor >= 1.8 && std::abs(hemi[1]) < 1e-2;
  r.detail = "flat defect " + detail::fmt(flat) + ", hemisphere " + detail::fmt(hemi[0]) + " -> " + detail::fmt(hemi[1]) +
             " (factor " + detail::fmt(factor) + ")";
  return r;
}

/// Weighted monotonicity on the minimal and small-H carriers.
inline CriterionResult weighted_monotonicity() {
  CriterionResult r{5, "weighted monotonicity"};
  const std::vector<std::pair<std::string, Params>> scenes = {
      {"flat_disk", {}}, {"catenoid", {}}, {"graph_disk", {{"seed", 1}}}, {"graph_disk", {{"seed", 2}}},
      {"graph_disk", {{"seed", 3}}}, {"cap", {}}};
  bool ok = true;
  for (const auto& [name, params] : scenes) {
    const Scene sc = make_scene(name, params);
    const PropertyPConstants k = property_p_constants(*sc.surface, kInfinity);
    const MonotonicityProfile prof = m_profile(*sc.surface, sc.boundary, sc.x0, default_radii(*sc.surface, sc.x0), k);
    const WeightedMonotonicityReport w = check_weighted_monotonicity(prof);
    std::string label = name;
    if (params.count("seed")) label += std::to_string(static_cast<int>(params.at("seed")));
    r.values[label + ".min_defect"] = w.min_defect;
    r.values[label + ".tol"] = w.tol;
    ok = ok && w.ok();
    r.detail += label + ": min " + detail::fmt(w.min_defect) + " tol " + detail::fmt(w.tol) + "; ";
  }
  r.pass = ok;
  return r;
}

/// Large-radius lower bound at r/r0 in {1.5, 2, 4}.
inline CriterionResult large_radius_bound() {
  CriterionResult r{6, "large-radius bound"};
  bool ok = true;
  for (const std::string name : {"cap", "catenoid"}) {
    const Scene sc = make_scene(name);
    const PropertyPConstants k = property_p_constants(*sc.surface, kInfinity);
    const MonotonicityProfile prof =
        m_profile(*sc.surface, sc.boundary, sc.x0, {1.5 * k.r0, 2.0 * k.r0, 4.0 * k.r0}, k);
    const SlackReport s = check_large_radius_bound(prof);
    const double tol = prof.tol_disc();
    bool here = true;
    for (const auto& row : s.rows) here = here && row.slack >= -tol;
    ok = ok && here;
    r.values[name + ".min_slack"] = s.min_slack;
    r.values[name + ".tol"] = tol;
    r.detail += name + ": min slack " + detail::fmt(s.min_slack) + " tol " + detail::fmt(tol) + "; ";
  }
  r.pass = ok;
  return r;
}

/// Property (P) chain on the shallow cap for p in {4, 8, inf}.
inline CriterionResult property_p_chain() {
  CriterionResult r{7, "property (P) chain"};
  const Scene sc = make_scene("cap");
  const std::vector<double> radii = default_radii(*sc.surface, sc.x0);
  bool ok = true;
  for (double p : {4.0, 8.0, kInfinity}) {
    const PropertyPConstants k = property_p_constants(*sc.surface, p);
    const MonotonicityProfile prof = m_profile(*sc.surface, sc.boundary, sc.x0, radii, k);
    const SlackReport s = check_property_p(*sc.surface, k, prof);
    const std::string tag = std::isinf(p) ? "inf" : detail::fmt(p);
    r.values["p" + tag + ".margin"] = k.smallness_margin;
    r.values["p" + tag + ".min_slack"] = s.min_slack;
    r.values["p" + tag + ".lambda"] = k.lambda;
    ok = ok && k.smallness_ok && k.smallness_margin > 0.0 && s.ok();
    r.detail += "p=" + tag + ": margin " + detail::fmt(k.smallness_margin) + " min slack " + detail::fmt(s.min_slack) +
                " violations " + std::to_string(s.violations) + "; ";
  }
  r.pass = ok;
  return r;
}

/// Density estimate: shallow cap slack and flat-disk equality.
inline CriterionResult density_estimate() {
  CriterionResult r{8, "density estimate"};
  const Scene cap = make_scene("cap");
  const Certificate c = density_estimate_certificate(*cap.surface, cap.boundary, cap.x0, kInfinity);
  const Scene disk = make_scene("flat_disk");
  const Certificate d = density_estimate_certificate(*disk.surface, disk.boundary, disk.x0, kInfinity);
  r.values = {{"cap.slack", c.conclusion.slack}, {"cap.cone_density", c.conclusion.measured},
              {"cap.bound", c.conclusion.bound}, {"disk.slack", d.conclusion.slack}};
  r.pass = c.verdict() == Verdict::certified && std::abs(c.conclusion.slack - 0.46) <= 0.02 &&
           d.verdict() == Verdict::certified && std::abs(d.conclusion.slack) <= 1e-3;
  r.detail = "cap slack " + detail::fmt(c.conclusion.slack) + " (" + std::string(to_string(c.verdict())) +
             "), disk slack " + detail::fmt(d.conclusion.slack) + " (" + std::string(to_string(d.verdict())) + ")";
  return r;
}

/// delta(epsilon) against plain bisection on the reduced inequalities.
inline CriterionResult delta_solver() {
  CriterionResult r{9, "delta solver"};
  const auto bisect = [](auto g) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return lo;
  };
  const double oi = bisect([](double d) { return std::exp(d) + d - 2.0; });
  const double op = bisect([](double d) { return std::exp(d) - 2.0 * (1.0 - d); });
  const double ob = bisect([](double d) { return std::exp(d) - 3.0 + 1.5 * d; });
  const double di = delta_for_epsilon(2.0, 1.0, DeltaMode::interior).delta;
  const double dp = delta_for_epsilon(2.0, 1.0, DeltaMode::class_P).delta;
  const double db = delta_for_epsilon(2.0, 1.0, DeltaMode::boundary).delta;
  r.values = {{"interior", di}, {"class_P", dp}, {"boundary", db},
              {"oracle_interior", oi}, {"oracle_class_P", op}, {"oracle_boundary", ob}};
  r.pass = std::abs(di - 0.4425) <= 5e-4 && std::abs(dp - 0.3149) <= 5e-4 && std::abs(di - oi) <= 1e-8 &&
           std::abs(dp - op) <= 1e-8 && std::abs(db - ob) <= 1e-8;
  r.detail = "interior " + detail::fmt(di) + " (oracle " + detail::fmt(oi) + "), class_P " + detail::fmt(dp) +
             " (oracle " + detail::fmt(op) + "), boundary " + detail::fmt(db);
  return r;
}

/// Certified catalog surfaces pass the exhaustive triangle sweep; the
/// branched disk is not certified and shows density 2 at the branch point.
inline CriterionResult embeddedness_cross_validation() {
  CriterionResult r{10, "embeddedness cross-validation"};
  EmbeddednessOptions opt;
  opt.sweep = false;
  bool ok = true;
  int certified = 0;
  for (const auto& name : catalog_names()) {
    const Scene sc = make_scene(name);
    const Certificate c = embeddedness_certificate(*sc.surface, sc.boundary, kInfinity, EmbeddedWhich::full, opt);
    if (c.verdict() != Verdict::certified) {
      r.detail += name + ": " + std::string(to_string(c.verdict())) + "; ";
      continue;
    }
    ++certified;
    const SweepResult sw = intersection_sweep(*sc.surface);
    ok = ok && sw.clean();
    r.detail += name + ": certified, sweep " + std::to_string(sw.intersections) + "; ";
  }
  const Scene br = make_scene("branched_disk", {{"m", 2}});
  const Certificate c = embeddedness_certificate(*br.surface, br.boundary, kInfinity, EmbeddedWhich::full, opt);
  const double dens = density(*br.surface, br.x0, DensityMode::extrapolated).value;
  r.values = {{"certified_surfaces", double(certified)}, {"branched_density", dens}};
  ok = ok && certified > 0 && c.verdict() != Verdict::certified && std::abs(dens - 2.0) <= 0.02 &&
       c.conclusion.measured >= 2.0 - kThresholdMargin;
  r.detail += "branch point density " + detail::fmt(dens);
  r.pass = ok;
  return r;
}

/// Corner density of the quarter sector at its apex.
inline CriterionResult corner_density() {
  CriterionResult r{11, "corner density"};
  const Scene sc = make_scene("flat_sector", {{"angle", kPi / 2}});
  const int idx = detail::corner_at(sc.boundary, sc.x0);
  const Certificate c = corner_density_certificate(*sc.surface, sc.boundary, idx);
  r.values = {{"measured", c.conclusion.measured}, {"theta", *sc.boundary.corner_theta(idx)}};
  r.pass = std::abs(c.conclusion.measured - 0.25) <= 0.02 && c.verdict() == Verdict::certified;
  r.detail = "measured " + detail::fmt(c.conclusion.measured) + " (" + std::string(to_string(c.verdict())) + ")";
  return r;
}

/// Genus of the punctured torus and the genus bound.
inline CriterionResult genus() {
  CriterionResult r{12, "genus"};
  const Scene torus = make_scene("torus_minus_disk");
  const int g = torus.surface->genus();
  const GenusBound gb = genus_bound(kTwoPi, 1.0, 1);
  const Scene disk = make_scene("flat_disk");
  const Certificate c = genus_certificate(*disk.surface, disk.boundary, 1.0);
  r.values = {{"torus_genus", double(g)}, {"bound", gb.g_max}, {"disk_genus", c.conclusion.measured},
              {"disk_bound", c.conclusion.bound}};
  r.pass = g == 1 && std::abs(gb.g_max - 1.75) <= 1e-12 && std::floor(gb.g_max) == 1.0 &&
           c.verdict() == Verdict::certified && c.conclusion.measured == 0.0;
  r.detail = "torus g = " + std::to_string(g) + ", bound " + detail::fmt(gb.g_max) + ", disk g = " +
             detail::fmt(c.conclusion.measured) + " (" + std::string(to_string(c.verdict())) + ")";
  return r;
}

/// Homotheties by 0.1 and 10 leave verdicts and dimensionless numbers fixed.
inline CriterionResult scale_invariance() {
  CriterionResult r{13, "scale invariance"};
  EmbeddednessOptions opt;
  opt.interior_samples = 6;
  opt.boundary_samples = 6;
  struct Snapshot {
    std::vector<std::string> verdicts;
    std::vector<double> numbers;
  };
  const auto snapshot = [&](const Scene& sc, bool corners) {
    Snapshot s;
    const Certificate e = embeddedness_certificate(*sc.surface, sc.boundary, kInfinity, EmbeddedWhich::full, opt);
    s.verdicts.emplace_back(to_string(e.verdict()));
    s.numbers.push_back(e.conclusion.measured);
    const Certificate d = density_estimate_certificate(*sc.surface, sc.boundary, sc.x0, kInfinity);
    s.verdicts.emplace_back(to_string(d.verdict()));
    s.numbers.push_back(d.conclusion.measured);
    for (double p : {4.0, kInfinity}) s.numbers.push_back(property_p_constants(*sc.surface, p).scaled_lambda());
    s.numbers.push_back(total_curvature(sc.boundary));
    s.numbers.push_back(density(*sc.surface, sc.x0, DensityMode::extrapolated).value);
    s.numbers.push_back(sc.surface->genus());
    if (sc.surface->has_source()) {
      const Certificate g = genus_certificate(*sc.surface, sc.boundary, 1.0);
      s.verdicts.emplace_back(to_string(g.verdict()));
      s.numbers.push_back(g.conclusion.bound);
    }
    if (corners)
      for (const auto& f : sc.boundary.corners()) {
        const Certificate c = corner_density_certificate(*sc.surface, sc.boundary, f.index);
        s.verdicts.emplace_back(to_string(c.verdict()));
        s.numbers.push_back(c.conclusion.measured);
      }
    return s;
  };
  bool ok = true;
  double worst = 0.0;
  for (const std::string name : {"flat_disk", "cap", "hemisphere", "branched_disk", "flat_sector"}) {
    const Scene base = make_scene(name, {}, 32);
    const Snapshot ref = snapshot(base, name == "flat_sector");
    for (double lambda : {0.1, 10.0}) {
      const Snapshot s = snapshot(scaled(base, lambda), name == "flat_sector");
      ok = ok && s.verdicts == ref.verdicts;
      for (size_t i = 0; i < s.numbers.size(); ++i) {
        const double a = s.numbers[i], b = ref.numbers[i];
        const double dev = std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3});
        worst = std::max(worst, dev);
        ok = ok && std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-12;
      }
    }
  }
  r.values = {{"max_relative_deviation", worst}};
  r.pass = ok;
  r.detail = "max relative deviation " + detail::fmt(worst);
  return r;
}

inline const std::vector<std::function<CriterionResult()>>& criteria() {
  static const std::vector<std::function<CriterionResult()>> all = {
      cone_ratio_constancy, [] { return projection_bound(); }, [] { return boundary_projection_bound(); },
      monotonicity_identity, weighted_monotonicity, large_radius_bound, property_p_chain, density_estimate,
      delta_solver, embeddedness_cross_validation, corner_density, genus, scale_invariance};
  return all;
}

/// Runs one criterion, turning exceptions into a failing result.
inline CriterionResult run(int id) {
  require(id >= 1 && id <= static_cast<int>(criteria().size()), ErrorKind::invalid_parameter,
          "criterion id out of range");
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = criteria()[id - 1]();
  } catch (const std::exception& e) {
    r.id = id;
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string line(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace densitykit::acceptance
