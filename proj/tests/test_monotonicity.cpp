#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "densitykit/catalog.hpp"
#include "densitykit/monotonicity.hpp"

using namespace densitykit;

namespace {

PointN P(double x, double y, double z) { return PointN{x, y, z}; }

MonotonicityProfile synthetic(std::vector<double> radii, std::vector<double> m, double r0, double m_r0) {
  MonotonicityProfile p;
  p.x0 = P(0, 0, 0);
  p.radii = std::move(radii);
  p.m_values = std::move(m);
  p.alpha = 1.0;
  p.lambda = 0.0;
  p.r0 = r0;
  p.m_r0 = m_r0;
  p.clip_tol = 1e-6;
  return p;
}

}  // namespace

TEST(PropertyP, HolderConstant) {
  EXPECT_NEAR(holder_constant(4.0), 4.0 * std::pow(2.0 / M_PI, 0.25), 1e-15);
  EXPECT_NEAR(holder_constant(10.0), 2.5 * std::pow(2.0 / M_PI, 0.1), 1e-15);
  EXPECT_EQ(holder_constant(kInfinity), 1.0);
  EXPECT_THROW(holder_constant(2.0), Error);
  EXPECT_THROW(holder_constant(1.5), Error);
}

TEST(PropertyP, ConstantsFromNorm) {
  const PropertyPConstants k = property_p_from_norm(0.3, 2.0, 6.0);
  EXPECT_NEAR(k.alpha, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(k.lambda, 3.0 * std::pow(2.0 / M_PI, 1.0 / 6.0) * 0.3, 1e-15);
  EXPECT_NEAR(k.smallness_lhs, 0.3 * std::pow(2.0, 2.0 / 3.0), 1e-15);
  EXPECT_NEAR(k.smallness_rhs, 2.0 * std::pow(M_PI / 2, 1.0 / 6.0), 1e-15);
  EXPECT_TRUE(k.smallness_ok);
  EXPECT_NEAR(k.scaled_lambda(), k.lambda * std::pow(2.0, k.alpha), 1e-15);
  const PropertyPConstants big = property_p_from_norm(50.0, 2.0, 6.0);
  EXPECT_FALSE(big.smallness_ok);
  EXPECT_LT(big.smallness_margin, 0.0);
  const PropertyPConstants inf = property_p_from_norm(0.3, 2.0, kInfinity);
  EXPECT_EQ(inf.alpha, 1.0);
  EXPECT_EQ(inf.lambda, 0.3);
}

TEST(PropertyP, SurfaceConstantsForCap) {
  const Scene sc = make_scene("cap", {}, 16);
  const PropertyPConstants k = property_p_constants(*sc.surface, kInfinity);
  EXPECT_NEAR(k.lambda, 0.2, 1e-10);
  EXPECT_EQ(k.provenance, "analytic");
  const PropertyPConstants k4 = property_p_constants(*sc.surface, 4.0);
  // ||H||_4 of a constant field over the lumped area.
  EXPECT_NEAR(k4.h_norm, 0.2 * std::pow(sc.surface->total_area(), 0.25), 1e-10);
  EXPECT_THROW(property_p_constants(*sc.surface, 2.0), Error);
}

TEST(Profile, FlatDiskFromCentreIsConstantPi) {
  // Disk plus its exterior cone from the centre is the whole plane near x0.
  const Scene sc = make_scene("flat_disk", {}, 16);
  const MonotonicityProfile prof = m_profile(*sc.surface, sc.boundary, P(0, 0, 0), {0.3, 0.8, 1.5, 3.0});
  ASSERT_EQ(prof.m_values.size(), 4u);
  for (double m : prof.m_values) EXPECT_NEAR(m, M_PI, 1e-4);
  EXPECT_NEAR(prof.m_r0, M_PI, 1e-4);
  EXPECT_FALSE(prof.x0_on_boundary);
  EXPECT_TRUE(check_weighted_monotonicity(prof).ok());
}

TEST(Profile, RadiiAreSortedAndValidated) {
  const Scene sc = make_scene("flat_disk", {}, 8);
  const MonotonicityProfile prof = m_profile(*sc.surface, sc.boundary, P(0, 0, 0), {0.8, 0.2, 0.5});
  EXPECT_EQ(prof.radii, (std::vector<double>{0.2, 0.5, 0.8}));
  EXPECT_THROW(m_profile(*sc.surface, sc.boundary, P(0, 0, 0), {}), Error);
  EXPECT_THROW(m_profile(*sc.surface, sc.boundary, P(0, 0, 0), {0.5, 0.5}), Error);
  EXPECT_THROW(m_profile(*sc.surface, sc.boundary, P(0, 0, 0), {-1.0}), Error);
}

TEST(Profile, BoundaryMustMatchSurface) {
  const Scene sc = make_scene("flat_disk", {}, 8);
  std::vector<PointN> rev(sc.boundary.vertices().rbegin(), sc.boundary.vertices().rend());
  EXPECT_TRUE(boundary_matches(*sc.surface, PolylineCurve(rev)));
  std::vector<PointN> moved = sc.boundary.vertices();
  moved[1][2] += 1e-3;
  try {
    (void)m_profile(*sc.surface, PolylineCurve(moved), P(0, 0, 0), {0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input_inconsistent);
  }
}

TEST(Profile, DefaultRadii) {
  const Scene sc = make_scene("cap", {}, 16);
  const auto r = default_radii(*sc.surface, sc.x0);
  ASSERT_GE(r.size(), 3u);
  for (size_t i = 1; i < r.size(); ++i) EXPECT_NEAR(r[i] / r[i - 1], std::sqrt(2.0), 1e-12);
  EXPECT_LE(r.back(), 4.0 * extrinsic_diameter(*sc.surface) * (1 + 1e-12));
  EXPECT_GT(r.back() * std::sqrt(2.0), 4.0 * extrinsic_diameter(*sc.surface));
}

TEST(WeightedMonotonicity, DetectsDecrease) {
  const MonotonicityProfile p = synthetic({1, 2, 3}, {3, 2, 1}, 1, 3);
  const WeightedMonotonicityReport rep = check_weighted_monotonicity(p);
  EXPECT_EQ(rep.violations, 3);
  EXPECT_DOUBLE_EQ(rep.min_defect, -2.0);
  EXPECT_EQ(rep.pairs.size(), 3u);
  EXPECT_NEAR(rep.tol, 3e-6 * 9.0, 1e-18);
  EXPECT_FALSE(rep.ok());
}

TEST(WeightedMonotonicity, ExponentialWeightRescues) {
  // m decreasing slowly, but e^{Lambda r} m(r) increasing.
  MonotonicityProfile p = synthetic({1, 2, 3}, {3.0, 3.0 * std::exp(-0.5), 3.0 * std::exp(-1.0)}, 1, 3);
  p.lambda = 0.6;
  const WeightedMonotonicityReport rep = check_weighted_monotonicity(p);
  EXPECT_TRUE(rep.ok());
  EXPECT_NEAR(rep.pairs[0].defect, 3.0 * (std::exp(1.2 - 0.5) - std::exp(0.6)), 1e-12);
}

TEST(LargeRadius, MinimalBoundIsMonotone) {
  const MonotonicityProfile ok = synthetic({0.5, 1, 2, 3}, {1, 3, 3.1, 3.2}, 1, 3);
  const SlackReport rep = check_large_radius_bound(ok);
  EXPECT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.ok());
  EXPECT_NEAR(rep.min_slack, 0.0, 1e-15);
  const MonotonicityProfile bad = synthetic({1, 2}, {3, 2.5}, 1, 3);
  EXPECT_FALSE(check_large_radius_bound(bad).ok());
  EXPECT_THROW(check_large_radius_bound(synthetic({0.2}, {3}, 1, 3)), Error);
}

TEST(LargeRadius, CurvedBoundFormula) {
  MonotonicityProfile p = synthetic({2}, {2.9}, 1, 3);
  p.lambda = 0.4;
  const SlackReport rep = check_large_radius_bound(p);
  const double bound = 3.0 * (1 - 0.2 * (1 - 0.25));
  EXPECT_NEAR(rep.rows[0].rhs, bound, 1e-15);
  EXPECT_NEAR(rep.rows[0].slack, 2.9 - bound, 1e-15);
}

TEST(PropertyPIntegral, CapMatchesArchimedes) {
  // |H| = 2/R on a sphere and the cap within chord r of the pole has area pi r^2.
  const Scene sc = make_scene("cap", {}, 32);
  const PropertyPConstants k = property_p_constants(*sc.surface, kInfinity);
  const SlackReport rep = check_property_p(*sc.surface, sc.boundary, k, P(0, 0, 10), {0.2, 0.5, 0.9});
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.lhs / (0.2 * M_PI * row.r * row.r), 1.0, 1e-4) << row.r;
    EXPECT_TRUE(row.ok) << row.slack;
  }
}

TEST(Identity, SphereTermsInClosedForm) {
  // On a sphere of radius R about a point of it: A(r) = pi r^2, the normal
  // term is pi (r^2 - s^2) / 4R^2 and the curvature term its negative.
  const Scene sc = make_scene("cap", {}, 32);
  const double R = 10, s = 0.2, r = 0.8;
  const IdentityTerms t = identity_terms(*sc.surface, P(0, 0, R), s, r);
  const double normal = M_PI * (r * r - s * s) / (4 * R * R);
  EXPECT_NEAR(t.lhs, 0.0, 2e-4);
  EXPECT_NEAR(t.normal, normal, 1e-4 * normal);
  EXPECT_NEAR(t.curvature, -normal, 1e-4 * normal);
  EXPECT_EQ(t.boundary, 0.0);
  EXPECT_NEAR(t.defect, 0.0, 2e-4);
}

TEST(Identity, FlatDiskBoundaryTerm) {
  // Plane: normal and curvature terms vanish, so the boundary term carries
  // the whole change of A(r)/r^2 for a ball centred off the disk edge.
  const Scene sc = make_scene("flat_disk", {}, 32);
  const PointN x0 = P(0.8, 0.0, 0.0);
  const IdentityTerms t = identity_terms(*sc.surface, x0, 0.1, 0.5);
  EXPECT_NEAR(t.normal, 0.0, 1e-12);
  EXPECT_NEAR(t.curvature, 0.0, 1e-12);
  EXPECT_LT(t.lhs, 0.0);
  EXPECT_NEAR(t.boundary, t.lhs, 2e-3 * std::abs(t.lhs));
  EXPECT_THROW(identity_terms(*sc.surface, x0, 0.5, 0.1), Error);
}
