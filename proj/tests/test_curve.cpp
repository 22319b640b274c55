#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "densitykit/cone.hpp"
#include "densitykit/curve.hpp"
#include "densitykit/surface.hpp"

using namespace densitykit;

namespace {

PointN P(double x, double y, double z) { return PointN{x, y, z}; }

PolylineCurve regular_polygon(int k, double radius = 1.0, double z = 0.0) {
  std::vector<PointN> v;
  for (int i = 0; i < k; ++i) v.push_back(P(radius * std::cos(2 * M_PI * i / k), radius * std::sin(2 * M_PI * i / k), z));
  return PolylineCurve(v);
}

PolylineCurve unit_square() { return PolylineCurve({P(0, 0, 0), P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::invalid_parameter;
}

}  // namespace

TEST(Curve, ConstructionValidation) {
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(1, 0, 0)}); }), ErrorKind::construction);
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(0, 0, 0), P(1, 0, 0), P(0, 1, 0)}); }), ErrorKind::construction);
  // Figure eight: segments 0 and 2 cross.
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(1, 1, 0), P(1, 0, 0), P(0, 1, 0)}); }), ErrorKind::construction);
  // Fold back along a line.
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(2, 0, 0), P(1, 0, 0), P(1, 1, 0)}); }), ErrorKind::construction);
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(1, 0, 0), P(0, 1, 0)}, true, {{5, 1.0}}); }),
            ErrorKind::construction);
  EXPECT_EQ(kind_of([] { PolylineCurve({P(0, 0, 0), P(1, 0, 0), P(0, 1, 0)}, true, {{0, 4.0}}); }),
            ErrorKind::construction);
}

TEST(Curve, LengthAndTurning) {
  const PolylineCurve sq = unit_square();
  EXPECT_DOUBLE_EQ(sq.length(), 4.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sq.turning_angle(i), M_PI / 2, 1e-15);
  EXPECT_EQ(sq.segment_count(), 4);
  const PolylineCurve open({P(0, 0, 0), P(1, 0, 0), P(1, 1, 0)}, false);
  EXPECT_EQ(open.segment_count(), 2);
}

TEST(TotalCurvature, PlanarConvexPolygonsAre2Pi) {
  for (int k : {3, 4, 7, 64}) EXPECT_NEAR(total_curvature(regular_polygon(k)), 2 * M_PI, 1e-12) << k;
}

TEST(TotalCurvature, SaddleQuadrilateral) {
  // Alternating heights: consecutive edges (-1, 1, -2), (-1, -1, 2) have cosine -2/3.
  const PolylineCurve q({P(1, 0, 1), P(0, 1, -1), P(-1, 0, 1), P(0, -1, -1)});
  const double cos_turn = -2.0 / 3.0;
  EXPECT_NEAR(total_curvature(q), 4 * std::acos(cos_turn), 1e-12);
  EXPECT_GT(total_curvature(q), 2 * M_PI);
}

TEST(TotalCurvatureProperty, FenchelOnRandomClosedCurves) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  int tested = 0;
  while (tested < 100) {
    std::vector<PointN> v;
    const int k = 3 + static_cast<int>(rng() % 20);
    for (int i = 0; i < k; ++i) v.push_back(P(u(rng), u(rng), u(rng)));
    try {
      const PolylineCurve c(v);
      EXPECT_GE(total_curvature(c), 2 * M_PI - 1e-12);
      ++tested;
    } catch (const Error&) {
    }
  }
}

TEST(RadialProjection, FromCentreOfPlanarPolygon) {
  const PolylineCurve c = regular_polygon(17);
  EXPECT_NEAR(radial_projection_length(c, P(0, 0, 0)), 2 * M_PI, 1e-12);
  EXPECT_NEAR(cone_density(c, P(0, 0, 0)), 1.0, 1e-12);
}

TEST(RadialProjection, FromAxisApproachesSmallCircle) {
  // The projection of the unit circle from (0, 0, h) is a circle of radius 1/sqrt(1 + h^2).
  const double h = 0.75;
  const PolylineCurve c = regular_polygon(4000);
  EXPECT_NEAR(radial_projection_length(c, P(0, 0, h)), 2 * M_PI / std::sqrt(1 + h * h), 1e-5);
}

TEST(RadialProjection, OutsidePlanarCurveWindsTwice) {
  // From a point in the plane outside a convex curve the projection sweeps
  // the visible arc forward and back: twice the visual angle.
  const PolylineCurve sq = unit_square();
  const PointN x0 = P(3, 0.5, 0);
  const double visual = std::atan2(0.5, 2.0) * 2;  // angle subtended by the near edge x = 1
  EXPECT_NEAR(radial_projection_length(sq, x0), 2 * visual, 1e-12);
}

TEST(RadialProjection, BoundaryVertexDropsIncidentSegments) {
  const ProjectionResult r = radial_projection(unit_square(), P(0, 0, 0));
  EXPECT_TRUE(r.boundary_mode);
  EXPECT_EQ(r.vertex, 0);
  EXPECT_NEAR(r.length, M_PI / 2, 1e-12);
}

TEST(RadialProjection, CentreOnSegmentIsSingular) {
  EXPECT_EQ(kind_of([] { (void)radial_projection(unit_square(), P(0.5, 0, 0)); }), ErrorKind::projection_singular);
  EXPECT_EQ(kind_of([] { (void)radial_projection(unit_square(), PointN{0.5, 0.5, 0.0, 0.0}); }),
            ErrorKind::invalid_parameter);
}

TEST(ProjectionBound, ConvexPlanarCornerIsEquality) {
  const BoundReport r = projection_bound_report(unit_square(), P(0, 0, 0));
  EXPECT_TRUE(r.boundary_mode);
  EXPECT_NEAR(r.theta, M_PI / 2, 1e-15);
  EXPECT_NEAR(r.bound, M_PI / 2, 1e-12);
  EXPECT_NEAR(r.slack, 0.0, 1e-12);
  EXPECT_FALSE(r.violation);
}

TEST(ProjectionBound, InteriorPoints) {
  const PolylineCurve c({P(1, 0, 1), P(0, 1, -1), P(-1, 0, 1), P(0, -1, -1)});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const BoundReport r = projection_bound_report(c, P(u(rng), u(rng), u(rng)));
    EXPECT_FALSE(r.boundary_mode);
    EXPECT_FALSE(r.violation) << r.slack;
    EXPECT_NEAR(r.bound, total_curvature(c), 0.0);
  }
}

TEST(SegmentDistance, Cases) {
  EXPECT_NEAR(segment_segment_distance(P(0, 0, 0), P(1, 0, 0), P(0, 1, 1), P(1, 1, 1)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(segment_segment_distance(P(0, 0, 0), P(1, 0, 0), P(0.5, -1, 0), P(0.5, 1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(segment_segment_distance(P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(3, 0, 0)), 1.0, 1e-15);
}

TEST(Cone, UnitConeAreaIsPolygonArea) {
  const int k = 12;
  const PolylineCurve c = regular_polygon(k);
  const ConeSurface cone = build_cone(c, P(0, 0, 0), ConeKind::unit);
  const double poly = 0.5 * k * std::sin(2 * M_PI / k);
  EXPECT_NEAR(cone.mesh->total_area(), poly, 1e-12);
  EXPECT_EQ(cone.t_min, 0.0);
  EXPECT_EQ(cone.t_max, 1.0);
}

TEST(Cone, ExteriorConeAreaScalesQuadratically) {
  const PolylineCurve c({P(1, 0, 1), P(0, 1, -1), P(-1, 0, 1), P(0, -1, -1)});
  const PointN x0 = P(0.1, 0.2, 0.3);
  const double unit = build_cone(c, x0, ConeKind::unit).mesh->total_area();
  const double R = 3.0;
  const ConeSurface e = build_cone(c, x0, ConeKind::exterior, R);
  EXPECT_NEAR(e.mesh->total_area(), (R * R - 1) * unit, 1e-10 * R * R);
  EXPECT_THROW(build_cone(c, x0, ConeKind::exterior, 1.0), Error);
}

TEST(Cone, AreaRatioIsConstantInsideInscribedRadius) {
  // Area in B(r) about the apex of the unit cone over a planar regular
  // polygon equals pi r^2 while r stays below the apothem.
  const int k = 10;
  const ConeSurface cone = build_cone(regular_polygon(k), P(0, 0, 0), ConeKind::unit);
  for (double r : {0.1, 0.5, std::cos(M_PI / k) * 0.999})
    EXPECT_NEAR(area_in_ball(*cone.mesh, P(0, 0, 0), r, 1e-7) / (r * r), M_PI, 2e-6) << r;
}

TEST(Cone, ApexOnBaseVertexDropsSegments) {
  const ConeSurface cone = build_cone(unit_square(), P(0, 0, 0), ConeKind::unit);
  // Remaining two segments span the triangle (0,0),(1,0),(1,1) and (0,0),(1,1),(0,1).
  EXPECT_NEAR(cone.mesh->total_area(), 1.0, 1e-12);
  EXPECT_EQ(kind_of([] { (void)build_cone(unit_square(), P(0.5, 0, 0), ConeKind::unit); }),
            ErrorKind::projection_singular);
}
