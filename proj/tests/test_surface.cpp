#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "densitykit/catalog.hpp"
#include "densitykit/surface.hpp"

using namespace densitykit;

namespace {

PointN P(double x, double y, double z) { return PointN{x, y, z}; }

double shoelace(const PolylineCurve& c) {
  double a = 0;
  for (int i = 0; i < c.size(); ++i) a += c.vertex(i)[0] * c.vertex(i + 1)[1] - c.vertex(i + 1)[0] * c.vertex(i)[1];
  return std::abs(a) / 2;
}

// Square [0,2]^2 cut into 8 triangles around 9 grid points.
SurfaceModel grid_square() {
  std::vector<PointN> v;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) v.push_back(P(i, j, 0));
  std::vector<Face> f;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const int a = j * 3 + i;
      f.push_back({a, a + 1, a + 4});
      f.push_back({a, a + 4, a + 3});
    }
  return SurfaceModel(v, f);
}

}  // namespace

TEST(Mesh, Topology) {
  const SurfaceModel s = grid_square();
  EXPECT_EQ(s.vertex_count(), 9);
  EXPECT_EQ(s.face_count(), 8);
  EXPECT_EQ(s.edge_count(), 16);
  EXPECT_EQ(s.euler_characteristic(), 1);
  EXPECT_EQ(s.genus(), 0);
  ASSERT_EQ(s.boundary_loops().size(), 1u);
  EXPECT_EQ(s.boundary_loops()[0].size(), 8u);
  EXPECT_FALSE(s.is_boundary_vertex(4));
  EXPECT_TRUE(s.is_boundary_vertex(0));
  EXPECT_DOUBLE_EQ(s.total_area(), 4.0);
  double lumped = 0;
  for (double a : s.per_vertex_area()) lumped += a;
  EXPECT_NEAR(lumped, 4.0, 1e-14);
  EXPECT_TRUE(s.orientable());
}

TEST(Mesh, InconsistentOrientationIsRepaired) {
  std::vector<PointN> v{P(0, 0, 0), P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)};
  const SurfaceModel s(v, {{0, 1, 2}, {0, 3, 2}});
  EXPECT_TRUE(s.orientable());
  EXPECT_EQ(s.boundary_loops().size(), 1u);
}

TEST(Mesh, RejectsBrokenInput) {
  std::vector<PointN> v{P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(0, -1, 0)};
  EXPECT_THROW(SurfaceModel(v, {}), Error);
  EXPECT_THROW(SurfaceModel(v, {{0, 1, 7}}), Error);
  EXPECT_THROW(SurfaceModel(v, {{0, 1, 1}}), Error);
  // Three faces on edge 0-1.
  EXPECT_THROW(SurfaceModel(v, {{0, 1, 2}, {0, 1, 3}, {1, 0, 4}}), Error);
}

TEST(Surface, FlatDiskAreaMatchesBoundaryPolygon) {
  const Scene sc = make_scene("flat_disk", {}, 24);
  EXPECT_NEAR(sc.surface->total_area(), shoelace(sc.boundary), 1e-12);
  EXPECT_NEAR(sc.surface->total_area(), M_PI, 0.02);
  EXPECT_NEAR(extrinsic_diameter(*sc.surface), 2.0, 1e-12);
  EXPECT_EQ(sc.surface->genus(), 0);
}

TEST(Surface, AreaInBallOfFlatDisk) {
  const Scene sc = make_scene("flat_disk", {}, 16);
  for (double r : {0.05, 0.3, 0.77}) EXPECT_NEAR(area_in_ball(*sc.surface, P(0, 0, 0), r), M_PI * r * r, 1e-5) << r;
  // Off-centre ball lying inside the disk.
  EXPECT_NEAR(area_in_ball(*sc.surface, P(0.2, -0.1, 0), 0.5), M_PI * 0.25, 1e-5);
  // A ball containing everything returns the full area.
  EXPECT_NEAR(area_in_ball(*sc.surface, P(0, 0, 0), 5.0), sc.surface->total_area(), 1e-12);
  EXPECT_THROW(area_in_ball(*sc.surface, P(0, 0, 0), 0.0), Error);
}

TEST(Surface, CapAreaArchimedes) {
  // The part of a sphere within chord distance r of a point on it has area pi r^2.
  const Scene sc = make_scene("cap", {}, 32);
  const PointN pole = P(0, 0, 10);
  for (double r : {0.3, 0.6, 0.9}) EXPECT_NEAR(area_in_ball(*sc.surface, pole, r) / (M_PI * r * r), 1.0, 1e-3) << r;
}

TEST(Density, PlExactInteriorAndBoundary) {
  const Scene sc = make_scene("flat_disk", {}, 16);
  const auto& s = *sc.surface;
  EXPECT_NEAR(density_value(s, P(0, 0, 0), DensityMode::pl_exact), 1.0, 1e-12);
  const auto& loop = s.boundary_loops()[0];
  const PolylineCurve& c = sc.boundary;
  for (int i = 0; i < 4; ++i) {
    const int v = loop[i * 7 % loop.size()];
    const DensityResult d = density(s, s.vertex(v), DensityMode::pl_exact);
    EXPECT_TRUE(d.boundary_point);
    EXPECT_EQ(d.label, "flat-PL interpretation");
    int ci = -1;
    for (int k = 0; k < c.size(); ++k)
      if (distance(c.vertex(k), s.vertex(v)) == 0.0) ci = k;
    ASSERT_GE(ci, 0);
    EXPECT_NEAR(d.value, (M_PI - c.turning_angle(ci)) / (2 * M_PI), 1e-12);
  }
  EXPECT_THROW(density(s, P(0.123, 0.0456, 0), DensityMode::pl_exact), Error);
}

TEST(Density, SectorEdgeIsHalf) {
  const Scene sc = make_scene("flat_sector", {}, 16);
  const auto& s = *sc.surface;
  // Midpoint vertex of the straight edge along the positive u axis.
  int best = -1;
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.is_boundary_vertex(v) && std::abs(s.vertex(v)[1]) < 1e-12 && s.vertex(v)[0] > 0.3 && s.vertex(v)[0] < 0.7)
      best = v;
  ASSERT_GE(best, 0);
  EXPECT_NEAR(density_value(s, s.vertex(best), DensityMode::pl_exact), 0.5, 1e-12);
  // Apex of a quarter sector: total angle pi/2.
  EXPECT_NEAR(density_value(s, P(0, 0, 0), DensityMode::pl_exact), 0.25, 1e-12);
}

TEST(Density, ExtrapolatedRegularAndBranched) {
  const Scene cap = make_scene("cap", {}, 32);
  EXPECT_NEAR(density_value(*cap.surface, cap.x0, DensityMode::extrapolated), 1.0, 1e-3);
  const Scene br = make_scene("branched_disk", {}, 32);
  EXPECT_NEAR(density_value(*br.surface, br.x0, DensityMode::extrapolated), 2.0, 0.02);
  const Scene flat = make_scene("flat_disk", {}, 16);
  EXPECT_THROW(density(*flat.surface, P(0, 0, 0), DensityMode::extrapolated, 1.5), Error);
}

TEST(MeanCurvature, AnalyticSphereAndFlat) {
  const Scene cap = make_scene("cap", {}, 16);
  const MeanCurvatureField h = mean_curvature_field(*cap.surface);
  EXPECT_EQ(h.magnitude.provenance, "analytic");
  for (double x : h.magnitude.values) EXPECT_NEAR(x, 0.2, 1e-10);
  const Scene flat = make_scene("flat_disk", {}, 16);
  const MeanCurvatureField d = mean_curvature_field(*flat.surface, true);
  EXPECT_EQ(d.magnitude.provenance, "discrete");
  for (int v = 0; v < flat.surface->vertex_count(); ++v) EXPECT_NEAR(d.magnitude.values[v], 0.0, 1e-10);
}

TEST(MeanCurvature, CatenoidIsMinimal) {
  const Scene sc = make_scene("catenoid", {}, 8);
  for (double x : mean_curvature_field(*sc.surface).magnitude.values) EXPECT_NEAR(x, 0.0, 1e-10);
}

TEST(MeanCurvature, DiscreteConvergesOnHemisphere) {
  // Cotangent H against 2/R at interior vertices away from the pole, two resolutions.
  double err[2];
  int idx = 0;
  for (int res : {32, 64}) {
    const Scene sc = make_scene("hemisphere", {}, res);
    const MeanCurvatureField d = mean_curvature_field(*sc.surface, true);
    double worst = 0;
    for (int v = 0; v < sc.surface->vertex_count(); ++v) {
      const double z = sc.surface->vertex(v)[2];
      if (sc.surface->is_boundary_vertex(v) || z > 0.95 || z < 0.3) continue;
      worst = std::max(worst, std::abs(d.magnitude.values[v] - 2.0));
    }
    err[idx++] = worst;
  }
  EXPECT_LT(err[0], 0.1);
  EXPECT_LT(err[1], err[0]);
}

TEST(LpNorm, ConstantField) {
  const SurfaceModel s = grid_square();
  ScalarField f;
  f.values.assign(s.vertex_count(), 3.0);
  EXPECT_NEAR(lp_norm(f, s, 4.0), 3.0 * std::pow(4.0, 0.25), 1e-12);
  EXPECT_DOUBLE_EQ(lp_norm(f, s, kInfinity), 3.0);
  EXPECT_THROW(lp_norm(f, s, 2.0), Error);
  f.values.pop_back();
  EXPECT_THROW(lp_norm(f, s, 4.0), Error);
}

TEST(SecondForm, SphereAndFlat) {
  const Scene cap = make_scene("cap", {}, 8);
  EXPECT_NEAR(second_form_sup(*cap.surface).value, std::sqrt(2.0) / 10, 1e-10);
  const Scene flat = make_scene("flat_disk", {}, 8);
  EXPECT_NEAR(second_form_sup(*flat.surface).value, 0.0, 1e-12);
  EXPECT_THROW(second_form_sup(grid_square()), Error);
}

TEST(Catalog, EveryEntryBuilds) {
  for (const auto& name : catalog_names()) {
    const Scene sc = make_scene(name, {}, 8);
    EXPECT_EQ(sc.name, name);
    EXPECT_GT(sc.surface->total_area(), 0.0) << name;
    EXPECT_GE(sc.surface->boundary_loops().size(), 1u) << name;
    EXPECT_TRUE(sc.surface->orientable()) << name;
  }
  EXPECT_EQ(make_scene("torus_minus_disk", {}, 12).surface->genus(), 1);
}

TEST(Catalog, UnknownNameListsAlternatives) {
  try {
    make_scene("sphere");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("available: flat_disk"), std::string::npos);
  }
  EXPECT_THROW(make_scene("cap", {{"bogus", 1.0}}), Error);
  EXPECT_THROW(make_scene("cap", {}, 2), Error);
}

TEST(Catalog, ScaledSceneScalesAreas) {
  const Scene sc = make_scene("cap", {}, 8);
  const Scene big = scaled(sc, 3.0);
  EXPECT_NEAR(big.surface->total_area(), 9.0 * sc.surface->total_area(), 1e-12 * big.surface->total_area());
  EXPECT_NEAR(mean_curvature_field(*big.surface).magnitude.values[0], 0.2 / 3.0, 1e-10);
  EXPECT_NEAR(distance(big.x0, sc.x0 * 3.0), 0.0, 1e-15);
}
