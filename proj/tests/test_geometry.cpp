#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "densitykit/geometry.hpp"

using namespace densitykit;

namespace {

PointN P(double x, double y, double z) { return PointN{x, y, z}; }

// Rotation about a unit axis by angle t (Rodrigues), applied to p - o.
PointN rotate(const PointN& p, const VecN& axis, double t) {
  const VecN k = normalized(axis);
  const double c = std::cos(t), s = std::sin(t);
  const VecN kxp{k[1] * p[2] - k[2] * p[1], k[2] * p[0] - k[0] * p[2], k[0] * p[1] - k[1] * p[0]};
  return p * c + kxp * s + k * (dot(k, p) * (1 - c));
}

}  // namespace

TEST(TriangleArea, UnitRightTriangle) {
  EXPECT_DOUBLE_EQ(triangle_area(Triangle(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0))), 0.5);
}

TEST(TriangleArea, Equilateral) {
  const Triangle t(P(0, 0, 0), P(1, 0, 0), P(0.5, std::sqrt(3.0) / 2, 0));
  EXPECT_NEAR(triangle_area(t), std::sqrt(3.0) / 4, 1e-15);
}

TEST(TriangleArea, EmbeddingInR5KeepsArea) {
  const Triangle t3(P(0, 0, 0), P(1, 0, 0), P(0.5, std::sqrt(3.0) / 2, 0));
  const Triangle t5(t3.v[0].lifted(5), t3.v[1].lifted(5), t3.v[2].lifted(5));
  EXPECT_EQ(t5.dim(), 5);
  EXPECT_NEAR(triangle_area(t5), triangle_area(t3), 1e-15);
}

TEST(TriangleArea, GeneralPositionInR4MatchesGram) {
  const PointN a{0.3, -1.0, 2.0, 0.5}, b{1.1, 0.4, -0.2, 2.0}, c{-0.7, 0.9, 1.0, -1.5};
  const VecN u = b - a, v = c - a;
  const double gram = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
  EXPECT_NEAR(triangle_area(Triangle(a, b, c)), 0.5 * std::sqrt(gram), 1e-14);
}

TEST(TriangleArea, DegenerateIsZero) {
  const Triangle t(P(0, 0, 0), P(1, 0, 0), P(2, 1e-15, 0));
  EXPECT_TRUE(is_degenerate(t));
  EXPECT_EQ(triangle_area(t), 0.0);
  EXPECT_GT(raw_triangle_area(t.v[0], t.v[1], t.v[2]), 0.0);
}

TEST(Triangle, MixedDimensionsRejected) {
  EXPECT_THROW(Triangle(P(0, 0, 0), P(1, 0, 0), PointN{0.0, 1.0, 0.0, 0.0}), Error);
}

TEST(Ball, NonPositiveRadiusRejected) {
  EXPECT_THROW(Ball(P(0, 0, 0), 0.0), Error);
  EXPECT_THROW(Ball(P(0, 0, 0), -1.0), Error);
}

TEST(ClipArea, InsideAndOutside) {
  const Triangle t(P(0, 0, 0), P(0.1, 0, 0), P(0, 0.1, 0));
  EXPECT_DOUBLE_EQ(clip_area_in_ball(t, Ball(P(0, 0, 0), 1.0), 1e-6), triangle_area(t));
  EXPECT_EQ(clip_area_in_ball(t, Ball(P(5, 5, 5), 1.0), 1e-6), 0.0);
}

TEST(ClipArea, UnitSquareDisk) {
  // Square [-0.5, 0.5]^2 as two triangles, ball of radius 0.4 at its centre.
  const Triangle t1(P(-0.5, -0.5, 0), P(0.5, -0.5, 0), P(0.5, 0.5, 0));
  const Triangle t2(P(-0.5, -0.5, 0), P(0.5, 0.5, 0), P(-0.5, 0.5, 0));
  const Ball b(P(0, 0, 0), 0.4);
  const double a = clip_area_in_ball(t1, b, 1e-4) + clip_area_in_ball(t2, b, 1e-4);
  EXPECT_NEAR(a, M_PI * 0.16, 1e-4);
}

TEST(ClipArea, CircularSegmentClosedForm) {
  // Ball of radius 1 at the origin against the half-plane strip x >= 0.6 of a
  // large triangle: the clipped area is the circular segment.
  const Triangle t(P(0.6, -3, 0), P(0.6, 3, 0), P(4, 0, 0));
  const double h = 1.0 - 0.6;
  const double seg = std::acos(1 - h) - (1 - h) * std::sqrt(2 * h - h * h);
  EXPECT_NEAR(clip_area_in_ball(t, Ball(P(0, 0, 0), 1.0), 1e-7), seg, 1e-6);
}

TEST(ClipArea, RejectsBadTolerance) {
  const Triangle t(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0));
  EXPECT_THROW(clip_area_in_ball(t, Ball(P(0, 0, 0), 0.5), 0.0), Error);
  EXPECT_THROW(clip_area_in_ball(t, Ball(P(0, 0, 0), 0.5), -1e-3), Error);
}

TEST(ClipAreaProperty, BoundedMonotoneAndRigid) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double tol = 1e-5;
  for (int trial = 0; trial < 200; ++trial) {
    const Triangle t(P(u(rng), u(rng), u(rng)), P(u(rng), u(rng), u(rng)), P(u(rng), u(rng), u(rng)));
    const PointN c = P(u(rng), u(rng), u(rng));
    const double area = triangle_area(t);
    const double r1 = 0.1 + std::abs(u(rng)), r2 = r1 + 0.3 * std::abs(u(rng));
    const double a1 = clip_area_in_ball(t, Ball(c, r1), tol);
    const double a2 = clip_area_in_ball(t, Ball(c, r2), tol);
    EXPECT_GE(a1, 0.0);
    EXPECT_LE(a1, area * (1 + 1e-12));
    EXPECT_LE(a1, a2 + tol * area);

    const VecN axis = P(u(rng), u(rng), u(rng) + 2.0);
    const double ang = 3.0 * u(rng);
    const VecN shift = P(u(rng), u(rng), u(rng)) * 10.0;
    const Triangle tm(rotate(t.v[0], axis, ang) + shift, rotate(t.v[1], axis, ang) + shift,
                      rotate(t.v[2], axis, ang) + shift);
    const double am = clip_area_in_ball(tm, Ball(rotate(c, axis, ang) + shift, r1), tol);
    EXPECT_NEAR(am, a1, tol * area + 1e-12);
  }
}

TEST(ClipIntegrate, PolynomialExactOnWholeTriangle) {
  // int over the unit right triangle of x^2 = 1/12, of x y^2 = 1/60.
  const Triangle t(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0));
  const Ball b(P(0, 0, 0), 10.0);
  EXPECT_NEAR(clip_integrate(t, b, 1e-6, [](const PointN& x, const Bary&) { return x[0] * x[0]; }), 1.0 / 12, 1e-14);
  EXPECT_NEAR(clip_integrate(t, b, 1e-6, [](const PointN& x, const Bary&) { return x[0] * x[1] * x[1]; }), 1.0 / 60,
              1e-14);
}

TEST(ClipIntegrate, RadialMomentOfDisk) {
  // int_{B(0.4)} |x|^2 dA = pi r^4 / 2 over a square containing the disk.
  const Triangle t1(P(-0.5, -0.5, 0), P(0.5, -0.5, 0), P(0.5, 0.5, 0));
  const Triangle t2(P(-0.5, -0.5, 0), P(0.5, 0.5, 0), P(-0.5, 0.5, 0));
  const Ball b(P(0, 0, 0), 0.4);
  const auto f = [](const PointN& x, const Bary&) { return norm2(x); };
  const double v = clip_integrate(t1, b, 1e-6, f) + clip_integrate(t2, b, 1e-6, f);
  EXPECT_NEAR(v, M_PI * std::pow(0.4, 4) / 2, 1e-5);
}

TEST(ClipIntegrate, BarycentricCoordinatesTrackSource) {
  // f = barycentric weight of vertex 0: its integral is area/3 over the whole
  // triangle, however the clipping subdivides.
  const Triangle t(P(0, 0, 0), P(2, 0, 0), P(0, 1, 0));
  const auto f = [](const PointN&, const Bary& b) { return b[0]; };
  EXPECT_NEAR(clip_integrate(t, Ball(P(0, 0, 0), 100.0), 1e-6, f), 1.0 / 3, 1e-14);
  // The weight reproduces the position: x = 2 b1.
  const Ball half(P(0, 0, 0), 1.0);
  const double ix = clip_integrate(t, half, 1e-6, [](const PointN& x, const Bary&) { return x[0]; });
  const double ib = clip_integrate(t, half, 1e-6, [](const PointN&, const Bary& b) { return 2 * b[1]; });
  EXPECT_NEAR(ix, ib, 1e-12);
}

TEST(SegmentBall, Interval) {
  const auto iv = segment_ball_interval(P(-2, 0, 0), P(2, 0, 0), Ball(P(0, 0, 0), 1.0));
  ASSERT_TRUE(iv.has_value());
  EXPECT_NEAR(iv->first, 0.25, 1e-15);
  EXPECT_NEAR(iv->second, 0.75, 1e-15);
  EXPECT_FALSE(segment_ball_interval(P(-2, 2, 0), P(2, 2, 0), Ball(P(0, 0, 0), 1.0)).has_value());
}

TEST(VertexTotalAngle, SixEquilateral) {
  std::vector<Triangle> star;
  const PointN o = P(0, 0, 0);
  for (int i = 0; i < 6; ++i) {
    const double a = M_PI / 3 * i, b = M_PI / 3 * (i + 1);
    star.emplace_back(o, P(std::cos(a), std::sin(a), 0), P(std::cos(b), std::sin(b), 0));
  }
  EXPECT_NEAR(vertex_total_angle(o, star), 2 * M_PI, 1e-12);
}

TEST(VertexTotalAngle, HalfDiskCorner) {
  const PointN o = P(0, 0, 0);
  const std::vector<Triangle> star{Triangle(o, P(1, 0, 0), P(0, 1, 0)), Triangle(o, P(0, 1, 0), P(-1, 0, 0))};
  EXPECT_NEAR(vertex_total_angle(o, star), M_PI, 1e-12);
}

TEST(VertexTotalAngle, BranchedFlatStar) {
  // z -> z^k applied to a fan of n triangles around the origin covers the
  // plane k times: total angle 2 pi k.
  const PointN o = P(0, 0, 0);
  for (int k : {2, 3}) {
    const int n = 12 * k;
    std::vector<Triangle> star;
    for (int i = 0; i < n; ++i) {
      const double a = 2 * M_PI * k * i / n, b = 2 * M_PI * k * (i + 1) / n;
      star.emplace_back(o, P(std::cos(a), std::sin(a), 0), P(std::cos(b), std::sin(b), 0));
    }
    EXPECT_NEAR(vertex_total_angle(o, star), 2 * M_PI * k, 1e-12);
  }
}

TEST(VertexTotalAngle, EmptyStarRejected) {
  EXPECT_THROW(vertex_total_angle(P(0, 0, 0), std::vector<Triangle>{}), Error);
}

TEST(TriangleDistance, ParallelAndCrossing) {
  const Triangle a(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0));
  const Triangle b(P(0, 0, 1), P(1, 0, 1), P(0, 1, 1));
  EXPECT_NEAR(triangle_triangle_distance(a, b), 1.0, 1e-12);
  const Triangle c(P(0.2, 0.2, -1), P(0.2, 0.2, 1), P(0.3, 0.25, 0));
  EXPECT_NEAR(triangle_triangle_distance(a, c), 0.0, 1e-12);
  const Triangle d(P(2, 2, 0), P(3, 2, 0), P(2, 3, 0));
  EXPECT_NEAR(triangle_triangle_distance(a, d), 3.0 / std::sqrt(2.0), 1e-12);
}

TEST(CompensatedSum, RecoversSmallTerms) {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 10000; ++i) s += 1e-16;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-12, 1e-20);
}

TEST(Dimension, RejectsOutOfRange) {
  EXPECT_THROW(VecN(9), Error);
  std::vector<PointN> pts{P(0, 0, 0), PointN{0.0, 0.0, 0.0, 0.0}};
  EXPECT_THROW(common_dimension(pts, "test"), Error);
}
