#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "parapon/geom.hpp"

using namespace parapon;

namespace {

Conic unit_circle() { return CircleSpec(Vec2::Zero(), 1.0).to_conic(); }

}  // namespace

TEST(Geom, MeetOfAxes) {
  const ProjPoint p = meet(Line::vertical(2.0), Line::horizontal(-3.0));
  ASSERT_TRUE(p.is_finite());
  EXPECT_NEAR(p.cartesian().x(), 2.0, 1e-15);
  EXPECT_NEAR(p.cartesian().y(), -3.0, 1e-15);
}

TEST(Geom, ParallelLinesMeetAtInfinity) {
  const ProjPoint p = meet(Line::vertical(1.0), Line::vertical(5.0));
  EXPECT_FALSE(p.is_finite());
  EXPECT_THROW(p.cartesian(), Error);
}

TEST(Geom, LineThroughTwoPoints) {
  const Line l = Line::through(ProjPoint::finite(0, 1), ProjPoint::finite(1, 3));
  EXPECT_NEAR(l.eval(ProjPoint::finite(2, 5)), 0.0, 1e-14);
  EXPECT_NEAR(l.distance_to(Vec2(0, 0)), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Geom, FocusPolarIsDirectrix) {
  for (double f : {0.5, 1.0, 3.0}) {
    const ParabolaStd P(f);
    const Line pol = polar_line(P.to_conic(), ProjPoint::finite(P.focus()));
    ASSERT_GT(std::abs(pol.a), 0.0);
    EXPECT_NEAR(pol.b / pol.a, 0.0, 1e-15);
    EXPECT_NEAR(-pol.c / pol.a, f, 1e-14);
  }
}

TEST(Geom, PolePolarRoundTrip) {
  const Conic c{2.0, 0.3, 1.0, -0.5, 0.7, -3.0};
  const ProjPoint p = ProjPoint::finite(1.5, -2.25);
  EXPECT_TRUE(same_point(pole_point(c, polar_line(c, p)), p, 1e-12));
}

TEST(Geom, TangentsFromExternalPoint) {
  const auto t = tangent_lines_from(unit_circle(), ProjPoint::finite(0, 2));
  ASSERT_EQ(t.size(), 2u);
  for (const Line& l : t) {
    EXPECT_NEAR(l.distance_to(Vec2::Zero()), 1.0, 1e-14);
    EXPECT_NEAR(l.eval(ProjPoint::finite(0, 2)), 0.0, 1e-14);
    // the touching points of tangents from (0,2) sit at height 1/2
    const auto hit = intersect_line_conic(unit_circle(), l);
    ASSERT_EQ(hit.size(), 1u);
    EXPECT_EQ(hit[0].multiplicity, 2);
    EXPECT_NEAR(hit[0].point.cartesian().y(), 0.5, 1e-7);
  }
}

TEST(Geom, TangentCountByPosition) {
  EXPECT_EQ(tangent_lines_from(unit_circle(), ProjPoint::finite(0.2, 0.1)).size(), 0u);
  EXPECT_EQ(tangent_lines_from(unit_circle(), ProjPoint::finite(1, 0)).size(), 1u);
}

TEST(Geom, LineMeetsParabola) {
  const auto hits = intersect_line_conic(ParabolaStd(1.0).to_conic(), Line::vertical(-1.0));
  ASSERT_EQ(hits.size(), 2u);
  std::vector<double> ys;
  for (const auto& h : hits) {
    EXPECT_NEAR(h.point.cartesian().x(), -1.0, 1e-14);
    ys.push_back(h.point.cartesian().y());
  }
  std::sort(ys.begin(), ys.end());
  EXPECT_NEAR(ys[0], -2.0, 1e-14);
  EXPECT_NEAR(ys[1], 2.0, 1e-14);
}

TEST(Geom, AxisParallelLineMeetsParabolaOnceFinite) {
  const auto hits = intersect_line_conic(ParabolaStd(1.0).to_conic(), Line::horizontal(2.0));
  int finite = 0;
  for (const auto& h : hits) {
    if (h.point.is_finite()) {
      ++finite;
      EXPECT_NEAR(h.point.cartesian().x(), -1.0, 1e-14);
    }
  }
  EXPECT_EQ(finite, 1);
}

TEST(Geom, Classification) {
  EXPECT_EQ(classify_conic(unit_circle()), ConicClass::Circle);
  EXPECT_EQ(classify_conic({1, 0, 4, 0, 0, -4}), ConicClass::Ellipse);
  EXPECT_EQ(classify_conic({1, 0, -1, 0, 0, -1}), ConicClass::Hyperbola);
  EXPECT_EQ(classify_conic(ParabolaStd(2.0).to_conic()), ConicClass::Parabola);
  EXPECT_EQ(classify_conic({1, 0, -1, 0, 0, 0}), ConicClass::LinePair);
  EXPECT_EQ(classify_conic({1, 0, 1, 0, 0, 1}), ConicClass::Empty);
  EXPECT_EQ(classify_conic({1, 0, 1, 0, 0, 0}), ConicClass::Point);
}

TEST(Geom, EllipseFeatures) {
  // x^2/25 + y^2/9 = 1, shifted to center (1, -2)
  const double a = 5, b = 3;
  Conic c{1 / (a * a), 0, 1 / (b * b), -2 / (a * a), 4 / (b * b), 1 / (a * a) + 4 / (b * b) - 1};
  const ConicFeatures F = conic_features(c);
  EXPECT_EQ(F.kind, ConicClass::Ellipse);
  ASSERT_TRUE(F.center);
  EXPECT_NEAR(F.center->x(), 1.0, 1e-12);
  EXPECT_NEAR(F.center->y(), -2.0, 1e-12);
  ASSERT_EQ(F.foci.size(), 2u);
  for (const Vec2& fo : F.foci) {
    EXPECT_NEAR(std::abs(fo.x() - 1.0), 4.0, 1e-10);
    EXPECT_NEAR(fo.y(), -2.0, 1e-10);
  }
  ASSERT_TRUE(F.semi_axes);
  EXPECT_NEAR(F.semi_axes->x(), a, 1e-10);
  EXPECT_NEAR(F.semi_axes->y(), b, 1e-10);
}

TEST(Geom, RotatedHyperbolaFociByDefinition) {
  // xy = 2 has foci (+-2, +-2); the focal distance difference is constant 4
  const Conic c{0, 1, 0, 0, 0, -2};
  const ConicFeatures F = conic_features(c);
  EXPECT_EQ(F.kind, ConicClass::Hyperbola);
  ASSERT_EQ(F.foci.size(), 2u);
  for (double t : {0.3, 1.0, 2.5, 7.0}) {
    const Vec2 p(t, 2.0 / t);
    EXPECT_NEAR(std::abs((p - F.foci[0]).norm() - (p - F.foci[1]).norm()), 4.0, 1e-9);
  }
}

TEST(Geom, ParabolaFocusDirectrixProperty) {
  // (x - 1)^2 = 8 (y + 2): focus (1, 0), directrix y = -4
  const ConicFeatures F = conic_features(Conic{1, 0, 0, -2, -8, -15});
  EXPECT_EQ(F.kind, ConicClass::Parabola);
  ASSERT_EQ(F.foci.size(), 1u);
  ASSERT_TRUE(F.directrix);
  for (double x : {-3.0, 0.0, 1.0, 4.0, 11.0}) {
    const Vec2 p(x, (x - 1) * (x - 1) / 8.0 - 2.0);
    EXPECT_NEAR((p - F.foci[0]).norm(), F.directrix->distance_to(p), 1e-10);
  }
  ASSERT_TRUE(F.focal_distance);
  EXPECT_NEAR(*F.focal_distance, 2.0, 1e-10);
}

TEST(Geom, CanonicalParabolaFeatures) {
  const ConicFeatures F = conic_features(ParabolaStd(1.5).to_conic());
  ASSERT_EQ(F.foci.size(), 1u);
  EXPECT_NEAR(F.foci[0].x(), -1.5, 1e-12);
  EXPECT_NEAR(F.foci[0].y(), 0.0, 1e-12);
  ASSERT_TRUE(F.opening);
  EXPECT_NEAR(F.opening->x(), -1.0, 1e-12);
}

TEST(Geom, PolarPolygonOfInscribedSquare) {
  const double s = std::sqrt(0.5);
  std::vector<ProjPoint> sq{ProjPoint::finite(s, s), ProjPoint::finite(-s, s), ProjPoint::finite(-s, -s),
                            ProjPoint::finite(s, -s)};
  const auto poly = polar_polygon(unit_circle(), sq);
  ASSERT_EQ(poly.size(), 4u);
  EXPECT_NEAR(poly[0].cartesian().x(), 0.0, 1e-14);
  EXPECT_NEAR(poly[0].cartesian().y(), std::sqrt(2.0), 1e-14);
}

TEST(Geom, Reflection) {
  const Vec2 q = reflect(Vec2(3, 1), Line{1, -1, 0});
  EXPECT_NEAR(q.x(), 1.0, 1e-15);
  EXPECT_NEAR(q.y(), 3.0, 1e-15);
}

TEST(Geom, SampsonOnCircle) {
  const Conic c = CircleSpec(Vec2(0, 0), 2.0).to_conic();
  EXPECT_NEAR(c.sampson_distance(Vec2(2.001, 0)), 0.001, 1e-6);
  EXPECT_TRUE(c.equivalent(Conic{3 * c.A, 3 * c.B, 3 * c.C, 3 * c.D, 3 * c.E, 3 * c.F}));
}

TEST(Geom, DegenerateCircleRejected) { EXPECT_THROW(CircleSpec(Vec2::Zero(), 0.0), Error); }
