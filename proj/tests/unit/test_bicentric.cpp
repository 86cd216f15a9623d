#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "parapon/bicentric.hpp"

using namespace parapon;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Bicentric, EulerTrianglesClose) {
  for (double k : {0.0, 0.3, 1.0, 1.7}) {
    const BicentricConfig cfg = euler_triangle(2.0, k);
    EXPECT_NEAR(cfg.euler_residual(), 0.0, 1e-14);
    for (double t : {0.0, 0.7, 2.9, 4.4}) EXPECT_NEAR(bicentric_defect(cfg, t), 0.0, 1e-10) << k;
  }
}

TEST(Bicentric, FussQuadrilateral) {
  // 1/(R-d)^2 + 1/(R+d)^2 = 1/r^2
  const double R = 1.0, d = 0.3;
  const double r = 1.0 / std::sqrt(1 / ((R - d) * (R - d)) + 1 / ((R + d) * (R + d)));
  const BicentricConfig cfg(R, r, d, 4);
  for (double t : {0.2, 1.5, 3.3}) EXPECT_NEAR(bicentric_defect(cfg, t), 0.0, 1e-10);
  EXPECT_GT(std::abs(bicentric_defect(BicentricConfig(R, r * 1.001, d, 4), 0.2)), 1e-5);
}

TEST(Bicentric, ConcentricRegularPolygons) {
  for (int N = 3; N <= 7; ++N) {
    const double r = std::cos(kPi / N);
    const BicentricConfig cfg(1.0, r, 0.0, N);
    const auto orbit = bicentric_orbit(cfg, 0.4);
    ASSERT_EQ(orbit.size(), static_cast<std::size_t>(N));
    EXPECT_NEAR(pedal_distance_sum(cfg, orbit), N * r, 1e-12);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      EXPECT_NEAR((orbit[i] - orbit[(i + 1) % N]).norm(), 2 * std::sin(kPi / N), 1e-12);
  }
}

TEST(Bicentric, RatiosAreDefectRoots) {
  EXPECT_NEAR(bicentric_closure_ratio(3), std::sqrt(2.0) - 1, 1e-12);
  for (int N = 3; N <= 6; ++N) {
    const double r = bicentric_closure_ratio(N);
    EXPECT_NEAR(bicentric_closure_polynomial(N, r), 0.0, 1e-10) << N;
    EXPECT_NEAR(bicentric_defect(BicentricConfig(1.0, r, r, N), 1.9), 0.0, 1e-10) << N;
  }
}

TEST(Bicentric, QuadRatioFromFuss) {
  // d = r in Fuss: r^4 + 4 r^2 - 1 = 0 with R = 1
  const double r = std::sqrt(std::sqrt(5.0) - 2);
  EXPECT_NEAR(bicentric_closure_ratio(4), r, 1e-12);
}

TEST(Bicentric, PolarImageThroughCenterIsParabola) {
  // a circle through O reciprocates to a parabola with focus O and directrix x = R^2/d
  for (int N = 3; N <= 6; ++N) {
    const double r = bicentric_closure_ratio(N);
    const PolarImage img = polar_image_family(BicentricConfig(1.0, r, r, N));
    EXPECT_EQ(img.kind, ConicClass::Parabola);
    const ConicFeatures F = conic_features(img.outer);
    ASSERT_EQ(F.foci.size(), 1u);
    EXPECT_NEAR(F.foci[0].norm(), 0.0, 1e-9);
    ASSERT_TRUE(F.focal_distance);
    EXPECT_NEAR(*F.focal_distance, 1.0 / (2 * r), 1e-9);
  }
}

TEST(Bicentric, PolarImageEccentricity) {
  // eccentricity = d / r, one focus at O
  for (double k : {0.5, 0.8, 1.2, 1.6}) {
    const BicentricConfig cfg = euler_triangle(1.0, k);
    const PolarImage img = polar_image_family(cfg);
    EXPECT_EQ(img.kind, k < 1 ? ConicClass::Ellipse : ConicClass::Hyperbola);
    const ConicFeatures F = conic_features(img.outer);
    ASSERT_EQ(F.foci.size(), 2u);
    ASSERT_TRUE(F.center);
    const double c = (F.foci[0] - *F.center).norm();
    EXPECT_NEAR(std::min(F.foci[0].norm(), F.foci[1].norm()), 0.0, 1e-9);
    ASSERT_TRUE(F.semi_axes);
    EXPECT_NEAR(c / F.semi_axes->x(), k, 1e-9);
  }
}

TEST(Bicentric, PolarPolygonSidesTouchCircumcircle) {
  const BicentricConfig cfg = euler_triangle(1.0, 0.6);
  const auto orbit = bicentric_orbit(cfg, 1.1);
  const auto poly = bicentric_polar_polygon(cfg, orbit);
  ASSERT_EQ(poly.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const Line side = Line::through(poly[i], poly[(i + 1) % 3]);
    EXPECT_NEAR(side.distance_to(Vec2::Zero()), 1.0, 1e-10);
  }
}

TEST(Bicentric, SignedPedalSumIsConserved) {
  for (int N = 3; N <= 6; ++N) {
    const double r = bicentric_closure_ratio(N);
    const BicentricConfig cfg(1.0, r, r, N);
    const double s0 = signed_pedal_distance_sum(cfg, bicentric_orbit(cfg, 0.0));
    for (double t : {0.5, 1.4, 2.6, 4.1})
      EXPECT_NEAR(signed_pedal_distance_sum(cfg, bicentric_orbit(cfg, t)), s0, 1e-9) << N;
  }
}

TEST(Bicentric, OpenPairThrows) {
  EXPECT_THROW(bicentric_orbit(BicentricConfig(1.0, 0.45, 0.1, 3), 0.0), Error);
  EXPECT_THROW(BicentricConfig(1.0, 0.6, 0.5, 3), Error);
  EXPECT_THROW(bicentric_closure_polynomial(7, 0.4), Error);
}
