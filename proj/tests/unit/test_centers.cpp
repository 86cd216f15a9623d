#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "parapon/centers.hpp"

using namespace parapon;

namespace {

const Vec2 A0(0, 0), B0(4, 0), C0(0, 3);
const Vec2 A1(0.3, -0.2), B1(5.1, 0.4), C1(1.7, 3.9);

Vec2 X(int k, const Vec2& A, const Vec2& B, const Vec2& C) { return triangle_center(A, B, C, CenterId(k)); }

void expect_point(const Vec2& p, double x, double y, double tol = 1e-12) {
  EXPECT_NEAR(p.x(), x, tol);
  EXPECT_NEAR(p.y(), y, tol);
}

Vec2 meet2(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
  return meet(Line::through(ProjPoint::finite(p), ProjPoint::finite(q)),
              Line::through(ProjPoint::finite(r), ProjPoint::finite(s)))
      .cartesian();
}

Vec2 foot(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = (b - a).normalized();
  return a + d * (p - a).dot(d);
}

Vec2 circumcenter(const Vec2& A, const Vec2& B, const Vec2& C) {
  const double d = 2 * cross2(B - A, C - A);
  const double b2 = (B - A).squaredNorm(), c2 = (C - A).squaredNorm();
  return A + Vec2((C - A).y() * b2 - (B - A).y() * c2, (B - A).x() * c2 - (C - A).x() * b2) / d;
}

double side_distance_spread(const Vec2& A, const Vec2& B, const Vec2& C, const Vec2& p) {
  auto dist = [&](const Vec2& u, const Vec2& v) {
    return Line::through(ProjPoint::finite(u), ProjPoint::finite(v)).distance_to(p);
  };
  return std::max(std::abs(dist(A, B) - dist(B, C)), std::abs(dist(B, C) - dist(C, A)));
}

double collinear(const Vec2& p, const Vec2& q, const Vec2& r) {
  return std::abs(cross2(q - p, r - p)) / std::max({(q - p).squaredNorm(), (r - p).squaredNorm(), 1e-300});
}

}  // namespace

TEST(Centers, RightTriangleValues) {
  expect_point(X(1, A0, B0, C0), 1, 1);
  expect_point(X(2, A0, B0, C0), 4.0 / 3, 1);
  expect_point(X(3, A0, B0, C0), 2, 1.5);
  expect_point(X(4, A0, B0, C0), 0, 0);
  expect_point(X(5, A0, B0, C0), 1, 0.75);
  expect_point(X(6, A0, B0, C0), 18.0 / 25, 24.0 / 25);
  expect_point(X(20, A0, B0, C0), 4, 3);
}

TEST(Centers, IncenterEquidistantFromSides) {
  EXPECT_LT(side_distance_spread(A1, B1, C1, X(1, A1, B1, C1)), 1e-12);
}

TEST(Centers, OrthocenterAndCircumcenter) {
  const Vec2 H = X(4, A1, B1, C1);
  EXPECT_NEAR((H - A1).dot(C1 - B1), 0.0, 1e-12);
  EXPECT_NEAR((H - B1).dot(A1 - C1), 0.0, 1e-12);
  const Vec2 O = X(3, A1, B1, C1);
  EXPECT_NEAR((O - A1).norm(), (O - B1).norm(), 1e-12);
  EXPECT_NEAR((O - A1).norm(), (O - C1).norm(), 1e-12);
  // Euler: H - O = 3 (G - O), de Longchamps is H reflected in O, X5 the midpoint of OH
  const Vec2 G = X(2, A1, B1, C1);
  EXPECT_LT((H - O - 3 * (G - O)).norm(), 1e-12);
  EXPECT_LT((X(20, A1, B1, C1) - (2 * O - H)).norm(), 1e-12);
  EXPECT_LT((X(5, A1, B1, C1) - 0.5 * (O + H)).norm(), 1e-12);
}

TEST(Centers, SymmedianIsIsogonalOfCentroid) {
  // the symmedian through A is the median reflected in the angle bisector
  const Vec2 K = X(6, A1, B1, C1);
  const Vec2 I = X(1, A1, B1, C1);
  const Vec2 Ma = 0.5 * (B1 + C1);
  const Vec2 Mb = 0.5 * (C1 + A1);
  const Vec2 ra = reflect(Ma, Line::through(ProjPoint::finite(A1), ProjPoint::finite(I)));
  const Vec2 rb = reflect(Mb, Line::through(ProjPoint::finite(B1), ProjPoint::finite(I)));
  EXPECT_LT((meet2(A1, ra, B1, rb) - K).norm(), 1e-11);
}

TEST(Centers, SpiekerIsIncenterOfMedialTriangle) {
  const Vec2 ma = 0.5 * (B1 + C1), mb = 0.5 * (C1 + A1), mc = 0.5 * (A1 + B1);
  EXPECT_LT((X(10, A1, B1, C1) - X(1, ma, mb, mc)).norm(), 1e-12);
}

TEST(Centers, X26IsTangentialCircumcenter) {
  const Vec2 O = circumcenter(A1, B1, C1);
  auto tangent_at = [&](const Vec2& P) {
    const Vec2 n = P - O;
    return Line{n.x(), n.y(), -n.dot(P)};
  };
  const Vec2 ta = meet(tangent_at(B1), tangent_at(C1)).cartesian();
  const Vec2 tb = meet(tangent_at(C1), tangent_at(A1)).cartesian();
  const Vec2 tc = meet(tangent_at(A1), tangent_at(B1)).cartesian();
  EXPECT_LT((X(26, A1, B1, C1) - circumcenter(ta, tb, tc)).norm(), 1e-10);
  EXPECT_LT(collinear(X(3, A1, B1, C1), X(4, A1, B1, C1), X(26, A1, B1, C1)), 1e-12);
}

TEST(Centers, X68IsPerspectorOfReflectedOrthicTriangle) {
  const Vec2 N = X(5, A1, B1, C1);
  const Vec2 ha = foot(A1, B1, C1), hb = foot(B1, C1, A1), hc = foot(C1, A1, B1);
  const Vec2 ra = 2 * N - ha, rb = 2 * N - hb, rc = 2 * N - hc;
  const Vec2 P = X(68, A1, B1, C1);
  EXPECT_LT((meet2(A1, ra, B1, rb) - P).norm(), 1e-10);
  EXPECT_LT((meet2(B1, rb, C1, rc) - P).norm(), 1e-10);
  EXPECT_LT(collinear(N, X(6, A1, B1, C1), P), 1e-12);
}

TEST(Centers, X99AndX110OnCircumcircle) {
  const Vec2 O = circumcenter(A1, B1, C1);
  const double R = (A1 - O).norm();
  for (int k : {99, 110}) EXPECT_NEAR((X(k, A1, B1, C1) - O).norm(), R, 1e-11) << k;
  EXPECT_GT((X(99, A1, B1, C1) - X(110, A1, B1, C1)).norm(), 1e-3);
}

TEST(Centers, SimilarityEquivariance) {
  const double c = std::cos(0.7), s = std::sin(0.7), k = 2.3;
  const Vec2 t(-1.1, 4.2);
  auto map = [&](const Vec2& p) -> Vec2 { return Vec2(k * (c * p.x() - s * p.y()), k * (s * p.x() + c * p.y())) + t; };
  for (int id : kSupportedCenters) {
    const Vec2 P = X(id, A1, B1, C1);
    const Vec2 Q = X(id, map(A1), map(B1), map(C1));
    EXPECT_LT((map(P) - Q).norm(), 1e-9 * (1 + Q.norm())) << id;
  }
}

TEST(Centers, PermutationInvariance) {
  for (int id : kSupportedCenters) {
    const Vec2 P = X(id, A1, B1, C1);
    EXPECT_LT((P - X(id, B1, C1, A1)).norm(), 1e-9 * (1 + P.norm())) << id;
    EXPECT_LT((P - X(id, C1, B1, A1)).norm(), 1e-9 * (1 + P.norm())) << id;
  }
}

TEST(Centers, EquilateralGivesCentroid) {
  const Vec2 A(0, 0), B(2, 0), C(1, std::sqrt(3.0));
  for (int id : {1, 2, 3, 4, 5, 6, 10, 20}) {
    const Vec2 P = X(id, A, B, C);
    EXPECT_NEAR(P.x(), 1.0, 1e-9) << id;
    EXPECT_NEAR(P.y(), 1 / std::sqrt(3.0), 1e-9) << id;
  }
}

TEST(Centers, DegenerateAndUnsupported) {
  EXPECT_THROW(CenterId(7), Error);
  EXPECT_THROW(X(1, Vec2(0, 0), Vec2(1, 1), Vec2(2, 2)), Error);
  const ProjPoint two[2] = {ProjPoint::finite(0, 0), ProjPoint::finite(1, 0)};
  EXPECT_THROW(triangle_center(two, CenterId(2)), Error);
  const ProjPoint inf[3] = {ProjPoint::finite(0, 0), ProjPoint::finite(1, 0), ProjPoint::at_infinity(1, 1)};
  EXPECT_THROW(triangle_center(inf, CenterId(2)), Error);
}

TEST(Centers, ConditionNumberReported) {
  const ProjPoint v[3] = {ProjPoint::finite(A1), ProjPoint::finite(B1), ProjPoint::finite(C1)};
  const CenterResult g = triangle_center_checked(v, CenterId(2));
  EXPECT_NEAR(g.condition, 1.0, 1e-15);
  EXPECT_FALSE(g.ill_conditioned);
  // a nearly right angle pushes the tangential triangle toward infinity
  const ProjPoint r[3] = {ProjPoint::finite(0, 0), ProjPoint::finite(4, 0), ProjPoint::finite(1e-9, 3)};
  const CenterResult t = triangle_center_checked(r, CenterId(26));
  EXPECT_GT(t.condition, 1e3);
}

TEST(Centers, PerimeterCentroidOfTriangleIsSpieker) {
  const std::vector<Vec2> tri{A1, B1, C1};
  EXPECT_LT((centroid(std::span<const Vec2>(tri), CentroidKind::Perimeter) - X(10, A1, B1, C1)).norm(), 1e-12);
  EXPECT_LT((centroid(std::span<const Vec2>(tri), CentroidKind::Area) - X(2, A1, B1, C1)).norm(), 1e-12);
}

TEST(Centers, LShapeCentroids) {
  const std::vector<Vec2> L{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const std::span<const Vec2> s(L);
  expect_point(centroid(s, CentroidKind::Vertex), 1, 1, 1e-15);
  expect_point(centroid(s, CentroidKind::Perimeter), 7.0 / 8, 7.0 / 8, 1e-15);
  expect_point(centroid(s, CentroidKind::Area), 5.0 / 6, 5.0 / 6, 1e-15);
  std::vector<Vec2> rev(L.rbegin(), L.rend());
  expect_point(centroid(std::span<const Vec2>(rev), CentroidKind::Area), 5.0 / 6, 5.0 / 6, 1e-15);
}

TEST(Centers, DegeneratePolygon) {
  const std::vector<Vec2> flat{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_THROW(centroid(std::span<const Vec2>(flat), CentroidKind::Area), Error);
  const std::vector<Vec2> two{{0, 0}, {1, 0}};
  EXPECT_THROW(centroid(std::span<const Vec2>(two), CentroidKind::Vertex), Error);
}
