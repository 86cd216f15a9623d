#pragma once

// Projective plane primitives: homogeneous points and lines, general conics,
// pole/polar, tangency and line/conic intersection.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "parapon/error.hpp"

namespace parapon {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Relative tolerance for geometric predicates. Scale is taken from the
// max-abs input coefficient.
inline constexpr double kGeomTol = 1e-9;

struct ProjPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;

  static ProjPoint finite(double x, double y) { return {x, y, 1.0}; }
  static ProjPoint finite(const Vec2& p) { return {p.x(), p.y(), 1.0}; }
  static ProjPoint at_infinity(double dx, double dy) { return {dx, dy, 0.0}; }
  static ProjPoint from_vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

  Vec3 vec() const { return {x, y, w}; }
  // w relative to the largest coordinate.
  bool is_finite(double tol = kGeomTol) const;
  // Throws UnboundedInput for points at infinity.
  Vec2 cartesian() const;
};

// Proportional coordinate triples within relative tolerance.
bool same_point(const ProjPoint& a, const ProjPoint& b, double tol = kGeomTol);

// Sine of the angle between two homogeneous vectors; 0 for the same point.
double projective_distance(const ProjPoint& a, const ProjPoint& b);

// a*x + b*y + c*w = 0
struct Line {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static Line from_vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
  static Line through(const ProjPoint& p, const ProjPoint& q);
  static Line vertical(double x0) { return {1.0, 0.0, -x0}; }
  static Line horizontal(double y0) { return {0.0, 1.0, -y0}; }
  static Line at_infinity() { return {0.0, 0.0, 1.0}; }

  Vec3 vec() const { return {a, b, c}; }
  bool is_at_infinity(double tol = kGeomTol) const;
  double eval(const ProjPoint& p) const { return a * p.x + b * p.y + c * p.w; }
  // Unsigned Euclidean distance from a finite point.
  double distance_to(const Vec2& p) const;
  // Unit direction vector along the line.
  Vec2 direction() const;
};

// Intersection of two lines; the result is at infinity for parallel lines.
ProjPoint meet(const Line& l, const Line& m);

// A*x^2 + B*x*y + C*y^2 + D*x + E*y + F = 0
struct Conic {
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;

  static Conic from_matrix(const Mat3& m);
  Mat3 matrix() const;
  double max_abs() const;
  // Divided by the max-abs coefficient.
  Conic normalized() const;
  double eval(const ProjPoint& p) const;
  double eval(const Vec2& p) const { return eval(ProjPoint::finite(p)); }
  Vec2 gradient(const Vec2& p) const;
  // |Q(p)| / |grad Q(p)|, a first-order distance estimate.
  double sampson_distance(const Vec2& p) const;
  double discriminant() const { return B * B - 4.0 * A * C; }
  bool equivalent(const Conic& other, double tol = kGeomTol) const;
};

struct CircleSpec {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;

  CircleSpec() = default;
  CircleSpec(const Vec2& c, double r);
  Conic to_conic() const;
};

// Canonical parabola x = -y^2/(4f): vertex (0,0), focus (-f,0), directrix x = f.
struct ParabolaStd {
  double f = 1.0;

  explicit ParabolaStd(double focal);
  Conic to_conic() const { return {0.0, 0.0, 1.0, 4.0 * f, 0.0, 0.0}; }
  Vec2 focus() const { return {-f, 0.0}; }
  Vec2 vertex() const { return {0.0, 0.0}; }
  Line directrix() const { return Line::vertical(f); }
  ProjPoint point_at(double y) const { return ProjPoint::finite(-y * y / (4.0 * f), y); }
};

enum class ConicClass { Ellipse, Circle, Parabola, Hyperbola, LinePair, SingleLine, Point, Empty };

std::string_view to_string(ConicClass c) noexcept;

struct LineConicHit {
  ProjPoint point;
  int multiplicity = 1;
};

struct ConicFeatures {
  ConicClass kind = ConicClass::Empty;
  std::optional<Vec2> center;
  std::vector<Vec2> foci;
  std::vector<Vec2> vertices;
  std::optional<Vec2> axis;  // unit direction of the focal axis
  std::optional<Line> directrix;
  std::optional<double> radius;
  std::optional<double> focal_distance;
  std::optional<Vec2> semi_axes;  // (a, b); a along the focal axis
  std::optional<Vec2> opening;    // parabola: unit vector from vertex toward focus
};

Line polar_line(const Conic& c, const ProjPoint& p);
ProjPoint pole_point(const Conic& c, const Line& l);

// 0, 1 (point on the conic) or 2 tangents through p.
std::vector<Line> tangent_lines_from(const Conic& c, const ProjPoint& p, double tol = kGeomTol);

// Double roots are returned once with multiplicity 2.
std::vector<LineConicHit> intersect_line_conic(const Conic& c, const Line& l, double tol = kGeomTol);

ConicClass classify_conic(const Conic& c, double tol = kGeomTol);

ConicFeatures conic_features(const Conic& c, double tol = kGeomTol);

// Polygon bounded by the polars of the given vertices: vertex i is the meet
// of the polars of v[i] and v[i+1]. For vertices on the conic these polars
// are tangents and vertex i is the pole of chord v[i]v[i+1].
std::vector<ProjPoint> polar_polygon(const Conic& c, std::span<const ProjPoint> vertices);

// Point reflected across a line.
Vec2 reflect(const Vec2& p, const Line& l);

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace parapon
