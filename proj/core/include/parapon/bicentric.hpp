#pragma once

// Bicentric polygons between two circles and their polar images.

#include <vector>

#include "parapon/geom.hpp"

namespace parapon {

// Circumcircle (O, R) with O at the origin; incircle (O', r) with O' = (d, 0).
struct BicentricConfig {
  double R = 1.0;
  double r = 0.5;
  double d = 0.0;
  int N = 3;

  BicentricConfig() = default;
  BicentricConfig(double R_, double r_, double d_, int N_);

  CircleSpec circumcircle() const { return {Vec2::Zero(), R}; }
  CircleSpec incircle() const { return {Vec2(d, 0.0), r}; }
  // d^2 = R (R - 2 r), scaled residual.
  double euler_residual() const { return (d * d - R * (R - 2.0 * r)) / (R * R); }
};

// N = 3 config with d = k * r obeying Euler's relation.
BicentricConfig euler_triangle(double R, double k);

// r/R with d = r, found by bisection on the closure defect.
double bicentric_closure_ratio(int N);

// Closure polynomial in r (R = 1, d = r) for N = 3..6.
double bicentric_closure_polynomial(int N, double r);

// Closure defect of the circle pair after N steps from angle t.
double bicentric_defect(const BicentricConfig& cfg, double t);

// Vertices from R (cos t, sin t); throws ClosureViolation above tol.
std::vector<Vec2> bicentric_orbit(const BicentricConfig& cfg, double t, double tol = 1e-8);
// Same iteration without the closure check.
std::vector<Vec2> bicentric_chain(const BicentricConfig& cfg, double t);

// Polygon bounded by the circumcircle tangents at the orbit vertices.
std::vector<ProjPoint> bicentric_polar_polygon(const BicentricConfig& cfg, const std::vector<Vec2>& orbit);

// Sum of distances from O to the side lines.
double pedal_distance_sum(const BicentricConfig& cfg, const std::vector<Vec2>& orbit);
double pedal_distance_sum(const BicentricConfig& cfg, double t);
// As above with a side counted negative when its line separates O from O'.
double signed_pedal_distance_sum(const BicentricConfig& cfg, const std::vector<Vec2>& orbit);

struct PolarImage {
  Conic outer;
  CircleSpec caustic;
  ConicClass kind = ConicClass::Empty;
};

// Polar image of the incircle with respect to the circumcircle.
PolarImage polar_image_family(const BicentricConfig& cfg);

}  // namespace parapon
