#pragma once

// Closed-form parabola families for N = 3, 4 and the exact closure ratios.

#include <vector>

#include "parapon/engine.hpp"

namespace parapon {

// r/f at which the focus-centered caustic closes after N steps. N = 3..6.
double closure_ratio(int N);

// x^6 + 12x^5 - 28x^4 + 32x^3 + 112x^2 - 64x - 64, root = pentagon r/f.
double pentagon_closure_sextic(double x);

// Vertex ordinates; an infinite vertex is reported as y = +/-inf.
std::vector<double> triangle_ordinates(double f, double y1);
std::vector<double> quad_ordinates(double f, double y1);

Orbit triangle_orbit(double f, double y1);
Orbit quad_orbit(double f, double y1);

// Polar triangle from the closed-form Q1, Q2, Q3, returned in side order
// (pole of P1P2, P2P3, P3P1) = (Q1, Q3, Q2).
std::vector<ProjPoint> polar_triangle(double f, double y1);
// Poles of the sides P1P2, P2P3, P3P4, P4P1.
std::vector<ProjPoint> polar_quad(double f, double y1);

// Pole of the chord between two parabola points given by ordinate.
ProjPoint parabola_chord_pole(double f, double ya, double yb);

// The conic through the polar vertices. N = 3 or 4.
Conic polar_hyperbola(int N, double f);

// Point of intersection of the diagonals of every quadrilateral: ((2 - sqrt5) f, 0).
Vec2 quad_diagonal_point(double f);

}  // namespace parapon
