#pragma once

#include <utility>
#include <vector>

#include "parapon/geom.hpp"

namespace parapon::detail {

struct HomogeneousRoot {
  double s;
  double t;
  int multiplicity;
};

// Roots (s:t) of a s^2 + 2 b s t + c t^2 = 0. Coefficients are rescaled to
// unit max-abs before the discriminant is compared against tol.
std::vector<HomogeneousRoot> solve_homogeneous_quadratic(double a, double b, double c, double tol);

std::pair<Vec3, Vec3> orthogonal_basis(const Vec3& v);

}  // namespace parapon::detail
