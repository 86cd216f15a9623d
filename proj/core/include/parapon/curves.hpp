#pragma once

// Implicit polynomial curves in x, y and the printed locus equations.

#include <utility>
#include <vector>

#include "parapon/geom.hpp"

namespace parapon {

struct Monomial {
  double coef = 0.0;
  int px = 0;
  int py = 0;
};

class BivariatePoly {
 public:
  BivariatePoly() = default;
  explicit BivariatePoly(std::vector<Monomial> terms);

  double eval(double x, double y) const;
  Vec2 gradient(double x, double y) const;
  int degree() const;
  const std::vector<Monomial>& terms() const { return terms_; }

 private:
  std::vector<Monomial> terms_;
};

// Incenter locus of the polar triangles.
BivariatePoly polar_incenter_quartic(double f);
// Spieker center locus of the polar triangles.
BivariatePoly polar_spieker_quartic(double f);
// Perimeter centroid locus of the polar quadrilaterals.
BivariatePoly polar_perimeter_centroid_dectic(double f);

// Vertical lines bounding the polar Spieker locus: (lo, hi).
std::pair<double, double> polar_spieker_strip(double f);
// Vertical lines bounding the polar quadrilateral perimeter centroid locus.
std::pair<double, double> polar_perimeter_centroid_strip(double f);

}  // namespace parapon
