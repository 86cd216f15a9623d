#include <algorithm>
#include <cmath>

#include "parapon/curves.hpp"

namespace parapon {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

const double kS2 = std::sqrt(2.0);
const double kS5 = std::sqrt(5.0);

// coefficient, power of f, power of x, power of y
struct Row {
  double c;
  int pf, px, py;
};

BivariatePoly build(double f, std::initializer_list<Row> rows) {
  std::vector<Monomial> t;
  for (const auto& r : rows) t.push_back({r.c * ipow(f, r.pf), r.px, r.py});
  return BivariatePoly(std::move(t));
}

}  // namespace

BivariatePoly::BivariatePoly(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

double BivariatePoly::eval(double x, double y) const {
  double s = 0.0;
  for (const auto& m : terms_) s += m.coef * ipow(x, m.px) * ipow(y, m.py);
  return s;
}

Vec2 BivariatePoly::gradient(double x, double y) const {
  double gx = 0.0, gy = 0.0;
  for (const auto& m : terms_) {
    if (m.px > 0) gx += m.coef * m.px * ipow(x, m.px - 1) * ipow(y, m.py);
    if (m.py > 0) gy += m.coef * m.py * ipow(x, m.px) * ipow(y, m.py - 1);
  }
  return {gx, gy};
}

int BivariatePoly::degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.px + m.py);
  return d;
}

BivariatePoly polar_incenter_quartic(double f) {
  return build(f, {
                      {-5 * kS2 - 6, 0, 2, 2},
                      {4 * kS2 + 2, 2, 2, 0},
                      {10 * kS2 + 12, 1, 1, 2},
                      {8 * kS2 + 4, 3, 1, 0},
                      {3 * kS2 - 16, 2, 0, 2},
                      {-14, 4, 0, 0},
                  });
}

BivariatePoly polar_spieker_quartic(double f) {
  return build(f, {
                      {4 * (11 * kS2 + 16), 0, 4, 0},
                      {-4 * (3 * kS2 + 5), 0, 2, 2},
                      {-4 * (37 * kS2 + 50), 1, 3, 0},
                      {8 * (2 * kS2 + 1), 1, 1, 2},
                      {21 * (5 * kS2 + 8), 2, 2, 0},
                      {-4 * (9 * kS2 + 8), 3, 1, 0},
                      {-(kS2 + 4), 2, 0, 2},
                      {7, 4, 0, 0},
                  });
}

BivariatePoly polar_perimeter_centroid_dectic(double f) {
  const double s = kS5;
  return build(f, {
                      {-(1457008 * s + 3257968), 1, 7, 2},
                      {122156 * s + 273148, 2, 4, 4},
                      {465164 * s + 1040132, 2, 6, 2},
                      {-(96506 * s + 215698), 6, 2, 2},
                      {-(119256 * s + 266664), 3, 3, 4},
                      {505052 * s + 1129268, 5, 3, 2},
                      {8564 * s + 19204, 7, 1, 2},
                      {-(881712 * s + 1971568), 0, 10, 0},
                      {43955 * s + 98289, 4, 2, 4},
                      {24568 * s + 54936, 1, 5, 4},
                      {-(7250 * s + 16210), 5, 1, 4},
                      {-(1274930 * s + 2850838), 4, 4, 2},
                      {1235568 * s + 2762832, 3, 5, 2},
                      {4457696 * s + 9967712, 1, 9, 0},
                      {-(7787152 * s + 17412608), 2, 8, 0},
                      {5470456 * s + 12232344, 3, 7, 0},
                      {-(1690535 + 755997 * s), 4, 6, 0},
                      {-(812098 * s + 1815898), 5, 5, 0},
                      {330322 * s + 738968, 6, 4, 0},
                      {1002 + 448 * s, 6, 0, 4},
                      {-(228 * s + 672), 8, 0, 2},
                      {-(7300 * s + 16956), 7, 3, 0},
                      {2750 * s + 7150, 9, 1, 0},
                      {-(16145 * s + 36103), 8, 2, 0},
                      {-(84196 * s + 188268), 0, 6, 4},
                      {544928 * s + 1218496, 0, 8, 2},
                      {-726, 10, 0, 0},
                  });
}

std::pair<double, double> polar_spieker_strip(double f) {
  const double a = (kS2 - 1.0 + std::sqrt(10.0 - 7.0 * kS2) / 2.0) * f;
  const double b = (kS2 - std::pow(2.0, -0.25)) * f;
  return {std::min(a, b), std::max(a, b)};
}

std::pair<double, double> polar_perimeter_centroid_strip(double f) {
  const double a = (5.0 + kS2 - kS5 * kS2 - kS5) * f / 2.0;
  const double b = (kS5 * kS2 - kS5 - 2.0 * kS2 + 3.0) * f / 2.0;
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace parapon
