#include "parapon/family.hpp"

#include <cmath>
#include <limits>
#include <mutex>

namespace parapon {

namespace {

const double kS2 = std::sqrt(2.0);
const double kS5 = std::sqrt(5.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

// Parabola point with ordinate num/den in homogeneous form.
ProjPoint parabola_point(double f, double num, double den) {
  const double scale = std::max(std::abs(num), std::abs(den));
  if (scale == 0.0) throw Error(ErrorCode::SingularParameter, "indeterminate vertex");
  num /= scale;
  den /= scale;
  if (std::abs(den) <= 1e-15) return ProjPoint::at_infinity(1.0, 0.0);
  return ParabolaStd(f).point_at(num / den);
}

double ratio_or_inf(double num, double den) {
  if (den == 0.0) {
    if (num == 0.0) throw Error(ErrorCode::SingularParameter, "indeterminate vertex");
    return num > 0 ? kInf : -kInf;
  }
  return num / den;
}

void check_f(double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::OutOfRange, "f must be positive");
}

struct Fraction {
  double num;
  double den;
};

std::vector<Fraction> triangle_fractions(double f, double y1) {
  const double delta = std::sqrt(y1 * y1 * y1 * y1 + 8 * f * f * y1 * y1 + 16 * (8 * kS2 - 11) * f * f * f * f);
  // Rationalized forms of y2 and y3; free of removable 0/0 at y1 = +/-r.
  const double g = y1 * y1 - 4 * (2 * kS2 - 1) * f * f;
  const double k = 2 * (kS2 - 1) * f;
  return {{y1, 1.0}, {k * g, 4 * f * y1 - delta}, {k * g, 4 * f * y1 + delta}};
}

std::vector<Fraction> quad_fractions(double f, double y1) {
  const double alpha = 2 * std::sqrt(kS5 - 2);
  const double beta = 4 * f * (3 - kS5);
  const double s = 4 * kS5 - 8;
  const double d1 = std::sqrt(y1 * y1 * y1 * y1 + 8 * f * f * y1 * y1 + 16 * (9 - 4 * kS5) * f * f * f * f);
  const double g = y1 * y1 - s * f * f;
  return {{y1, 1.0},
          {-alpha * alpha * f * g, alpha * d1 - beta * y1},
          {4 * (2 - kS5) * f * f, y1},
          {alpha * alpha * f * g, alpha * d1 + beta * y1}};
}

Orbit orbit_from(const FamilyConfig& cfg, double y1, const std::vector<Fraction>& fr) {
  Orbit o;
  o.family = cfg;
  o.y1 = y1;
  std::vector<double> ys;
  for (const auto& q : fr) {
    o.vertices.push_back(parabola_point(cfg.f, q.num, q.den));
    ys.push_back(o.vertices.back().w == 0.0 ? kInf : ratio_or_inf(q.num, q.den));
  }
  for (std::size_t i = 0; i < ys.size(); ++i) o.polar_vertices.push_back(parabola_chord_pole(cfg.f, ys[i], ys[(i + 1) % ys.size()]));
  return o;
}

}  // namespace

double pentagon_closure_sextic(double x) {
  return (((((x + 12) * x - 28) * x + 32) * x + 112) * x - 64) * x - 64;
}

double closure_ratio(int N) {
  switch (N) {
    case 3: return 2 * (kS2 - 1);
    case 4: return 2 * std::sqrt(kS5 - 2);
    case 5: {
      double lo = 0.99, hi = 0.999;
      const bool lo_neg = pentagon_closure_sextic(lo) < 0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((pentagon_closure_sextic(mid) < 0) == lo_neg)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    case 6: {
      static std::once_flag once;
      static double value = 0.0;
      std::call_once(once, [] { value = solve_closure_radius(1.0, 6); });
      return value;
    }
    default: break;
  }
  throw Error(ErrorCode::Unsupported, "closure ratio is tabulated for N = 3..6");
}

std::vector<double> triangle_ordinates(double f, double y1) {
  check_f(f);
  std::vector<double> out;
  for (const auto& q : triangle_fractions(f, y1)) out.push_back(ratio_or_inf(q.num, q.den));
  return out;
}

std::vector<double> quad_ordinates(double f, double y1) {
  check_f(f);
  std::vector<double> out;
  for (const auto& q : quad_fractions(f, y1)) out.push_back(ratio_or_inf(q.num, q.den));
  return out;
}

ProjPoint parabola_chord_pole(double f, double ya, double yb) {
  if (std::isinf(ya) && std::isinf(yb)) throw Error(ErrorCode::SingularParameter, "chord between two infinite points");
  if (std::isinf(ya)) std::swap(ya, yb);
  if (std::isinf(yb)) return ProjPoint::at_infinity(-ya / (4 * f), 0.5);
  return ProjPoint::finite(-ya * yb / (4 * f), 0.5 * (ya + yb));
}

Orbit triangle_orbit(double f, double y1) {
  check_f(f);
  return orbit_from(FamilyConfig::parabola(3, f, closure_ratio(3) * f), y1, triangle_fractions(f, y1));
}

Orbit quad_orbit(double f, double y1) {
  check_f(f);
  return orbit_from(FamilyConfig::parabola(4, f, closure_ratio(4) * f), y1, quad_fractions(f, y1));
}

std::vector<ProjPoint> polar_triangle(double f, double y1) {
  check_f(f);
  const double delta = std::sqrt(y1 * y1 * y1 * y1 + 8 * f * f * y1 * y1 + 16 * (8 * kS2 - 11) * f * f * f * f);
  const double d3 = (3 + 2 * kS2) * y1 * y1 - 4 * f * f;
  if (std::abs(d3) <= 1e-9 * (f * f + y1 * y1)) {
    // Q2 is 0/0 here; the side poles are exact.
    const auto ys = triangle_ordinates(f, y1);
    return {parabola_chord_pole(f, ys[0], ys[1]), parabola_chord_pole(f, ys[1], ys[2]),
            parabola_chord_pole(f, ys[2], ys[0])};
  }
  const double k = 1 + kS2;
  const double den = 2 * d3;
  const double c = (1 + kS2) * y1 * y1 * y1 - 4 * (1 + kS2) * f * f * y1;
  const ProjPoint q1 = ProjPoint::finite(k * (4 * f * y1 + delta) * y1 / den, k * (c - 2 * delta * f) / den);
  const ProjPoint q2 = ProjPoint::finite(k * (4 * f * y1 - delta) * y1 / den, k * (c + 2 * delta * f) / den);
  const ProjPoint q3 =
      ProjPoint::finite(k * (5 - 3 * kS2) * ((1 + 2 * kS2) * y1 * y1 - 28 * f * f) * f / (7 * d3), -k * 8 * f * f * y1 / d3);
  return {q1, q3, q2};
}

std::vector<ProjPoint> polar_quad(double f, double y1) {
  check_f(f);
  const auto ys = quad_ordinates(f, y1);
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < 4; ++i) out.push_back(parabola_chord_pole(f, ys[i], ys[(i + 1) % 4]));
  return out;
}

Conic polar_hyperbola(int N, double f) {
  check_f(f);
  if (N == 3) {
    const double a = kS2 + 1.5;
    return {a, 0.0, -0.5, -2 * a * f, 0.0, (a - 2) * f * f};
  }
  if (N == 4) {
    const double a = kS5 + 2;  // 1/(sqrt5 - 2)
    return {a, 0.0, -1.0, -2 * a * f, 0.0, (a - 4) * f * f};
  }
  throw Error(ErrorCode::Unsupported, "polar hyperbola is known for N = 3, 4");
}

Vec2 quad_diagonal_point(double f) { return {(2 - kS5) * f, 0.0}; }

}  // namespace parapon
