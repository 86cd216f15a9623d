#include "parapon/bicentric.hpp"

#include <cmath>

#include "parapon/engine.hpp"

#include <Eigen/Dense>

namespace parapon {

BicentricConfig::BicentricConfig(double R_, double r_, double d_, int N_) : R(R_), r(r_), d(d_), N(N_) {
  if (!(R > 0.0) || !(r > 0.0) || !(d >= 0.0)) throw Error(ErrorCode::OutOfRange, "bicentric radii must be positive");
  if (!(d + r < R)) throw Error(ErrorCode::OutOfRange, "incircle must lie inside the circumcircle");
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
}

BicentricConfig euler_triangle(double R, double k) {
  const double r = k == 0.0 ? 0.5 * R : R * (std::sqrt(1.0 + k * k) - 1.0) / (k * k);
  return {R, r, k * r, 3};
}

double bicentric_defect(const BicentricConfig& cfg, double t) {
  const CircleSpec in = cfg.incircle();
  const ProjPoint start = ProjPoint::finite(cfg.R * std::cos(t), cfg.R * std::sin(t));
  return closure_defect(cfg.circumcircle().to_conic(), in.to_conic(), in.center, start, cfg.N);
}

double bicentric_closure_ratio(int N) {
  if (N < 3 || N > 6) throw Error(ErrorCode::Unsupported, "closure ratio tabulated for N = 3..6");
  auto g = [N](double x) { return bicentric_defect(BicentricConfig(1.0, x, x, N), 0.3); };
  double lo = 0.4, hi = 0.5 * (1.0 - 1e-9);
  double glo = g(lo), ghi = g(hi);
  if (glo * ghi > 0.0) throw Error(ErrorCode::BadBracket, "bicentric defect has no sign change on [0.4, 0.5)");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bicentric_closure_polynomial(int N, double r) {
  const double r2 = r * r;
  switch (N) {
    case 3: return r2 + 2.0 * r - 1.0;
    case 4: return r2 * r2 + 4.0 * r2 - 1.0;
    case 5: return ((((((r + 6.0) * r - 7.0) * r + 4.0) * r + 7.0) * r - 2.0) * r) - 1.0;
    case 6: return (((r2 + 24.0) * r2 - 22.0) * r2 + 16.0) * r2 - 3.0;
    default: break;
  }
  throw Error(ErrorCode::Unsupported, "closure polynomial tabulated for N = 3..6");
}

std::vector<Vec2> bicentric_chain(const BicentricConfig& cfg, double t) {
  const Conic outer = cfg.circumcircle().to_conic();
  const CircleSpec in = cfg.incircle();
  const Conic caustic = in.to_conic();
  std::vector<Vec2> out;
  ProjPoint p = ProjPoint::finite(cfg.R * std::cos(t), cfg.R * std::sin(t));
  for (int i = 0; i < cfg.N; ++i) {
    out.push_back(p.cartesian());
    p = transverse_step(outer, caustic, in.center, p);
  }
  return out;
}

std::vector<Vec2> bicentric_orbit(const BicentricConfig& cfg, double t, double tol) {
  const double defect = bicentric_defect(cfg, t);
  if (std::abs(defect) > tol)
    throw Error(ErrorCode::ClosureViolation, "bicentric pair does not close (defect " + std::to_string(defect) + ")");
  return bicentric_chain(cfg, t);
}

std::vector<ProjPoint> bicentric_polar_polygon(const BicentricConfig& cfg, const std::vector<Vec2>& orbit) {
  std::vector<ProjPoint> v;
  for (const auto& p : orbit) v.push_back(ProjPoint::finite(p));
  return polar_polygon(cfg.circumcircle().to_conic(), v);
}

double pedal_distance_sum(const BicentricConfig&, const std::vector<Vec2>& orbit) {
  double s = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const Line l = Line::through(ProjPoint::finite(orbit[i]), ProjPoint::finite(orbit[(i + 1) % orbit.size()]));
    s += l.distance_to(Vec2::Zero());
  }
  return s;
}

double pedal_distance_sum(const BicentricConfig& cfg, double t) { return pedal_distance_sum(cfg, bicentric_orbit(cfg, t)); }

double signed_pedal_distance_sum(const BicentricConfig& cfg, const std::vector<Vec2>& orbit) {
  const Vec2 o2(cfg.d, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const Line l = Line::through(ProjPoint::finite(orbit[i]), ProjPoint::finite(orbit[(i + 1) % orbit.size()]));
    const double dist = l.distance_to(Vec2::Zero());
    const bool separates = l.eval(ProjPoint::finite(0.0, 0.0)) * l.eval(ProjPoint::finite(o2)) < 0.0;
    s += separates ? -dist : dist;
  }
  return s;
}

PolarImage polar_image_family(const BicentricConfig& cfg) {
  const Mat3 m = cfg.circumcircle().to_conic().matrix();
  const Mat3 c = cfg.incircle().to_conic().matrix();
  PolarImage out;
  out.outer = Conic::from_matrix(m * c.inverse() * m).normalized();
  out.caustic = cfg.circumcircle();
  out.kind = classify_conic(out.outer);
  return out;
}

}  // namespace parapon
