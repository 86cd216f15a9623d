#include "parapon/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace parapon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ProjPoint tidy(const ProjPoint& p) {
  if (p.is_finite(1e-13)) return ProjPoint::finite(p.x / p.w, p.y / p.w);
  const Vec3 v = Vec3(p.x, p.y, 0.0).normalized();
  return {v.x(), v.y(), 0.0};
}

double wrap_positive(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

struct ArcFrame {
  ConicClass kind = ConicClass::Empty;
  Vec2 origin = Vec2::Zero();
  Vec2 u = Vec2::UnitX();
  Vec2 v = Vec2::UnitY();
  double a = 1.0;
  double b = 1.0;
};

ArcFrame make_arc_frame(const Conic& outer) {
  const ConicFeatures feat = conic_features(outer);
  ArcFrame fr;
  fr.kind = feat.kind;
  switch (feat.kind) {
    case ConicClass::Parabola: {
      const Vec2 o = *feat.opening;
      fr.origin = feat.vertices.front();
      fr.u = o;
      fr.v = Vec2(o.y(), -o.x());
      fr.a = *feat.focal_distance;
      return fr;
    }
    case ConicClass::Circle:
      fr.origin = *feat.center;
      fr.a = fr.b = *feat.radius;
      return fr;
    case ConicClass::Ellipse: {
      fr.origin = *feat.center;
      fr.u = *feat.axis;
      fr.v = Vec2(-fr.u.y(), fr.u.x());
      fr.a = feat.semi_axes->x();
      fr.b = feat.semi_axes->y();
      return fr;
    }
    default:
      throw Error(ErrorCode::Unsupported, "arc parameter needs a parabola, ellipse or circle");
  }
}

double arc_value(const ArcFrame& fr, const ProjPoint& p) {
  if (fr.kind == ConicClass::Parabola) {
    if (!p.is_finite()) return std::numbers::pi;
    const double eta = (p.cartesian() - fr.origin).dot(fr.v);
    return 2.0 * std::atan(eta / (2.0 * fr.a));
  }
  const Vec2 q = p.cartesian() - fr.origin;
  return std::atan2(q.dot(fr.v) / fr.b, q.dot(fr.u) / fr.a);
}

// Direction of travel along the axis-parallel line through an infinite point of a parabola.
Vec2 inward_direction(const Conic& outer, const ProjPoint& p) {
  Vec2 dir(p.x, p.y);
  const double s = (outer.A + outer.C) >= 0.0 ? 1.0 : -1.0;
  if (s * Vec2(outer.D, outer.E).dot(dir) < 0.0) dir = -dir;
  return dir.normalized();
}

}  // namespace

FamilyConfig FamilyConfig::parabola(int N, double f, double r) {
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
  if (!(f > 0.0) || !(r > 0.0)) throw Error(ErrorCode::OutOfRange, "f and r must be positive");
  FamilyConfig c;
  c.N = N;
  c.f = f;
  c.r = r;
  c.outer = ParabolaStd(f).to_conic();
  c.caustic = CircleSpec(Vec2(-f, 0.0), r).to_conic();
  c.caustic_center = Vec2(-f, 0.0);
  c.canonical_ = true;
  return c;
}

FamilyConfig FamilyConfig::general(int N, const Conic& outer, const CircleSpec& caustic) {
  FamilyConfig c = general(N, outer, caustic.to_conic());
  c.r = caustic.radius;
  return c;
}

FamilyConfig FamilyConfig::general(int N, const Conic& outer, const Conic& caustic) {
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
  FamilyConfig c;
  c.N = N;
  c.outer = outer;
  c.caustic = caustic;
  const ConicFeatures feat = conic_features(caustic);
  if (!feat.center) throw Error(ErrorCode::Unsupported, "caustic must be a central conic");
  c.caustic_center = *feat.center;
  const ConicFeatures of = conic_features(outer);
  c.f = of.focal_distance.value_or(0.0);
  return c;
}

bool Orbit::bounded(double tol) const {
  for (const auto& v : vertices)
    if (!v.is_finite(tol)) return false;
  for (const auto& v : polar_vertices)
    if (!v.is_finite(tol)) return false;
  return true;
}

std::vector<Vec2> Orbit::finite_vertices() const {
  std::vector<Vec2> out;
  for (const auto& v : vertices) out.push_back(v.cartesian());
  return out;
}

std::vector<Vec2> Orbit::finite_polar_vertices() const {
  std::vector<Vec2> out;
  for (const auto& v : polar_vertices) out.push_back(v.cartesian());
  return out;
}

ProjPoint transverse_step(const Conic& outer, const Conic& caustic, const Vec2& caustic_center, const ProjPoint& p,
                          int branch) {
  const auto lines = tangent_lines_from(caustic, p);
  if (lines.size() < 2) throw Error(ErrorCode::NoTangent, "no transverse tangent from the current point");
  const bool finite = p.is_finite();
  Vec2 inward = Vec2::Zero();
  if (!finite) inward = inward_direction(outer, p);

  const Line* chosen = nullptr;
  for (const auto& l : lines) {
    const Vec2 t = pole_point(caustic, l).cartesian();
    const Vec2 dir = finite ? Vec2(t - p.cartesian()) : inward;
    const double side = cross2(dir, caustic_center - t);
    if ((branch >= 0 ? side : -side) > 0.0) {
      chosen = &l;
      break;
    }
  }
  if (!chosen) throw Error(ErrorCode::NoTangent, "no tangent with the requested orientation");

  const auto hits = intersect_line_conic(outer, *chosen);
  const LineConicHit* best = nullptr;
  double best_d = -1.0;
  for (const auto& h : hits) {
    const double d = projective_distance(h.point, p);
    if (d > best_d) {
      best_d = d;
      best = &h;
    }
  }
  if (!best || best_d < 1e-12) throw Error(ErrorCode::DegenerateChord, "tangent chord meets the conic only once");
  return tidy(best->point);
}

ProjPoint transverse_step(const Conic& outer, const CircleSpec& caustic, const ProjPoint& p, int branch) {
  return transverse_step(outer, caustic.to_conic(), caustic.center, p, branch);
}

TransverseState transverse_step(const FamilyConfig& cfg, const TransverseState& s) {
  TransverseState next;
  next.current = transverse_step(cfg.outer, cfg.caustic, cfg.caustic_center, s.current);
  if (s.current.is_finite() && next.current.is_finite())
    next.previous_direction = (next.current.cartesian() - s.current.cartesian()).normalized();
  else if (!next.current.is_finite())
    next.previous_direction = Vec2(next.current.x, next.current.y).normalized();
  else
    next.previous_direction = inward_direction(cfg.outer, s.current);
  next.step_index = s.step_index + 1;
  return next;
}

double arc_parameter(const Conic& outer, const ProjPoint& p) { return arc_value(make_arc_frame(outer), p); }

double closure_defect(const Conic& outer, const Conic& caustic, const Vec2& caustic_center, const ProjPoint& start,
                      int N) {
  const ArcFrame fr = make_arc_frame(outer);
  ProjPoint p = start;
  double theta = arc_value(fr, p);
  double total = 0.0;
  for (int i = 0; i < N; ++i) {
    p = transverse_step(outer, caustic, caustic_center, p);
    const double t = arc_value(fr, p);
    total += wrap_positive(t - theta);
    theta = t;
  }
  return total - kTwoPi;
}

double closure_defect(const FamilyConfig& cfg, const ProjPoint& start) {
  return closure_defect(cfg.outer, cfg.caustic, cfg.caustic_center, start, cfg.N);
}

std::pair<double, double> default_closure_bracket(int N) {
  switch (N) {
    case 3: return {0.7, 0.9};
    case 4: return {0.95, 0.99};
    case 5: return {0.99, 0.999};
    case 6: return {0.999, 0.9999};
    default: break;
  }
  throw Error(ErrorCode::Unsupported, "no fixed bracket for N=" + std::to_string(N));
}

namespace {

double parabola_defect(double f, int N, double ratio) {
  const FamilyConfig cfg = FamilyConfig::parabola(N, f, ratio * f);
  return closure_defect(cfg, ParabolaStd(f).point_at(0.3 * f));
}

}  // namespace

ClosureSolve solve_closure(double f, int N, std::optional<std::pair<double, double>> bracket) {
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
  if (!(f > 0.0)) throw Error(ErrorCode::OutOfRange, "f must be positive");
  double lo, hi, glo, ghi;
  if (bracket) {
    lo = bracket->first;
    hi = bracket->second;
    if (!(lo > 0.0 && hi > lo && hi < 1.0)) throw Error(ErrorCode::BadBracket, "bracket must satisfy 0 < lo < hi < 1");
    glo = parabola_defect(f, N, lo);
    ghi = parabola_defect(f, N, hi);
  } else if (N <= 6) {
    std::tie(lo, hi) = default_closure_bracket(N);
    glo = parabola_defect(f, N, lo);
    ghi = parabola_defect(f, N, hi);
  } else {
    lo = solve_closure(f, N - 1).r / f;
    glo = parabola_defect(f, N, lo);
    hi = lo;
    ghi = glo;
    const bool lo_neg = glo < 0.0;
    for (int k = 1; k <= 50 && (ghi < 0.0) == lo_neg; ++k) {
      lo = hi;
      glo = ghi;
      hi = 1.0 - (1.0 - lo) * 0.5;
      ghi = parabola_defect(f, N, hi);
    }
  }
  if (!((glo < 0.0) != (ghi < 0.0)))
    throw Error(ErrorCode::BadBracket, "closure defect does not change sign on [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
  ClosureSolve out;
  out.lo = lo;
  out.hi = hi;
  int it = 0;
  double mid = 0.5 * (lo + hi), gmid = 0.0;
  while (it < 200) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    gmid = parabola_defect(f, N, mid);
    ++it;
    if (gmid == 0.0) break;
    if ((gmid < 0.0) == (glo < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  out.r = mid * f;
  out.defect = gmid;
  out.iterations = it;
  return out;
}

double solve_closure_radius(double f, int N, std::optional<std::pair<double, double>> bracket) {
  return solve_closure(f, N, bracket).r;
}

std::vector<double> singular_parameters(const FamilyConfig& cfg) {
  if (!cfg.is_canonical_parabola()) throw Error(ErrorCode::Unsupported, "singular set needs the canonical parabola");
  std::vector<double> out;
  ProjPoint p = ProjPoint::at_infinity(1.0, 0.0);
  for (int i = 0; i + 1 < cfg.N; ++i) {
    p = transverse_step(cfg.outer, cfg.caustic, cfg.caustic_center, p);
    if (p.is_finite()) out.push_back(p.cartesian().y());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Orbit make_orbit(const FamilyConfig& cfg, double y1, const FamilyOptions& opt) {
  if (!cfg.is_canonical_parabola()) throw Error(ErrorCode::Unsupported, "y1 parametrization needs the canonical parabola");
  const ArcFrame fr = make_arc_frame(cfg.outer);
  Orbit o;
  o.family = cfg;
  o.y1 = y1;
  ProjPoint p = ParabolaStd(cfg.f).point_at(y1);
  double theta = arc_value(fr, p);
  double total = 0.0;
  for (int i = 0; i < cfg.N; ++i) {
    o.vertices.push_back(p);
    p = transverse_step(cfg.outer, cfg.caustic, cfg.caustic_center, p);
    const double t = arc_value(fr, p);
    total += wrap_positive(t - theta);
    theta = t;
  }
  o.closure_defect = total - kTwoPi;
  if (opt.require_closure && std::abs(o.closure_defect) > opt.closure_tol)
    throw Error(ErrorCode::ClosureViolation, "orbit does not close (defect " + std::to_string(o.closure_defect) + ")");
  o.polar_vertices = polar_polygon(cfg.outer, o.vertices);
  for (auto& q : o.polar_vertices) q = tidy(q);
  return o;
}

FamilyBatch generate_family(const FamilyConfig& cfg, const std::vector<double>& params, const FamilyOptions& opt) {
  FamilyBatch out;
  for (double s : singular_parameters(cfg)) {
    const double h = opt.gap_eps * std::max(cfg.f, std::abs(s));
    out.gaps.push_back({s - h, s + h});
  }
  for (double y1 : params) {
    const bool in_gap = std::any_of(out.gaps.begin(), out.gaps.end(),
                                    [&](const ParamGap& g) { return y1 >= g.lo && y1 <= g.hi; });
    if (in_gap) continue;
    try {
      out.orbits.push_back(make_orbit(cfg, y1, opt));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ClosureViolation) throw;
      out.gaps.push_back({y1, y1});
    }
  }
  std::sort(out.gaps.begin(), out.gaps.end(), [](const ParamGap& a, const ParamGap& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace parapon
