#include "parapon/verify.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "parapon/curves.hpp"
#include "parapon/family.hpp"

namespace parapon {

namespace {

constexpr double kPi = std::numbers::pi;
const double kS2 = std::sqrt(2.0);
const double kS5 = std::sqrt(5.0);

double interior_angle(const Vec2& prev, const Vec2& at, const Vec2& next) {
  const Vec2 a = prev - at, b = next - at;
  return std::atan2(std::abs(cross2(a, b)), a.dot(b));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt(const Vec2& v) { return "(" + fmt(v.x()) + ", " + fmt(v.y()) + ")"; }

Vec2 mean_of(const std::vector<Vec2>& pts) {
  Vec2 m = Vec2::Zero();
  for (const auto& p : pts) m += p;
  return pts.empty() ? m : Vec2(m / static_cast<double>(pts.size()));
}

// Distance between two projective points: relative for finite ones, sine of
// the angle for two points at infinity, 1 for a mixed pair.
double proj_distance(const ProjPoint& a, const ProjPoint& b) {
  const bool fa = a.is_finite(), fb = b.is_finite();
  if (fa && fb) {
    const Vec2 pa = a.cartesian(), pb = b.cartesian();
    return (pa - pb).norm() / std::max(1.0, pa.norm());
  }
  if (!fa && !fb) {
    const Vec2 da = Vec2(a.x, a.y).normalized(), db = Vec2(b.x, b.y).normalized();
    return std::abs(cross2(da, db));
  }
  return 1.0;
}

// Largest distance from a vertex of one polygon to the nearest vertex of the other.
double vertex_set_distance(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b) {
  if (a.size() != b.size()) return 1.0;
  double worst = 0.0;
  for (const auto& p : a) {
    double best = 1.0;
    for (const auto& q : b) best = std::min(best, proj_distance(p, q));
    worst = std::max(worst, best);
  }
  for (const auto& q : b) {
    double best = 1.0;
    for (const auto& p : a) best = std::min(best, proj_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> angles(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 2.0 * kPi * (i + 0.5) / n;
  return v;
}

bool all_finite(const std::vector<ProjPoint>& v) {
  return std::all_of(v.begin(), v.end(), [](const ProjPoint& p) { return p.is_finite(); });
}

struct Ctx {
  const SuiteConfig& cfg;
  double p = 1.0;

  bool perturbed() const { return p != 1.0; }

  double tol(const std::string& name, const std::string& key) const {
    if (auto it = cfg.tolerance_overrides.find(name); it != cfg.tolerance_overrides.end()) return it->second;
    if (auto it = cfg.tolerance_overrides.find(key); it != cfg.tolerance_overrides.end()) return it->second;
    return default_tolerance(key);
  }

  FamilyConfig family(int N) const { return FamilyConfig::parabola(N, cfg.f, closure_ratio(N) * cfg.f * p); }

  TraceOptions options() const {
    TraceOptions o;
    o.family.require_closure = !perturbed();
    return o;
  }

  LocusTrace trace(int N, const LocusTarget& t, bool refine = false, int count = 0) const {
    ParameterGrid g = cfg.grid;
    g.refine_singular = refine;
    if (count > 0) g.count = count;
    return trace_locus(family(N), t, g, options());
  }

  Orbit orbit(int N, double y1) const {
    FamilyOptions o;
    o.require_closure = !perturbed();
    return make_orbit(family(N), y1, o);
  }
};

struct CheckDef {
  std::string name;
  std::string key;
  std::string claim;
  std::string family;
  CheckKind kind;
  bool sensitive;
  bool must_exceed;
  // Fills samples, max_abs_deviation, mean_value and detail.
  std::function<void(const Ctx&, InvariantReport&)> run;
};

void parabola_fit_check(const LocusTrace& tr, const Vec2& focus, const Vec2& vertex, InvariantReport& r) {
  const FitResult fit = fit_conic(tr);
  r.samples = tr.samples.size();
  if (!fit.features || fit.features->kind != ConicClass::Parabola || fit.features->foci.empty() ||
      fit.features->vertices.empty()) {
    r.max_abs_deviation = std::numeric_limits<double>::infinity();
    r.detail = "fit is not a parabola, rms " + fmt(fit.rms_residual);
    return;
  }
  const Vec2 F = fit.features->foci[0], V = fit.features->vertices[0];
  r.max_abs_deviation = std::max({(F - focus).norm(), (V - vertex).norm(), fit.rms_residual});
  r.mean_value = *fit.features->focal_distance;
  r.detail = "focus " + fmt(F) + " vertex " + fmt(V) + " focal distance " + fmt(*fit.features->focal_distance) +
             " rms " + fmt(fit.rms_residual);
}

void focal_length_check(const LocusTrace& tr, double focal, double vertex_x, InvariantReport& r) {
  const FitResult fit = fit_conic(tr);
  r.samples = tr.samples.size();
  if (!fit.features || fit.features->kind != ConicClass::Parabola || fit.features->vertices.empty()) {
    r.max_abs_deviation = std::numeric_limits<double>::infinity();
    r.detail = "fit is not a parabola, rms " + fmt(fit.rms_residual);
    return;
  }
  const Vec2 V = fit.features->vertices[0];
  const double fd = *fit.features->focal_distance;
  r.max_abs_deviation = std::max({std::abs(fd - focal), (V - Vec2(vertex_x, 0.0)).norm(), fit.rms_residual});
  r.mean_value = fd;
  r.detail = "focal distance " + fmt(fd) + " vertex " + fmt(V) + " rms " + fmt(fit.rms_residual);
}

void axis_tilt_check(const std::vector<LocusTrace>& traces, InvariantReport& r) {
  double worst = 0.0;
  for (const auto& tr : traces) {
    const FitResult fit = fit_conic(tr);
    r.samples += tr.samples.size();
    if (!fit.features || !fit.features->axis) {
      worst = std::numeric_limits<double>::infinity();
      r.detail += tr.target.name() + ": no axis; ";
      continue;
    }
    const double tilt = std::abs(fit.features->axis->y());
    worst = std::max(worst, tilt);
    r.detail += tr.target.name() + " tilt " + fmt(tilt) + "; ";
  }
  r.max_abs_deviation = worst;
}

void vertical_line_check(const LocusTrace& tr, double x, InvariantReport& r) {
  double worst = 0.0, sum = 0.0;
  for (const auto& s : tr.samples) {
    worst = std::max(worst, std::abs(s.point.x() - x));
    sum += s.point.x();
  }
  r.samples = tr.samples.size();
  r.mean_value = sum / static_cast<double>(tr.samples.size());
  r.max_abs_deviation = worst;
  r.detail = "expected x = " + fmt(x) + ", mean x = " + fmt(r.mean_value);
}

void stationary_at(const LocusTrace& tr, const Vec2& at, InvariantReport& r) {
  double worst = 0.0;
  for (const auto& s : tr.samples) worst = std::max(worst, (s.point - at).norm());
  r.samples = tr.samples.size();
  r.max_abs_deviation = worst;
  r.mean_value = mean_of(tr.points()).x();
  r.detail = "expected " + fmt(at) + ", mean " + fmt(mean_of(tr.points()));
}

void implicit_check(const LocusTrace& tr, const BivariatePoly& poly, InvariantReport& r) {
  const ImplicitResidual res = implicit_residual(tr, poly);
  r.samples = tr.samples.size() - static_cast<std::size_t>(res.flagged);
  r.max_abs_deviation = res.max_normalized;
  r.detail = "degree " + std::to_string(poly.degree()) + ", flagged " + std::to_string(res.flagged);
}

void not_line_check(const LocusTrace& tr, InvariantReport& r) {
  const FitResult fit = fit_line(tr);
  r.samples = tr.samples.size();
  r.max_abs_deviation = fit.max_residual;
  r.mean_value = fit.rms_residual;
  r.detail = "line fit rms " + fmt(fit.rms_residual) + " max " + fmt(fit.max_residual);
}

Strip polished_strip(const LocusTrace& tr, const FamilyOptions& opt);

void strip_check(const LocusTrace& tr, double expected, InvariantReport& r, const Ctx& c) {
  const Strip s = polished_strip(tr, c.options().family);
  r.samples = tr.samples.size();
  r.mean_value = s.width;
  r.max_abs_deviation = std::abs(s.width - expected) / expected;
  r.detail = "width " + fmt(s.width) + " = f/" + fmt(1.0 / s.width) + ", strip [" + fmt(s.x_lo) + ", " + fmt(s.x_hi) + "]";
}

// Strip of a trace with interior extrema of x polished by golden-section search over y1.
Strip polished_strip(const LocusTrace& tr, const FamilyOptions& opt) {
  Strip s = strip_width(tr);
  const auto& v = tr.samples;
  auto x_at = [&](double y1) -> std::optional<double> {
    try {
      const auto p = evaluate_target(make_orbit(tr.family, y1, opt), tr.target);
      if (p) return p->x();
    } catch (const Error&) {
    }
    return std::nullopt;
  };
  auto polish = [&](std::size_t i, double sign) {
    if (i == 0 || i + 1 >= v.size()) return;
    double a = v[i - 1].y1, b = v[i + 1].y1;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = sign * v[i].point.x();
    for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
      const double c = b - g * (b - a), d = a + g * (b - a);
      const auto fc = x_at(c), fd = x_at(d);
      if (!fc || !fd) return;
      if (sign * *fc < sign * *fd) {
        b = d;
        best = std::min(best, sign * *fc);
      } else {
        a = c;
        best = std::min(best, sign * *fd);
      }
    }
    (sign > 0 ? s.x_lo : s.x_hi) = sign * best;
  };
  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].point.x() < v[imin].point.x()) imin = i;
    if (v[i].point.x() > v[imax].point.x()) imax = i;
  }
  polish(imin, 1.0);
  polish(imax, -1.0);
  s.width = s.x_hi - s.x_lo;
  return s;
}

void strip_bounds_check(const LocusTrace& tr, std::pair<double, double> bounds, InvariantReport& r, const Ctx& c) {
  const Strip s = polished_strip(tr, c.options().family);
  const double lo = std::min(bounds.first, bounds.second), hi = std::max(bounds.first, bounds.second);
  r.samples = tr.samples.size();
  r.mean_value = s.width;
  r.max_abs_deviation = std::max(std::abs(s.x_lo - lo), std::abs(s.x_hi - hi));
  r.detail = "strip [" + fmt(s.x_lo) + ", " + fmt(s.x_hi) + "] vs [" + fmt(lo) + ", " + fmt(hi) + "]";
}

// Sampson distance of the polar vertices of a family to a conic.
void conic_membership_check(const Ctx& c, int N, const Conic& conic, InvariantReport& r) {
  const Mat3 M = conic.normalized().matrix();
  const FamilyBatch b = generate_family(c.family(N), c.cfg.grid.values(c.cfg.f), c.options().family);
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto& o : b.orbits)
    for (const auto& v : o.finite_polar_vertices()) {
      const Vec3 h(v.x(), v.y(), 1.0);
      const double val = h.dot(M * h);
      const Vec3 g = 2.0 * (M * h);
      const double gn = std::hypot(g.x(), g.y());
      worst = std::max(worst, gn > 0.0 ? std::abs(val) / gn : std::abs(val));
      ++n;
    }
  r.samples = n;
  r.max_abs_deviation = worst;
}

void closure_table_check(int N, double expected, InvariantReport& r, const Ctx& c) {
  const double ratio = solve_closure_radius(c.cfg.f, N) / c.cfg.f;
  r.samples = 1;
  r.mean_value = ratio;
  r.max_abs_deviation = std::abs(ratio - expected);
  r.detail = "r/f = " + fmt(ratio) + " expected " + fmt(expected);
}

void porism_check(int N, InvariantReport& r, const Ctx& c) {
  const FamilyConfig fam = c.family(N);
  double worst = 0.0;
  int n = 0;
  for (double y : linspace(-6.0, 6.0, 20)) {
    const double y1 = y * c.cfg.f + 0.0137 * c.cfg.f;
    const Vec2 p(-y1 * y1 / (4.0 * c.cfg.f), y1);
    worst = std::max(worst, std::abs(closure_defect(fam, ProjPoint::finite(p))));
    ++n;
  }
  r.samples = static_cast<std::size_t>(n);
  r.max_abs_deviation = worst;
  r.mean_value = fam.r / fam.f;
  r.detail = "r/f = " + fmt(fam.r / fam.f);
}

// Relative spread of a sequence.
double relative_variation(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::infinity();
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (*mx - *mn) / std::abs(mean);
}

BicentricConfig euler_family(double k, double p) {
  const BicentricConfig e = euler_triangle(1.0, k);
  return BicentricConfig(e.R, e.r * p, e.d, 3);
}

struct ConservedSamples {
  std::vector<double> sums;
  std::vector<double> pedal;
  int distal = 0;
  int skipped = 0;
};

ConservedSamples conserved_samples(const BicentricConfig& b, int count) {
  ConservedSamples out;
  const PolarFrame frame = polar_frame(b);
  for (double t : angles(count)) {
    const auto chain = bicentric_chain(b, t);
    const auto poly = bicentric_polar_polygon(b, chain);
    if (!all_finite(poly)) {
      ++out.skipped;
      continue;
    }
    if (frame.kind == ConicClass::Hyperbola) {
      for (const auto& v : poly)
        if ((v.cartesian() - frame.conic_center).dot(frame.duality_center - frame.conic_center) < 0.0) {
          ++out.distal;
          break;
        }
    }
    out.sums.push_back(conserved_half_angle_sum(poly, frame));
    out.pedal.push_back(signed_pedal_distance_sum(b, chain) / b.R);
  }
  return out;
}

void conserved_check(double k, InvariantReport& r, const Ctx& c) {
  const ConservedSamples s = conserved_samples(euler_family(k, c.p), 200);
  r.samples = s.sums.size();
  r.max_abs_deviation = relative_variation(s.sums);
  r.mean_value = s.sums.empty() ? 0.0 : s.sums.front();
  r.detail = "distal configurations " + std::to_string(s.distal) + ", skipped " + std::to_string(s.skipped);
}

void conserved_equality_check(double k, InvariantReport& r, const Ctx& c) {
  const ConservedSamples s = conserved_samples(euler_family(k, c.p), 200);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.sums.size(); ++i) worst = std::max(worst, std::abs(s.sums[i] - s.pedal[i]));
  r.samples = s.sums.size();
  r.max_abs_deviation = worst;
  r.mean_value = s.pedal.empty() ? 0.0 : s.pedal.front();
  r.detail = "distal configurations " + std::to_string(s.distal);
}

void pedal_check(int N, InvariantReport& r, const Ctx& c) {
  const double ratio = bicentric_closure_ratio(N);
  const BicentricConfig b(1.0, ratio * c.p, ratio, N);
  std::vector<double> v;
  for (double t : angles(200)) v.push_back(signed_pedal_distance_sum(b, bicentric_chain(b, t)));
  r.samples = v.size();
  r.max_abs_deviation = relative_variation(v);
  r.mean_value = v.front();
  r.detail = "r_b = d = " + fmt(ratio);
}

void appendix_a_check(int N, InvariantReport& r, const Ctx& c) {
  const double f = c.cfg.f;
  double worst = 0.0;
  int n = 0;
  for (double y : linspace(-6.0, 6.0, 50)) {
    const double y1 = y * f;
    const Orbit eng = c.orbit(N, y1);
    const Orbit cf = N == 3 ? triangle_orbit(f, y1) : quad_orbit(f, y1);
    const auto polar = N == 3 ? polar_triangle(f, y1) : polar_quad(f, y1);
    worst = std::max(worst, vertex_set_distance(eng.vertices, cf.vertices));
    worst = std::max(worst, vertex_set_distance(eng.polar_vertices, polar));
    ++n;
  }
  r.samples = static_cast<std::size_t>(n);
  r.max_abs_deviation = worst;
}

void conjecture_parabola(int N, CentroidKind k, InvariantReport& r, const Ctx& c) {
  const LocusTrace tr = c.trace(N, LocusTarget::of_centroid(k));
  const FitResult fit = fit_conic(tr);
  r.samples = tr.samples.size();
  const bool parabola = fit.features && fit.features->kind == ConicClass::Parabola && fit.features->axis;
  const double tilt = parabola ? std::abs(fit.features->axis->y()) : 1.0;
  r.max_abs_deviation = std::max(fit.rms_residual, tilt);
  r.mean_value = parabola ? *fit.features->focal_distance : 0.0;
  r.detail = std::string(parabola ? "parabola" : "not a parabola") + ", rms " + fmt(fit.rms_residual) + ", tilt " +
             fmt(tilt) + (parabola ? ", vertex " + fmt(fit.features->vertices[0]) : std::string());
}

void conjecture_line(int N, CentroidKind k, InvariantReport& r, const Ctx& c) {
  const LocusTrace tr = c.trace(N, LocusTarget::of_centroid(k, true));
  const FitResult fit = fit_line(tr);
  r.samples = tr.samples.size();
  r.max_abs_deviation = std::max(fit.rms_residual, fit.tilt);
  r.mean_value = 0.5 * (fit.x_min + fit.x_max);
  r.detail = "rms " + fmt(fit.rms_residual) + ", tilt " + fmt(fit.tilt) + ", x " + fmt(r.mean_value);
}

void conjecture_not_conic(int N, InvariantReport& r, const Ctx& c) {
  const LocusTrace tr = c.trace(N, LocusTarget::of_centroid(CentroidKind::Perimeter, true));
  const FitResult line = fit_line(tr);
  double conic_rms = std::numeric_limits<double>::infinity();
  try {
    conic_rms = fit_conic(tr).rms_residual;
  } catch (const Error&) {
  }
  r.samples = tr.samples.size();
  r.max_abs_deviation = std::min(line.rms_residual, conic_rms);
  r.detail = "line rms " + fmt(line.rms_residual) + ", conic rms " + fmt(conic_rms);
}

std::vector<CheckDef> registry() {
  using K = CheckKind;
  std::vector<CheckDef> d;
  auto add = [&d](std::string name, std::string key, std::string claim, std::string family, K kind, bool sens,
                  std::function<void(const Ctx&, InvariantReport&)> run, bool exceed = false) {
    d.push_back({std::move(name), std::move(key), std::move(claim), std::move(family), kind, sens, exceed, std::move(run)});
  };
  const double s2 = kS2, s5 = kS5;

  add("closure.n3.table", "closure.exact", "r/f = 2(sqrt2 - 1)", "N=3", K::Theorem, false,
      [s2](const Ctx& c, InvariantReport& r) { closure_table_check(3, 2.0 * (s2 - 1.0), r, c); });
  add("closure.n4.table", "closure.exact", "r/f = 2 sqrt(sqrt5 - 2)", "N=4", K::Theorem, false,
      [s5](const Ctx& c, InvariantReport& r) { closure_table_check(4, 2.0 * std::sqrt(s5 - 2.0), r, c); });
  add("closure.n5.table", "closure.table", "r/f = 0.995219", "N=5", K::Theorem, false,
      [](const Ctx& c, InvariantReport& r) { closure_table_check(5, 0.995219, r, c); });
  add("closure.n5.sextic", "closure.exact", "r/f is the root of the pentagon sextic", "N=5", K::Theorem, false,
      [](const Ctx& c, InvariantReport& r) {
        double lo = 0.99, hi = 0.999;
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (lo + hi);
          ((pentagon_closure_sextic(mid) < 0.0) == (pentagon_closure_sextic(lo) < 0.0) ? lo : hi) = mid;
        }
        closure_table_check(5, 0.5 * (lo + hi), r, c);
      });
  add("closure.n6.table", "closure.table", "r/f = 0.999183", "N=6", K::Theorem, false,
      [](const Ctx& c, InvariantReport& r) { closure_table_check(6, 0.999183, r, c); });
  for (int N = 3; N <= 6; ++N)
    add("closure.n" + std::to_string(N) + ".porism", "closure.defect", "every start closes after N steps",
        "N=" + std::to_string(N), K::Theorem, true, [N](const Ctx& c, InvariantReport& r) { porism_check(N, r, c); });

  add("x4.line", "incidence", "X4 sweeps a line parallel to the directrix", "N=3", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        const LocusTrace tr = c.trace(3, LocusTarget::of_center(4), false, 200);
        double m = 0.0, s = 0.0;
        for (const auto& p : tr.samples) m += p.point.x();
        m /= static_cast<double>(tr.samples.size());
        for (const auto& p : tr.samples) s += (p.point.x() - m) * (p.point.x() - m);
        r.samples = tr.samples.size();
        r.mean_value = m;
        r.max_abs_deviation = std::sqrt(s / static_cast<double>(tr.samples.size()));
        r.detail = "stdev of x, mean x = " + fmt(m);
      });
  add("x4.mean", "incidence", "X4 line is x = (5 - 2 sqrt2) f", "N=3", K::Theorem, true,
      [s2](const Ctx& c, InvariantReport& r) {
        const LocusTrace tr = c.trace(3, LocusTarget::of_center(4), false, 200);
        double m = 0.0;
        for (const auto& p : tr.samples) m += p.point.x();
        m /= static_cast<double>(tr.samples.size());
        r.samples = tr.samples.size();
        r.mean_value = m;
        r.max_abs_deviation = std::abs(m - (5.0 - 2.0 * s2) * c.cfg.f);
        r.detail = "mean x = " + fmt(m);
      });
  add("x4.classification", "count", "X4 of polar bicentric triangles: ellipse, line, hyperbola", "bicentric N=3",
      K::Theorem, false, [](const Ctx&, InvariantReport& r) {
        int bad = 0;
        for (const auto& e : x4_classification_sweep()) {
          bad += e.pass ? 0 : 1;
          r.detail += "d/r=" + fmt(e.ratio) + ": " + std::string(to_string(e.model)) + " " +
                      std::string(e.model == FitModel::Conic ? to_string(e.found) : std::string_view()) + "; ";
          r.samples += 1;
        }
        r.max_abs_deviation = bad;
      });

  struct ParabolaClaim {
    int k;
    Vec2 focus, vertex;
    double focal;
  };
  const std::vector<ParabolaClaim> pc = {
      {2, Vec2(-1.0 / 3.0, 0.0), Vec2(2.0 * (1.0 - 2.0 * s2) / 3.0, 0.0), 1.0 / 3.0},
      {3, Vec2(-(2.0 * s2 - 3.0) / 2.0, 0.0), Vec2(-(2.0 * s2 + 3.0) / 2.0, 0.0), (3.0 - 2.0 * s2) / 2.0},
      {10, Vec2(1.0 - 2.0 * s2, 0.0), Vec2(1.5 - 2.0 * s2, 0.0), 0.5},
  };
  for (const auto& q : pc) {
    const std::string x = "x" + std::to_string(q.k);
    add(x + ".parabola", "fit", "X" + std::to_string(q.k) + " locus is a coaxial parabola with the printed focus and vertex",
        "N=3", K::Theorem, true, [q](const Ctx& c, InvariantReport& r) {
          parabola_fit_check(c.trace(3, LocusTarget::of_center(q.k)), q.focus * c.cfg.f, q.vertex * c.cfg.f, r);
        });
    add(x + ".focal", "fit", "X" + std::to_string(q.k) + " parabola focal distance and vertex", "N=3", K::Theorem, true,
        [q](const Ctx& c, InvariantReport& r) {
          focal_length_check(c.trace(3, LocusTarget::of_center(q.k)), q.focal * c.cfg.f, q.vertex.x() * c.cfg.f, r);
        });
  }
  add("n3.axis", "axis", "X2, X3, X10 parabolas share the axis of the outer parabola", "N=3", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        axis_tilt_check({c.trace(3, LocusTarget::of_center(2)), c.trace(3, LocusTarget::of_center(3)),
                         c.trace(3, LocusTarget::of_center(10))},
                        r);
      });

  add("polar.n3.hyperbola", "conic", "polar triangle vertices lie on the hyperbola H", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) { conic_membership_check(c, 3, polar_hyperbola(3, c.cfg.f), r); });
  const std::vector<std::pair<int, double>> lines = {{2, (2.0 * s2 - 1.0) / 3.0}, {3, s2 - 1.0}, {6, 5.0 - 3.0 * s2}};
  for (const auto& [k, x] : lines)
    add("polar.x" + std::to_string(k) + ".line", "incidence", "X" + std::to_string(k) + "' sweeps a vertical line",
        "N=3 polar", K::Theorem, true, [k, x](const Ctx& c, InvariantReport& r) {
          vertical_line_check(c.trace(3, LocusTarget::of_center(k, true)), x * c.cfg.f, r);
        });
  add("polar.linear_spotcheck", "spotcheck", "X2', X3', X4', X5', X6', X20' loci are lines", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        double worst = 0.0;
        for (int k : {2, 3, 4, 5, 6, 20}) {
          const FitResult fit = fit_line(c.trace(3, LocusTarget::of_center(k, true)));
          worst = std::max({worst, fit.rms_residual, fit.tilt});
          r.samples += fit.samples;
          r.detail += "X" + std::to_string(k) + "' rms " + fmt(fit.rms_residual) + "; ";
        }
        r.max_abs_deviation = worst;
      });
  add("polar.euler_focus", "incidence", "Euler line of the polar triangle passes through the focus", "N=3 polar",
      K::Theorem, true, [](const Ctx& c, InvariantReport& r) {
        const FamilyBatch b = generate_family(c.family(3), c.cfg.grid.values(c.cfg.f), c.options().family);
        double worst = 0.0;
        for (const auto& o : b.orbits) {
          if (!all_finite(o.polar_vertices)) continue;
          try {
            worst = std::max(worst, euler_line_through_focus(o.finite_polar_vertices(), c.cfg.f));
            ++r.samples;
          } catch (const Error&) {
          }
        }
        r.max_abs_deviation = worst;
      });

  struct StationaryClaim {
    int k;
    Vec2 at;
    std::string claim;
  };
  const std::vector<StationaryClaim> st = {
      {26, Vec2(-1.0, 0.0), "X26' is stationary at the focus"},
      {68, Vec2(3.0 - 2.0 * s2, 0.0), "X68' is stationary at the left vertex of H"},
      {110, Vec2(2.0 * s2 - 1.0, 0.0), "X110' is stationary at the right vertex of H"},
      {161, Vec2(1.0 - 2.0 * s2, 0.0), "X161' is stationary at the left end of the caustic"},
  };
  for (const auto& s : st)
    add("polar.x" + std::to_string(s.k) + ".stationary", "incidence", s.claim, "N=3 polar", K::Theorem, true,
        [s](const Ctx& c, InvariantReport& r) {
          stationary_at(c.trace(3, LocusTarget::of_center(s.k, true)), s.at * c.cfg.f, r);
        });
  add("polar.x99.circle", "fit", "X99' sweeps a circle centered (6 sqrt2 - 7, 0) of radius 2 sqrt(17 - 12 sqrt2)",
      "N=3 polar", K::Theorem, true, [s2](const Ctx& c, InvariantReport& r) {
        const LocusTrace tr = c.trace(3, LocusTarget::of_center(99, true));
        const FitResult fit = fit_circle(tr);
        r.samples = tr.samples.size();
        if (fit.model != FitModel::Circle) {
          r.max_abs_deviation = std::numeric_limits<double>::infinity();
          r.detail = "circle fit fell back to a line";
          return;
        }
        const double f = c.cfg.f;
        const Vec2 center(fit.coefficients[0], fit.coefficients[1]);
        const double R = fit.coefficients[2];
        r.max_abs_deviation = std::max({(center - Vec2((6.0 * s2 - 7.0) * f, 0.0)).norm(),
                                        std::abs(R - 2.0 * f * std::sqrt(17.0 - 12.0 * s2)), fit.rms_residual});
        r.mean_value = R;
        r.detail = "center " + fmt(center) + " radius " + fmt(R) + " rms " + fmt(fit.rms_residual);
      });
  add("polar.pencil.x110", "conic", "X99' circle touches X110' at its right end", "N=3 polar", K::Theorem, true,
      [s2](const Ctx& c, InvariantReport& r) {
        const FitResult fit = fit_circle(c.trace(3, LocusTarget::of_center(99, true)));
        r.samples = fit.samples;
        r.max_abs_deviation = fit.model == FitModel::Circle
                                  ? std::abs(fit.coefficients[0] + fit.coefficients[2] - (2.0 * s2 - 1.0) * c.cfg.f)
                                  : std::numeric_limits<double>::infinity();
      });

  add("polar.x1.quartic", "quartic", "X1' satisfies the printed quartic", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        implicit_check(c.trace(3, LocusTarget::of_center(1, true)), polar_incenter_quartic(c.cfg.f), r);
      });
  add("polar.x1.not_line", "line.fail", "X1' is not a line", "N=3 polar", K::Theorem, false,
      [](const Ctx& c, InvariantReport& r) { not_line_check(c.trace(3, LocusTarget::of_center(1, true)), r); }, true);
  add("polar.x1.strip", "strip", "X1' lies in a vertical strip of width about f/850", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        strip_check(c.trace(3, LocusTarget::of_center(1, true), true), c.cfg.f / 850.0, r, c);
      });
  add("polar.x10.quartic", "quartic", "X10' satisfies the printed quartic", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        implicit_check(c.trace(3, LocusTarget::of_center(10, true)), polar_spieker_quartic(c.cfg.f), r);
      });
  add("polar.x10.not_line", "line.fail", "X10' is not a line", "N=3 polar", K::Theorem, false,
      [](const Ctx& c, InvariantReport& r) { not_line_check(c.trace(3, LocusTarget::of_center(10, true)), r); }, true);
  add("polar.x10.strip", "strip", "X10' lies in a vertical strip of width about f/1700", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        strip_check(c.trace(3, LocusTarget::of_center(10, true), true), c.cfg.f / 1700.0, r, c);
      });
  add("polar.x10.bounds", "fit", "X10' strip bounds match the printed lines", "N=3 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        strip_bounds_check(c.trace(3, LocusTarget::of_center(10, true), true), polar_spieker_strip(c.cfg.f), r, c);
      });

  for (bool polar : {false, true})
    add(polar ? "n4.w.polar" : "n4.w", "incidence",
        polar ? "diagonals of the polar quadrilateral meet at W" : "diagonals meet at W = ((2 - sqrt5) f, 0)",
        polar ? "N=4 polar" : "N=4", K::Theorem, true, [polar](const Ctx& c, InvariantReport& r) {
          stationary_at(c.trace(4, LocusTarget::diagonal_meet(polar)), quad_diagonal_point(c.cfg.f), r);
        });
  for (bool polar : {false, true})
    add(polar ? "n4.collinear.polar" : "n4.collinear", "collinear", "C0, C2 and W are collinear",
        polar ? "N=4 polar" : "N=4", K::Theorem, false, [polar](const Ctx& c, InvariantReport& r) {
          const LocusTrace t0 = c.trace(4, LocusTarget::of_centroid(CentroidKind::Vertex, polar));
          const LocusTrace t2 = c.trace(4, LocusTarget::of_centroid(CentroidKind::Area, polar));
          const LocusTrace tw = c.trace(4, LocusTarget::diagonal_meet(polar));
          double worst = 0.0;
          std::size_t i = 0, j = 0, k = 0;
          while (i < t0.samples.size() && j < t2.samples.size() && k < tw.samples.size()) {
            const double a = t0.samples[i].y1, b = t2.samples[j].y1, w = tw.samples[k].y1;
            const double m = std::max({a, b, w});
            if (a < m) { ++i; continue; }
            if (b < m) { ++j; continue; }
            if (w < m) { ++k; continue; }
            worst = std::max(worst, collinearity_check(t0.samples[i].point, t2.samples[j].point, tw.samples[k].point));
            ++r.samples;
            ++i, ++j, ++k;
          }
          r.max_abs_deviation = r.samples ? worst : std::numeric_limits<double>::infinity();
        });
  struct CentroidClaim {
    CentroidKind k;
    double focal, vertex;
  };
  const std::vector<CentroidClaim> cc = {{CentroidKind::Vertex, 0.25, -1.0},
                                         {CentroidKind::Perimeter, 0.5, (s5 - 5.0) / 2.0},
                                         {CentroidKind::Area, 1.0 / 3.0, s5 / 3.0 - 2.0}};
  for (const auto& q : cc) {
    const std::string n(to_string(q.k));
    add("n4." + n + ".parabola", "fit", n + " locus is a coaxial parabola, focal distance and vertex as tabulated", "N=4",
        K::Theorem, true, [q](const Ctx& c, InvariantReport& r) {
          focal_length_check(c.trace(4, LocusTarget::of_centroid(q.k)), q.focal * c.cfg.f, q.vertex * c.cfg.f, r);
        });
  }
  add("n4.axis", "axis", "C0, C1, C2 parabolas share the axis of the outer parabola", "N=4", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        axis_tilt_check({c.trace(4, LocusTarget::of_centroid(CentroidKind::Vertex)),
                         c.trace(4, LocusTarget::of_centroid(CentroidKind::Perimeter)),
                         c.trace(4, LocusTarget::of_centroid(CentroidKind::Area))},
                        r);
      });
  add("polar.n4.hyperbola", "conic", "polar quadrilateral vertices lie on the printed hyperbola", "N=4 polar",
      K::Theorem, true, [](const Ctx& c, InvariantReport& r) { conic_membership_check(c, 4, polar_hyperbola(4, c.cfg.f), r); });
  add("polar.n4.foci", "fit", "hyperbola through the polar vertices has foci (1 +/- 2 sqrt(sqrt5 - 1)) f", "N=4 polar",
      K::Theorem, true, [s5](const Ctx& c, InvariantReport& r) {
        const FamilyBatch b = generate_family(c.family(4), c.cfg.grid.values(c.cfg.f), c.options().family);
        std::vector<Vec2> pts;
        for (const auto& o : b.orbits)
          for (const auto& v : o.finite_polar_vertices()) pts.push_back(v);
        const FitResult fit = fit_conic(pts);
        r.samples = pts.size();
        if (!fit.features || fit.features->kind != ConicClass::Hyperbola || fit.features->foci.size() != 2) {
          r.max_abs_deviation = std::numeric_limits<double>::infinity();
          r.detail = "fit is not a hyperbola";
          return;
        }
        const double f = c.cfg.f, e = 2.0 * std::sqrt(s5 - 1.0);
        auto F = fit.features->foci;
        std::sort(F.begin(), F.end(), [](const Vec2& a, const Vec2& b) { return a.x() < b.x(); });
        r.max_abs_deviation = std::max({(F[0] - Vec2((1.0 - e) * f, 0.0)).norm(), (F[1] - Vec2((1.0 + e) * f, 0.0)).norm(),
                                        fit.rms_residual});
        r.detail = "foci " + fmt(F[0]) + " " + fmt(F[1]) + " rms " + fmt(fit.rms_residual);
      });
  add("polar.n4.c0.line", "incidence", "C0' sweeps the line x = (3 - sqrt5) f / 2", "N=4 polar", K::Theorem, true,
      [s5](const Ctx& c, InvariantReport& r) {
        vertical_line_check(c.trace(4, LocusTarget::of_centroid(CentroidKind::Vertex, true)), (3.0 - s5) / 2.0 * c.cfg.f, r);
      });
  add("polar.n4.c2.line", "incidence", "C2' sweeps the line x = (4 - sqrt5) f / 3", "N=4 polar", K::Theorem, true,
      [s5](const Ctx& c, InvariantReport& r) {
        vertical_line_check(c.trace(4, LocusTarget::of_centroid(CentroidKind::Area, true)), (4.0 - s5) / 3.0 * c.cfg.f, r);
      });
  add("polar.n4.c1.dectic", "dectic", "C1' satisfies the printed degree-10 curve", "N=4 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        implicit_check(c.trace(4, LocusTarget::of_centroid(CentroidKind::Perimeter, true)),
                       polar_perimeter_centroid_dectic(c.cfg.f), r);
      });
  add("polar.n4.c1.strip", "strip", "C1' lies in a vertical strip of width about f/25", "N=4 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        strip_check(c.trace(4, LocusTarget::of_centroid(CentroidKind::Perimeter, true), true), c.cfg.f / 25.0, r, c);
      });
  add("polar.n4.c1.bounds", "fit", "C1' strip bounds match the printed lines", "N=4 polar", K::Theorem, true,
      [](const Ctx& c, InvariantReport& r) {
        strip_bounds_check(c.trace(4, LocusTarget::of_centroid(CentroidKind::Perimeter, true), true),
                           polar_perimeter_centroid_strip(c.cfg.f), r, c);
      });

  for (int N : {5, 6}) {
    const std::string n = "n" + std::to_string(N);
    const std::string fam = "N=" + std::to_string(N);
    for (CentroidKind k : {CentroidKind::Vertex, CentroidKind::Perimeter, CentroidKind::Area})
      add("probe." + n + "." + std::string(to_string(k)), "probe", std::string(to_string(k)) + " locus is a coaxial parabola",
          fam, K::Conjecture, true, [N, k](const Ctx& c, InvariantReport& r) { conjecture_parabola(N, k, r, c); });
    for (CentroidKind k : {CentroidKind::Vertex, CentroidKind::Area})
      add("probe." + n + "." + std::string(to_string(k)) + ".polar", "probe",
          std::string(to_string(k)) + "' locus is a vertical line", fam + " polar", K::Conjecture, true,
          [N, k](const Ctx& c, InvariantReport& r) { conjecture_line(N, k, r, c); });
    add("probe." + n + ".C1.polar", "probe", "C1' locus is neither a line nor a conic", fam + " polar", K::Conjecture,
        false, [N](const Ctx& c, InvariantReport& r) { conjecture_not_conic(N, r, c); }, true);
  }

  const std::vector<std::pair<std::string, double>> ks = {{"ellipse", 0.8}, {"parabola", 1.0}, {"hyperbola", 1.2}};
  for (const auto& [name, k] : ks) {
    add("conserved." + name, "conserved", "sum of sin(theta_i / 2) is invariant over the polar family",
        "bicentric N=3 d=" + fmt(k) + "r", K::Theorem, true, [k](const Ctx& c, InvariantReport& r) { conserved_check(k, r, c); });
    add("conserved." + name + ".pedal", "conserved", "sum of sin(theta_i / 2) equals the signed pedal sum over R",
        "bicentric N=3 d=" + fmt(k) + "r", K::Theorem, false,
        [k](const Ctx& c, InvariantReport& r) { conserved_equality_check(k, r, c); });
  }
  for (int N = 3; N <= 6; ++N)
    add("pedal.n" + std::to_string(N), "conserved", "sum of distances from O to the sides is invariant",
        "bicentric N=" + std::to_string(N) + " d=r", K::Theorem, true, [N](const Ctx& c, InvariantReport& r) { pedal_check(N, r, c); });

  for (int N : {3, 4})
    add("appendix.n" + std::to_string(N), "equivalence", "closed-form vertices and polar vertices match iteration",
        "N=" + std::to_string(N), K::Theorem, true, [N](const Ctx& c, InvariantReport& r) { appendix_a_check(N, r, c); });

  const std::vector<double> printed = {0.414214, 0.485868, 0.49761, 0.499591};
  for (int N = 3; N <= 6; ++N) {
    const double want = printed[static_cast<std::size_t>(N - 3)];
    add("bicentric.n" + std::to_string(N) + ".ratio", "supplement", "d = r closure ratio " + fmt(want),
        "bicentric N=" + std::to_string(N), K::Theorem, false, [N, want](const Ctx&, InvariantReport& r) {
          const double x = bicentric_closure_ratio(N);
          r.samples = 1;
          r.mean_value = x;
          r.max_abs_deviation = std::abs(x - want);
          r.detail = "r/R = " + fmt(x);
        });
    add("bicentric.n" + std::to_string(N) + ".polynomial", "closure.exact", "ratio is a root of the closure polynomial",
        "bicentric N=" + std::to_string(N), K::Theorem, false, [N](const Ctx&, InvariantReport& r) {
          const double x = bicentric_closure_ratio(N);
          r.samples = 1;
          r.mean_value = x;
          r.max_abs_deviation = std::abs(bicentric_closure_polynomial(N, x));
          r.detail = N == 5 ? "corrected sextic" : "printed polynomial";
        });
  }

  add("bridge.focal", "closure.exact", "polar image of the d = r bicentric family has f = R^2 / (2 r)", "bicentric N=3",
      K::Theorem, true, [s2](const Ctx& c, InvariantReport& r) {
        const double rb = s2 - 1.0;
        const PolarImage img = polar_image_family(BicentricConfig(1.0, rb * c.p, rb, 3));
        const ConicFeatures feat = conic_features(img.outer, 1e-9);
        r.samples = 1;
        if (feat.kind != ConicClass::Parabola) {
          r.max_abs_deviation = std::numeric_limits<double>::infinity();
          r.detail = "polar image is not a parabola";
          return;
        }
        const double f = *feat.focal_distance;
        r.mean_value = f;
        r.max_abs_deviation =
            std::max(std::abs(f - (s2 + 1.0) / 2.0), std::abs(img.caustic.radius / f - 2.0 * (s2 - 1.0)));
        r.detail = "f = " + fmt(f) + ", r/f = " + fmt(img.caustic.radius / f) + ", focus " + fmt(feat.foci[0]);
      });
  add("bridge.focus", "collinear", "focus of the polar image is the circumcenter O", "bicentric N=3", K::Theorem, true,
      [s2](const Ctx& c, InvariantReport& r) {
        const double rb = s2 - 1.0;
        const PolarImage img = polar_image_family(BicentricConfig(1.0, rb * c.p, rb, 3));
        const ConicFeatures feat = conic_features(img.outer, 1e-9);
        r.samples = 1;
        r.max_abs_deviation = feat.kind == ConicClass::Parabola && !feat.foci.empty()
                                  ? feat.foci[0].norm()
                                  : std::numeric_limits<double>::infinity();
      });
  add("bridge.classification", "count", "polar image is an ellipse, parabola, hyperbola for d/r = 0.8, 1, 1.2",
      "bicentric N=3", K::Theorem, false, [](const Ctx&, InvariantReport& r) {
        const std::vector<std::pair<double, ConicClass>> want = {
            {0.8, ConicClass::Ellipse}, {1.0, ConicClass::Parabola}, {1.2, ConicClass::Hyperbola}};
        int bad = 0;
        const double rb = kS2 - 1.0;
        for (const auto& [k, cls] : want) {
          const PolarImage img = polar_image_family(BicentricConfig(1.0, rb, k * rb, 3));
          bad += img.kind == cls ? 0 : 1;
          r.detail += "d/r=" + fmt(k) + ": " + std::string(to_string(img.kind)) + "; ";
          ++r.samples;
        }
        r.max_abs_deviation = bad;
      });
  add("bridge.duality", "equivalence", "polar polygons of the d = r bicentric family are the parabola family", "bicentric N=3",
      K::Theorem, true, [s2](const Ctx& c, InvariantReport& r) {
        const double rb = s2 - 1.0, f = (s2 + 1.0) / 2.0;
        const BicentricConfig b(1.0, rb * c.p, rb, 3);
        const FamilyConfig fam = FamilyConfig::parabola(3, f, 1.0);
        double worst = 0.0;
        for (double t : angles(50)) {
          auto poly = bicentric_polar_polygon(b, bicentric_chain(b, t));
          for (auto& v : poly)
            if (v.is_finite()) v = ProjPoint::finite(v.cartesian() - Vec2(f, 0.0));
          const auto first = std::find_if(poly.begin(), poly.end(), [](const ProjPoint& v) { return v.is_finite(); });
          if (first == poly.end()) continue;
          FamilyOptions o;
          o.require_closure = false;
          worst = std::max(worst, vertex_set_distance(make_orbit(fam, first->cartesian().y(), o).vertices, poly));
          ++r.samples;
        }
        r.max_abs_deviation = worst;
      });
  add("bridge.euler.control", "control", "Euler line misses O when d != r", "bicentric N=3 d=1.2r", K::Theorem, false,
      [](const Ctx&, InvariantReport& r) {
        const BicentricConfig b = euler_triangle(1.0, 1.2);
        double worst = 0.0;
        for (double t : angles(50)) {
          const auto poly = bicentric_polar_polygon(b, bicentric_chain(b, t));
          if (!all_finite(poly)) continue;
          std::vector<Vec2> tri;
          for (const auto& v : poly) tri.push_back(v.cartesian());
          try {
            worst = std::max(worst, euler_line_distance(tri, Vec2::Zero()));
            ++r.samples;
          } catch (const Error&) {
          }
        }
        r.max_abs_deviation = worst;
      },
      true);

  add("closure.n7.explore", "closure.defect", "N=7 closing radius found by bisection", "N=7", K::Conjecture, false,
      [](const Ctx& c, InvariantReport& r) {
        const ClosureSolve s = solve_closure(c.cfg.f, 7);
        r.samples = 1;
        r.mean_value = s.r / c.cfg.f;
        r.max_abs_deviation = std::abs(s.defect);
        r.detail = "r/f = " + fmt(s.r / c.cfg.f);
      });
  return d;
}

}  // namespace

PolarFrame polar_frame(const BicentricConfig& cfg) {
  const PolarImage img = polar_image_family(cfg);
  PolarFrame out;
  out.kind = img.kind;
  out.duality_center = cfg.circumcircle().center;
  if (img.kind == ConicClass::Ellipse || img.kind == ConicClass::Hyperbola) {
    const ConicFeatures feat = conic_features(img.outer);
    if (feat.center) out.conic_center = *feat.center;
  }
  return out;
}

double conserved_half_angle_sum(const std::vector<ProjPoint>& polygon, const PolarFrame& frame) {
  const std::size_t n = polygon.size();
  if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "a polygon needs at least three vertices");
  std::vector<Vec2> P;
  for (const auto& v : polygon) {
    if (!v.is_finite()) throw Error(ErrorCode::UnboundedPolygon, "polar polygon has a vertex at infinity");
    P.push_back(v.cartesian());
  }
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) th[i] = interior_angle(P[(i + n - 1) % n], P[i], P[(i + 1) % n]);

  std::vector<bool> distal(n, false);
  std::size_t count = 0;
  if (frame.kind == ConicClass::Hyperbola) {
    const Vec2 axis = frame.duality_center - frame.conic_center;
    for (std::size_t i = 0; i < n; ++i) {
      distal[i] = (P[i] - frame.conic_center).dot(axis) < 0.0;
      count += distal[i] ? 1 : 0;
    }
  }
  double s = 0.0;
  if (count == 0 || count == n) {
    for (double t : th) s += std::sin(t / 2.0);
    return s;
  }
  std::size_t k = n;
  if (count == 1) {
    k = static_cast<std::size_t>(std::find(distal.begin(), distal.end(), true) - distal.begin());
  } else if (count == n - 1) {
    k = static_cast<std::size_t>(std::find(distal.begin(), distal.end(), false) - distal.begin());
  } else {
    throw Error(ErrorCode::Unsupported, "more than one vertex off the main branch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k)
      s -= std::sin(th[i] / 2.0);
    else if (i == (k + 1) % n || i == (k + n - 1) % n)
      s += std::sin((kPi - th[i]) / 2.0);
    else
      s += std::sin(th[i] / 2.0);
  }
  return s;
}

InvariantReport stationarity_check(const LocusTrace& trace, double tol) {
  InvariantReport r;
  r.name = trace.target.name() + ".stationary";
  r.claim = trace.target.name() + " is stationary";
  r.tolerance = tol;
  const auto pts = trace.points();
  const Vec2 m = mean_of(pts);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, (p - m).norm());
  r.samples = pts.size();
  r.max_abs_deviation = worst;
  r.mean_value = m.x();
  r.pass = !pts.empty() && worst < tol;
  r.detail = "mean " + fmt(m);
  return r;
}

double euler_line_distance(const std::vector<Vec2>& tri, const Vec2& p) {
  if (tri.size() != 3) throw Error(ErrorCode::DegenerateTriangle, "a triangle needs three vertices");
  const Vec2 g = triangle_center(tri[0], tri[1], tri[2], CenterId(2));
  const Vec2 o = triangle_center(tri[0], tri[1], tri[2], CenterId(3));
  const Vec2 d = o - g;
  const double scale = std::max({(tri[0] - tri[1]).norm(), (tri[1] - tri[2]).norm(), (tri[2] - tri[0]).norm()});
  if (d.norm() <= 1e-12 * scale) throw Error(ErrorCode::DegenerateTriangle, "Euler line undefined (equilateral)");
  return std::abs(cross2(d, p - g)) / d.norm();
}

double euler_line_through_focus(const std::vector<Vec2>& polar_triangle, double f) {
  return euler_line_distance(polar_triangle, Vec2(-f, 0.0));
}

double collinearity_check(const Vec2& p, const Vec2& q, const Vec2& r) {
  const Vec2 a = p - r, b = q - r;
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return std::abs(cross2(a, b)) / (scale * scale);
}

std::vector<X4SweepEntry> x4_classification_sweep(double R, int samples) {
  const std::vector<std::pair<double, ConicClass>> cases = {
      {0.8, ConicClass::Ellipse}, {1.0, ConicClass::Parabola}, {1.2, ConicClass::Hyperbola}};
  std::vector<X4SweepEntry> out;
  for (const auto& [k, cls] : cases) {
    const BicentricConfig b = euler_triangle(R, k);
    std::vector<Vec2> pts;
    for (double t : angles(samples)) {
      const auto poly = bicentric_polar_polygon(b, bicentric_chain(b, t));
      if (!all_finite(poly)) continue;
      try {
        const CenterResult c = triangle_center_checked(poly, CenterId(4));
        if (c.ill_conditioned || !c.point.is_finite()) continue;
        pts.push_back(c.point.cartesian());
      } catch (const Error&) {
      }
    }
    X4SweepEntry e;
    e.ratio = k;
    e.expected = cls;
    double scale = 1.0;
    for (const auto& p : pts) scale = std::max(scale, p.norm());
    const FitResult line = fit_line(pts);
    if (line.rms_residual <= 1e-9 * scale) {
      e.model = FitModel::Line;
      e.line_x = 0.5 * (line.x_min + line.x_max);
      e.rms = line.rms_residual;
      e.pass = cls == ConicClass::Parabola;
    } else {
      const FitResult conic = fit_conic(pts);
      e.model = FitModel::Conic;
      e.rms = conic.rms_residual;
      e.found = conic.features ? conic.features->kind : ConicClass::Empty;
      e.pass = e.found == cls && conic.rms_residual <= 1e-8 * scale;
    }
    out.push_back(e);
  }
  return out;
}

double default_tolerance(const std::string& key) {
  static const std::map<std::string, double> table = {
      {"closure.exact", 1e-9}, {"closure.table", 1e-6}, {"closure.defect", 1e-10}, {"incidence", 1e-9},
      {"fit", 1e-6},           {"axis", 1e-8},          {"conic", 1e-8},          {"spotcheck", 1e-8},
      {"quartic", 1e-6},       {"dectic", 1e-5},        {"line.fail", 1e-7},      {"strip", 0.10},
      {"collinear", 1e-10},    {"conserved", 1e-9},     {"equivalence", 1e-8},    {"supplement", 1e-5},
      {"probe", 1e-7},         {"count", 0.5},          {"control", 1e-3},
  };
  const auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorCode::OutOfRange, "no tolerance for " + key);
  return it->second;
}

std::vector<std::string> suite_check_names() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.push_back(d.name);
  return out;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  if (pattern.empty()) return true;
  if (fnmatch(pattern.c_str(), text.c_str(), 0) == 0) return true;
  for (std::size_t dot = text.find('.'); dot != std::string::npos; dot = text.find('.', dot + 1))
    if (fnmatch(pattern.c_str(), text.c_str() + dot + 1, 0) == 0) return true;
  return false;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  if (!(cfg.f > 0.0)) throw Error(ErrorCode::OutOfRange, "f must be positive");
  const Ctx ctx{cfg, 1.0 + cfg.r_perturbation};
  SuiteReport out;
  for (const auto& d : registry()) {
    if (!glob_match(cfg.filter, d.name)) continue;
    InvariantReport r;
    r.name = d.name;
    r.claim = d.claim;
    r.family = d.family;
    r.kind = d.kind;
    r.radius_sensitive = d.sensitive;
    r.must_exceed = d.must_exceed;
    r.tolerance = ctx.tol(d.name, d.key);
    try {
      d.run(ctx, r);
      const double dev = r.max_abs_deviation;
      r.pass = !std::isnan(dev) && (d.must_exceed ? dev > r.tolerance : dev < r.tolerance);
    } catch (const Error& e) {
      r.pass = false;
      r.max_abs_deviation = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    if (d.kind == CheckKind::Theorem)
      (r.pass ? out.passed : out.failed) += 1;
    else
      (r.pass ? out.conjecture_evidence : out.conjecture_anomalies) += 1;
    out.checks.push_back(std::move(r));
  }
  return out;
}

}  // namespace parapon
