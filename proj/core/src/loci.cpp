#include "parapon/loci.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace parapon {

LocusTarget LocusTarget::of_center(int k, bool polar) {
  LocusTarget t;
  t.kind = Kind::Center;
  t.center = CenterId(k);
  t.polar = polar;
  return t;
}

LocusTarget LocusTarget::of_centroid(CentroidKind c, bool polar) {
  LocusTarget t;
  t.kind = Kind::Centroid;
  t.centroid = c;
  t.polar = polar;
  return t;
}

LocusTarget LocusTarget::diagonal_meet(bool polar) {
  LocusTarget t;
  t.kind = Kind::DiagonalMeet;
  t.polar = polar;
  return t;
}

LocusTarget LocusTarget::parse(const std::string& text, bool polar) {
  std::string s = text;
  if (!s.empty() && s.back() == '\'') {
    polar = true;
    s.pop_back();
  }
  if (s.empty()) throw Error(ErrorCode::MalformedInput, "empty target");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  const std::string rest = s.substr(1);
  const bool digits = !rest.empty() && std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); });
  if (head == 'X' && digits) return of_center(std::stoi(rest), polar);
  if (head == 'C' && (rest == "0" || rest == "1" || rest == "2"))
    return of_centroid(static_cast<CentroidKind>(rest[0] - '0'), polar);
  if (head == 'W' && rest.empty()) return diagonal_meet(polar);
  throw Error(ErrorCode::Unsupported, "unknown target '" + text + "'");
}

std::string LocusTarget::name() const {
  std::string base;
  switch (kind) {
    case Kind::Center: base = center.name(); break;
    case Kind::Centroid: base = std::string(to_string(centroid)); break;
    case Kind::DiagonalMeet: base = "W"; break;
  }
  return polar ? base + "'" : base;
}

std::vector<double> ParameterGrid::values(double f) const {
  if (count < 2) throw Error(ErrorCode::OutOfRange, "grid needs at least two points");
  if (!(hi > lo)) throw Error(ErrorCode::OutOfRange, "grid range is empty");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = f * (lo + (hi - lo) * i / (count - 1));
  return v;
}

std::vector<Vec2> LocusTrace::points() const {
  std::vector<Vec2> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.point);
  return out;
}

std::optional<Vec2> evaluate_target(const Orbit& orbit, const LocusTarget& target, bool* ill_conditioned) {
  const auto& poly = target.polar ? orbit.polar_vertices : orbit.vertices;
  for (const auto& v : poly)
    if (!v.is_finite()) return std::nullopt;
  if (ill_conditioned) *ill_conditioned = false;
  try {
    switch (target.kind) {
      case LocusTarget::Kind::Center: {
        if (poly.size() != 3) throw Error(ErrorCode::Unsupported, "triangle centers need N = 3");
        const CenterResult r = triangle_center_checked(poly, target.center);
        if (ill_conditioned) *ill_conditioned = r.ill_conditioned;
        if (!r.point.is_finite()) return std::nullopt;
        return r.point.cartesian();
      }
      case LocusTarget::Kind::Centroid:
        return centroid(std::span<const ProjPoint>(poly), target.centroid).cartesian();
      case LocusTarget::Kind::DiagonalMeet: {
        if (poly.size() != 4) throw Error(ErrorCode::Unsupported, "diagonal point needs N = 4");
        const ProjPoint w = meet(Line::through(poly[0], poly[2]), Line::through(poly[1], poly[3]));
        if (!w.is_finite()) return std::nullopt;
        return w.cartesian();
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unsupported) throw;
    return std::nullopt;
  }
  return std::nullopt;
}

LocusTrace trace_locus(const FamilyConfig& cfg, const LocusTarget& target, const ParameterGrid& grid,
                       const TraceOptions& opt) {
  if (target.kind == LocusTarget::Kind::Center && cfg.N != 3)
    throw Error(ErrorCode::Unsupported, "triangle centers need N = 3");
  if (target.kind == LocusTarget::Kind::DiagonalMeet && cfg.N != 4)
    throw Error(ErrorCode::Unsupported, "diagonal point needs N = 4");
  std::vector<double> params = grid.values(cfg.f);
  if (grid.refine_singular && cfg.is_canonical_parabola()) {
    const double lo = params.front(), hi = params.back();
    for (double s : singular_parameters(cfg))
      for (double e : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1.5e-6})
        for (double y : {s - e * cfg.f, s + e * cfg.f})
          if (y > lo && y < hi) params.push_back(y);
    std::sort(params.begin(), params.end());
  }
  const FamilyBatch batch = generate_family(cfg, params, opt.family);
  LocusTrace tr;
  tr.family = cfg;
  tr.target = target;
  tr.gaps = batch.gaps;
  for (const auto& o : batch.orbits) {
    bool ill = false;
    const auto p = evaluate_target(o, target, &ill);
    if (!p) {
      ++tr.skipped;
      continue;
    }
    if (ill) {
      ++tr.ill_conditioned;
      if (opt.drop_ill_conditioned) continue;
    }
    tr.samples.push_back({o.y1, *p});
  }
  if (tr.samples.empty()) throw Error(ErrorCode::EmptyTrace, "no valid samples for " + target.name());
  return tr;
}

LocusTrace trace_from_points(const std::vector<double>& params, const std::vector<Vec2>& points) {
  if (params.size() != points.size()) throw Error(ErrorCode::MalformedInput, "parameter and point counts differ");
  LocusTrace tr;
  for (std::size_t i = 0; i < points.size(); ++i) tr.samples.push_back({params[i], points[i]});
  return tr;
}

std::string_view to_string(FitModel m) noexcept {
  switch (m) {
    case FitModel::Line: return "line";
    case FitModel::Circle: return "circle";
    case FitModel::Conic: return "conic";
    case FitModel::None: return "none";
  }
  return "none";
}

namespace {

void set_strip(FitResult& r, const std::vector<Vec2>& pts) {
  r.samples = pts.size();
  r.x_min = std::numeric_limits<double>::infinity();
  r.x_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    r.x_min = std::min(r.x_min, p.x());
    r.x_max = std::max(r.x_max, p.x());
  }
}

void set_residuals(FitResult& r, const std::vector<double>& res) {
  double ss = 0.0, mx = 0.0;
  for (double e : res) {
    ss += e * e;
    mx = std::max(mx, std::abs(e));
  }
  r.rms_residual = res.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(res.size()));
  r.max_residual = mx;
}

struct Normalizer {
  Vec2 mean = Vec2::Zero();
  double scale = 1.0;
};

Normalizer normalizer(const std::vector<Vec2>& pts) {
  Normalizer n;
  for (const auto& p : pts) n.mean += p;
  n.mean /= static_cast<double>(pts.size());
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, (p - n.mean).cwiseAbs().maxCoeff());
  n.scale = m > 0.0 ? m : 1.0;
  return n;
}

}  // namespace

FitResult fit_line(const std::vector<Vec2>& pts) {
  if (pts.size() < 2) throw Error(ErrorCode::DegenerateFit, "line fit needs two samples");
  FitResult r;
  r.model = FitModel::Line;
  set_strip(r, pts);
  const Normalizer nz = normalizer(pts);
  Eigen::MatrixXd X(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) X.row(static_cast<Eigen::Index>(i)) = ((pts[i] - nz.mean) / nz.scale).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
  Vec2 n = svd.matrixV().col(1);
  if (n.x() < 0.0 || (n.x() == 0.0 && n.y() < 0.0)) n = -n;
  const double c = -n.dot(nz.mean);
  r.coefficients = {n.x(), n.y(), c};
  std::vector<double> res;
  for (const auto& p : pts) res.push_back(pts.size() == 2 ? 0.0 : n.dot(p) + c);
  set_residuals(r, res);
  const Vec2 d(-n.y(), n.x());
  r.tilt = std::atan2(std::abs(d.x()), std::abs(d.y()));
  r.vertical = r.tilt < 1e-9;
  return r;
}

FitResult fit_line(const LocusTrace& trace) { return fit_line(trace.points()); }

FitResult fit_circle(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateFit, "circle fit needs three samples");
  const Normalizer nz = normalizer(pts);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 q = (pts[static_cast<std::size_t>(i)] - nz.mean) / nz.scale;
    A.row(i) << q.x(), q.y(), 1.0;
    b(i) = -q.squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s(2) <= 1e-12 * s(0)) return fit_line(pts);
  const Eigen::Vector3d sol = svd.solve(b);
  const Vec2 cq(-sol(0) / 2, -sol(1) / 2);
  const double rq2 = cq.squaredNorm() - sol(2);
  if (!(rq2 > 0.0)) return fit_line(pts);
  const Vec2 center = nz.mean + nz.scale * cq;
  const double radius = nz.scale * std::sqrt(rq2);

  FitResult r;
  r.model = FitModel::Circle;
  set_strip(r, pts);
  r.coefficients = {center.x(), center.y(), radius};
  std::vector<double> res;
  for (const auto& p : pts) res.push_back((p - center).norm() - radius);
  set_residuals(r, res);
  ConicFeatures feat;
  feat.kind = ConicClass::Circle;
  feat.center = center;
  feat.radius = radius;
  feat.foci = {center};
  feat.semi_axes = Vec2(radius, radius);
  r.features = feat;
  return r;
}

FitResult fit_circle(const LocusTrace& trace) { return fit_circle(trace.points()); }

FitResult fit_conic(const std::vector<Vec2>& pts, double classify_tol) {
  if (pts.size() < 5) throw Error(ErrorCode::DegenerateFit, "conic fit needs at least five samples");
  const Normalizer nz = normalizer(pts);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd D(n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 q = (pts[static_cast<std::size_t>(i)] - nz.mean) / nz.scale;
    D.row(i) << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(), q.x(), q.y(), 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() < 6 || s(4) <= 1e-10 * s(0)) throw Error(ErrorCode::DegenerateFit, "samples do not determine a unique conic");
  const Eigen::Matrix<double, 6, 1> v = svd.matrixV().col(5);
  const Conic cn{v(0), v(1), v(2), v(3), v(4), v(5)};
  Mat3 T;
  T << 1 / nz.scale, 0, -nz.mean.x() / nz.scale,
       0, 1 / nz.scale, -nz.mean.y() / nz.scale,
       0, 0, 1;
  Conic c = Conic::from_matrix(T.transpose() * cn.matrix() * T);
  Eigen::Matrix<double, 6, 1> coef;
  coef << c.A, c.B, c.C, c.D, c.E, c.F;
  coef.normalize();
  if (coef(0) + coef(2) < 0.0) coef = -coef;
  c = {coef(0), coef(1), coef(2), coef(3), coef(4), coef(5)};

  FitResult r;
  r.model = FitModel::Conic;
  set_strip(r, pts);
  r.coefficients.assign(coef.data(), coef.data() + 6);
  std::vector<double> res;
  for (const auto& p : pts) res.push_back(c.sampson_distance(p));
  set_residuals(r, res);
  ConicFeatures feat;
  feat.kind = classify_conic(c, classify_tol);
  try {
    feat = conic_features(c, classify_tol);
  } catch (const Error&) {
  }
  r.features = feat;
  return r;
}

FitResult fit_conic(const LocusTrace& trace, double classify_tol) { return fit_conic(trace.points(), classify_tol); }

AutoFit fit_auto(const std::vector<Vec2>& pts, double tol) {
  AutoFit out;
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double limit = tol * scale;
  auto accept = [&](const FitResult& r) {
    out.attempts.push_back(r);
    if (out.chosen.model == FitModel::None && r.rms_residual <= limit) out.chosen = r;
  };
  accept(fit_line(pts));
  if (pts.size() >= 3) {
    const FitResult c = fit_circle(pts);
    if (c.model == FitModel::Circle) accept(c);
  }
  if (pts.size() >= 5) {
    try {
      accept(fit_conic(pts));
    } catch (const Error&) {
    }
  }
  if (out.chosen.model == FitModel::None) set_strip(out.chosen, pts);
  return out;
}

ImplicitResidual implicit_residual(const std::vector<Vec2>& pts, const BivariatePoly& poly) {
  ImplicitResidual out;
  for (const auto& p : pts) {
    const double v = poly.eval(p.x(), p.y());
    const double g = poly.gradient(p.x(), p.y()).norm();
    if (!(g > 0.0) || !std::isfinite(g)) {
      ++out.flagged;
      out.per_sample.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double e = std::abs(v) / g;
    out.per_sample.push_back(e);
    out.max_normalized = std::max(out.max_normalized, e);
  }
  return out;
}

ImplicitResidual implicit_residual(const LocusTrace& trace, const BivariatePoly& poly) {
  return implicit_residual(trace.points(), poly);
}

Strip strip_width(const std::vector<Vec2>& pts) {
  if (pts.empty()) throw Error(ErrorCode::EmptyTrace, "strip of an empty trace");
  Strip s{0.0, pts.front().x(), pts.front().x()};
  for (const auto& p : pts) {
    s.x_lo = std::min(s.x_lo, p.x());
    s.x_hi = std::max(s.x_hi, p.x());
  }
  s.width = s.x_hi - s.x_lo;
  return s;
}

Strip strip_width(const LocusTrace& trace) { return strip_width(trace.points()); }

}  // namespace parapon
