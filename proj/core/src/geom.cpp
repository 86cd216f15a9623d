#include "parapon/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "quadratic.hpp"

namespace parapon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::ContainedLine: return "ContainedLine";
    case ErrorCode::NoFeatures: return "NoFeatures";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NoTangent: return "NoTangent";
    case ErrorCode::DegenerateChord: return "DegenerateChord";
    case ErrorCode::BadBracket: return "BadBracket";
    case ErrorCode::SingularParameter: return "SingularParameter";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::UnboundedInput: return "UnboundedInput";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::UnboundedPolygon: return "UnboundedPolygon";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

std::string_view to_string(ConicClass c) noexcept {
  switch (c) {
    case ConicClass::Ellipse: return "ellipse";
    case ConicClass::Circle: return "circle";
    case ConicClass::Parabola: return "parabola";
    case ConicClass::Hyperbola: return "hyperbola";
    case ConicClass::LinePair: return "line_pair";
    case ConicClass::SingleLine: return "single_line";
    case ConicClass::Point: return "point";
    case ConicClass::Empty: return "empty";
  }
  return "unknown";
}

namespace detail {

std::vector<HomogeneousRoot> solve_homogeneous_quadratic(double a, double b, double c, double tol) {
  // a s^2 + 2 b s t + c t^2 = 0
  std::vector<HomogeneousRoot> roots;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return roots;
  a /= scale;
  b /= scale;
  c /= scale;
  const double disc = b * b - a * c;
  if (std::abs(disc) <= tol) {
    // Double root: (s, t) = (-b, a) or (c, -b), whichever is larger.
    if (std::abs(a) >= std::abs(c))
      roots.push_back({-b, a, 2});
    else
      roots.push_back({c, -b, 2});
    return roots;
  }
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  if (std::abs(a) >= std::abs(c)) {
    // s/t roots with t = 1
    const double q = -(b + std::copysign(sq, b));
    roots.push_back({q, a, 1});
    roots.push_back({c, q, 1});
  } else {
    const double q = -(b + std::copysign(sq, b));
    roots.push_back({c, q, 1});
    roots.push_back({q, a, 1});
  }
  return roots;
}

// Orthonormal basis of the plane orthogonal to v.
std::pair<Vec3, Vec3> orthogonal_basis(const Vec3& v) {
  const Vec3 n = v.normalized();
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  Vec3 e = Vec3::Zero();
  e[k] = 1.0;
  const Vec3 u1 = n.cross(e).normalized();
  const Vec3 u2 = n.cross(u1).normalized();
  return {u1, u2};
}

}  // namespace detail

bool ProjPoint::is_finite(double tol) const {
  const double m = std::max({std::abs(x), std::abs(y), std::abs(w)});
  return m > 0.0 && std::abs(w) > tol * m;
}

Vec2 ProjPoint::cartesian() const {
  if (!is_finite(0.0) || w == 0.0) throw Error(ErrorCode::UnboundedInput, "point at infinity has no Cartesian form");
  return {x / w, y / w};
}

bool same_point(const ProjPoint& a, const ProjPoint& b, double tol) {
  return projective_distance(a, b) <= tol;
}

double projective_distance(const ProjPoint& a, const ProjPoint& b) {
  const Vec3 u = a.vec().normalized();
  const Vec3 v = b.vec().normalized();
  return u.cross(v).norm();
}

Line Line::through(const ProjPoint& p, const ProjPoint& q) { return from_vec(p.vec().cross(q.vec())); }

bool Line::is_at_infinity(double tol) const {
  const double m = std::max({std::abs(a), std::abs(b), std::abs(c)});
  return m > 0.0 && std::hypot(a, b) <= tol * m;
}

double Line::distance_to(const Vec2& p) const { return std::abs(a * p.x() + b * p.y() + c) / std::hypot(a, b); }

Vec2 Line::direction() const { return Vec2(-b, a).normalized(); }

ProjPoint meet(const Line& l, const Line& m) { return ProjPoint::from_vec(l.vec().cross(m.vec())); }

Conic Conic::from_matrix(const Mat3& m) {
  return {m(0, 0), m(0, 1) + m(1, 0), m(1, 1), m(0, 2) + m(2, 0), m(1, 2) + m(2, 1), m(2, 2)};
}

Mat3 Conic::matrix() const {
  Mat3 m;
  m << A, B / 2, D / 2,
       B / 2, C, E / 2,
       D / 2, E / 2, F;
  return m;
}

double Conic::max_abs() const {
  return std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D), std::abs(E), std::abs(F)});
}

Conic Conic::normalized() const {
  const double m = max_abs();
  if (m == 0.0) throw Error(ErrorCode::DegenerateConic, "all coefficients are zero");
  return {A / m, B / m, C / m, D / m, E / m, F / m};
}

double Conic::eval(const ProjPoint& p) const {
  const double x = p.x, y = p.y, w = p.w;
  return A * x * x + B * x * y + C * y * y + D * x * w + E * y * w + F * w * w;
}

Vec2 Conic::gradient(const Vec2& p) const {
  return {2 * A * p.x() + B * p.y() + D, B * p.x() + 2 * C * p.y() + E};
}

double Conic::sampson_distance(const Vec2& p) const {
  const double g = gradient(p).norm();
  const double v = std::abs(eval(p));
  if (g == 0.0) return v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return v / g;
}

bool Conic::equivalent(const Conic& other, double tol) const {
  Eigen::Matrix<double, 6, 1> u, v;
  u << A, B, C, D, E, F;
  v << other.A, other.B, other.C, other.D, other.E, other.F;
  if (u.norm() == 0.0 || v.norm() == 0.0) return false;
  u.normalize();
  v.normalize();
  return std::min((u - v).norm(), (u + v).norm()) <= tol;
}

CircleSpec::CircleSpec(const Vec2& c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw Error(ErrorCode::OutOfRange, "circle radius must be positive");
}

Conic CircleSpec::to_conic() const {
  const double cx = center.x(), cy = center.y();
  return {1.0, 0.0, 1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - radius * radius};
}

ParabolaStd::ParabolaStd(double focal) : f(focal) {
  if (!(focal > 0.0)) throw Error(ErrorCode::OutOfRange, "focal distance must be positive");
}

namespace {

bool is_degenerate(const Mat3& m, double tol) {
  Eigen::JacobiSVD<Mat3> svd(m);
  const auto& s = svd.singularValues();
  return s(2) <= tol * s(0);
}

}  // namespace

Line polar_line(const Conic& c, const ProjPoint& p) {
  const Mat3 m = c.normalized().matrix();
  if (is_degenerate(m, kGeomTol)) throw Error(ErrorCode::DegenerateConic, "polar of a degenerate conic");
  return Line::from_vec(m * p.vec());
}

ProjPoint pole_point(const Conic& c, const Line& l) {
  const Mat3 m = c.normalized().matrix();
  if (is_degenerate(m, kGeomTol)) throw Error(ErrorCode::DegenerateConic, "pole w.r.t. a degenerate conic");
  return ProjPoint::from_vec(m.partialPivLu().solve(l.vec()));
}

std::vector<Line> tangent_lines_from(const Conic& c, const ProjPoint& p, double tol) {
  const Mat3 m = c.normalized().matrix();
  if (is_degenerate(m, kGeomTol)) throw Error(ErrorCode::DegenerateConic, "tangents to a degenerate conic");
  const Mat3 dual = m.inverse();
  const auto [u1, u2] = detail::orthogonal_basis(p.vec());
  const double qa = u1.dot(dual * u1);
  const double qb = u1.dot(dual * u2);
  const double qc = u2.dot(dual * u2);
  std::vector<Line> lines;
  for (const auto& r : detail::solve_homogeneous_quadratic(qa, qb, qc, tol))
    lines.push_back(Line::from_vec(r.s * u1 + r.t * u2));
  return lines;
}

std::vector<LineConicHit> intersect_line_conic(const Conic& c, const Line& l, double tol) {
  const Mat3 m = c.normalized().matrix();
  const auto [q1, q2] = detail::orthogonal_basis(l.vec());
  const double qa = q1.dot(m * q1);
  const double qb = q1.dot(m * q2);
  const double qc = q2.dot(m * q2);
  if (std::max({std::abs(qa), std::abs(qb), std::abs(qc)}) <= tol)
    throw Error(ErrorCode::ContainedLine, "line lies on the conic");
  std::vector<LineConicHit> hits;
  for (const auto& r : detail::solve_homogeneous_quadratic(qa, qb, qc, tol))
    hits.push_back({ProjPoint::from_vec(r.s * q1 + r.t * q2), r.multiplicity});
  return hits;
}

ConicClass classify_conic(const Conic& c, double tol) {
  const Conic n = c.normalized();
  const Mat3 m = n.matrix();
  Eigen::JacobiSVD<Mat3> svd(m);
  const auto& s = svd.singularValues();
  int rank = 3;
  if (s(2) <= tol * s(0)) rank = s(1) <= tol * s(0) ? 1 : 2;

  const double quad_scale = std::max({std::abs(n.A), std::abs(n.B), std::abs(n.C)});
  if (rank == 1) return ConicClass::SingleLine;
  if (quad_scale == 0.0) return rank == 3 ? ConicClass::Empty : ConicClass::SingleLine;
  const double delta = n.discriminant() / (quad_scale * quad_scale);

  if (rank == 2) {
    if (delta > tol) return ConicClass::LinePair;
    if (delta < -tol) return ConicClass::Point;
    // Parallel pair: real iff the restricted 1D quadratic has real roots.
    return ConicClass::LinePair;
  }
  if (std::abs(delta) <= tol) return ConicClass::Parabola;
  if (delta > 0.0) return ConicClass::Hyperbola;
  // Real ellipse iff (A + C) * det < 0.
  if ((n.A + n.C) * m.determinant() >= 0.0) return ConicClass::Empty;
  const double aniso = std::max(std::abs(n.A - n.C), std::abs(n.B)) / quad_scale;
  return aniso <= tol ? ConicClass::Circle : ConicClass::Ellipse;
}

ConicFeatures conic_features(const Conic& c, double tol) {
  ConicFeatures out;
  out.kind = classify_conic(c, tol);
  const Conic n = c.normalized();
  Eigen::Matrix2d q;
  q << n.A, n.B / 2, n.B / 2, n.C;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(q);
  const Vec2 lin(n.D, n.E);

  switch (out.kind) {
    case ConicClass::Parabola: {
      // eigenvalues ascending by value; pick the dominant one by magnitude
      const int big = std::abs(eig.eigenvalues()(1)) >= std::abs(eig.eigenvalues()(0)) ? 1 : 0;
      const double lambda = eig.eigenvalues()(big);
      const Vec2 e = eig.eigenvectors().col(big);
      const Vec2 u = eig.eigenvectors().col(1 - big);
      const double lu = lin.dot(u);
      const double le = lin.dot(e);
      if (std::abs(lu) <= tol * std::abs(lambda)) throw Error(ErrorCode::NoFeatures, "parabola without linear term");
      const double eta0 = -le / (2.0 * lambda);
      const double xi0 = (le * le / (4.0 * lambda) - n.F) / lu;
      const double k = -lambda / lu;  // xi - xi0 = k (eta - eta0)^2
      const double f = 1.0 / (4.0 * std::abs(k));
      const Vec2 open = k > 0 ? u : Vec2(-u);
      const Vec2 vertex = xi0 * u + eta0 * e;
      out.vertices = {vertex};
      out.foci = {vertex + f * open};
      out.axis = open;
      out.opening = open;
      out.focal_distance = f;
      out.directrix = Line{open.x(), open.y(), -(open.dot(vertex) - f)};
      return out;
    }
    case ConicClass::Circle:
    case ConicClass::Ellipse:
    case ConicClass::Hyperbola: {
      Eigen::Matrix2d sys;
      sys << 2 * n.A, n.B, n.B, 2 * n.C;
      const Vec2 center = sys.partialPivLu().solve(-lin);
      const double fc = n.eval(center);
      out.center = center;
      const double l0 = eig.eigenvalues()(0), l1 = eig.eigenvalues()(1);
      const Vec2 e0 = eig.eigenvectors().col(0), e1 = eig.eigenvectors().col(1);
      if (out.kind == ConicClass::Circle) {
        const double r = std::sqrt(-fc / (0.5 * (l0 + l1)));
        out.radius = r;
        out.foci = {center};
        out.semi_axes = Vec2(r, r);
        return out;
      }
      const double s0 = -fc / l0, s1 = -fc / l1;  // squared semi-axes (signed)
      if (out.kind == ConicClass::Ellipse) {
        const bool first_major = s0 >= s1;
        const double a = std::sqrt(first_major ? s0 : s1);
        const double b = std::sqrt(first_major ? s1 : s0);
        const Vec2 ax = first_major ? e0 : e1;
        const double cf = std::sqrt(std::max(0.0, a * a - b * b));
        out.axis = ax;
        out.semi_axes = Vec2(a, b);
        out.foci = {center - cf * ax, center + cf * ax};
        out.vertices = {center - a * ax, center + a * ax};
        return out;
      }
      const bool first_transverse = s0 > 0.0;
      const double a = std::sqrt(first_transverse ? s0 : s1);
      const double b = std::sqrt(-(first_transverse ? s1 : s0));
      const Vec2 ax = first_transverse ? e0 : e1;
      const double cf = std::sqrt(a * a + b * b);
      out.axis = ax;
      out.semi_axes = Vec2(a, b);
      out.foci = {center - cf * ax, center + cf * ax};
      out.vertices = {center - a * ax, center + a * ax};
      return out;
    }
    default:
      throw Error(ErrorCode::NoFeatures, std::string("degenerate conic class ") + std::string(to_string(out.kind)));
  }
}

std::vector<ProjPoint> polar_polygon(const Conic& c, std::span<const ProjPoint> vertices) {
  std::vector<Line> polars;
  polars.reserve(vertices.size());
  for (const auto& v : vertices) polars.push_back(polar_line(c, v));
  std::vector<ProjPoint> out;
  out.reserve(vertices.size());
  for (std::size_t i = 0; i < polars.size(); ++i) out.push_back(meet(polars[i], polars[(i + 1) % polars.size()]));
  return out;
}

Vec2 reflect(const Vec2& p, const Line& l) {
  const Vec2 n(l.a, l.b);
  const double s = (n.dot(p) + l.c) / n.squaredNorm();
  return p - 2.0 * s * n;
}

}  // namespace parapon
