#include "parapon/centers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace parapon {

CenterId::CenterId(int index) : k(index) {
  if (!supported(index)) throw Error(ErrorCode::Unsupported, "center X" + std::to_string(index) + " is not supported");
}

bool CenterId::supported(int index) {
  return std::find(kSupportedCenters.begin(), kSupportedCenters.end(), index) != kSupportedCenters.end();
}

std::string_view to_string(CentroidKind kind) noexcept {
  switch (kind) {
    case CentroidKind::Vertex: return "C0";
    case CentroidKind::Perimeter: return "C1";
    case CentroidKind::Area: return "C2";
  }
  return "?";
}

namespace {

// Conway notation: SA = (b^2 + c^2 - a^2) / 2, computed from vertices as a dot product.
struct Conway {
  double sa, sb, sc;
};

// cos 2A with a^2 = sb + sc etc.
double cos2_at(double sa, double sb, double sc) {
  const double bc2 = (sc + sa) * (sa + sb);
  return (2 * sa * sa - bc2) / bc2;
}

// b^2 cos2B + c^2 cos2C - a^2 cos2A
double t26(double sa, double sb, double sc) {
  const double a2 = sb + sc, b2 = sc + sa, c2 = sa + sb;
  return b2 * cos2_at(sb, sc, sa) + c2 * cos2_at(sc, sa, sb) - a2 * cos2_at(sa, sb, sc);
}

double weight(int k, double sa, double sb, double sc) {
  const double a2 = sb + sc, b2 = sc + sa, c2 = sa + sb;
  switch (k) {
    case 1: return std::sqrt(a2);
    case 2: return 1.0;
    case 3: return a2 * sa;
    case 4: return sb * sc;
    case 5: return a2 * (b2 + c2) - (sc - sb) * (sc - sb);
    case 6: return a2;
    case 10: return std::sqrt(b2) + std::sqrt(c2);
    case 20: return 3 * a2 * a2 - 2 * a2 * (b2 + c2) - (sc - sb) * (sc - sb);
    case 26: return a2 * t26(sa, sb, sc);
    case 68: return std::sqrt(a2) * sa / std::sqrt(b2 * c2) * cos2_at(sb, sc, sa) * cos2_at(sc, sa, sb);
    case 99: return (sa - sc) * (sb - sa);
    case 110: return a2 * (sa - sc) * (sb - sa);
    case 161: return a2 * cos2_at(sb, sc, sa) * cos2_at(sc, sa, sb) * t26(sb, sc, sa) * t26(sc, sa, sb);
    default: break;
  }
  throw Error(ErrorCode::Unsupported, "center X" + std::to_string(k) + " is not supported");
}

}  // namespace

double center_weight(int k, double a, double b, double c) {
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  return weight(k, (b2 + c2 - a2) / 2, (c2 + a2 - b2) / 2, (a2 + b2 - c2) / 2);
}

CenterResult triangle_center_checked(std::span<const ProjPoint> vertices, CenterId id) {
  if (vertices.size() != 3) throw Error(ErrorCode::DegenerateTriangle, "a triangle needs three vertices");
  for (const auto& v : vertices)
    if (!v.is_finite()) throw Error(ErrorCode::UnboundedInput, "triangle vertex at infinity");
  const Vec2 P[3] = {vertices[0].cartesian(), vertices[1].cartesian(), vertices[2].cartesian()};
  const Vec2 g = (P[0] + P[1] + P[2]) / 3.0;
  const double s = std::max({(P[1] - P[2]).norm(), (P[2] - P[0]).norm(), (P[0] - P[1]).norm()});
  if (s == 0.0) throw Error(ErrorCode::DegenerateTriangle, "coincident vertices");
  Vec2 L[3];
  for (int i = 0; i < 3; ++i) L[i] = (P[i] - g) / s;
  const double area = 0.5 * std::abs(cross2(L[1] - L[0], L[2] - L[0]));
  if (area <= 1e-12) throw Error(ErrorCode::DegenerateTriangle, "triangle has no area");
  const double sa = (L[1] - L[0]).dot(L[2] - L[0]);
  const double sb = (L[2] - L[1]).dot(L[0] - L[1]);
  const double sc = (L[0] - L[2]).dot(L[1] - L[2]);
  const double w[3] = {weight(id.k, sa, sb, sc), weight(id.k, sb, sc, sa), weight(id.k, sc, sa, sb)};
  const double sum = w[0] + w[1] + w[2];
  const double mag = std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]);

  CenterResult out;
  if (mag <= 1e-13) {
    // All weights vanish only for the equilateral triangle.
    if (std::max({sa, sb, sc}) - std::min({sa, sb, sc}) > 1e-6)
      throw Error(ErrorCode::DegenerateTriangle, "center undefined for this triangle");
    out.point = ProjPoint::finite(g);
    return out;
  }
  const Vec2 num = w[0] * L[0] + w[1] * L[1] + w[2] * L[2];
  out.condition = sum == 0.0 ? std::numeric_limits<double>::infinity() : mag / std::abs(sum);
  out.ill_conditioned = out.condition > kCenterConditionLimit;
  const Vec2 h = s * num + sum * g;
  out.point = ProjPoint{h.x(), h.y(), sum};
  if (out.point.is_finite()) out.point = ProjPoint::finite(out.point.cartesian());
  return out;
}

ProjPoint triangle_center(std::span<const ProjPoint> vertices, CenterId id) {
  return triangle_center_checked(vertices, id).point;
}

Vec2 triangle_center(const Vec2& A, const Vec2& B, const Vec2& C, CenterId id) {
  const ProjPoint v[3] = {ProjPoint::finite(A), ProjPoint::finite(B), ProjPoint::finite(C)};
  const ProjPoint p = triangle_center(v, id);
  if (!p.is_finite()) throw Error(ErrorCode::UnboundedInput, "center lies at infinity");
  return p.cartesian();
}

Vec2 centroid(std::span<const Vec2> polygon, CentroidKind kind) {
  const std::size_t n = polygon.size();
  if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "a polygon needs at least three vertices");
  const Vec2 o = polygon[0];
  switch (kind) {
    case CentroidKind::Vertex: {
      Vec2 s = Vec2::Zero();
      for (const auto& p : polygon) s += p - o;
      return o + s / static_cast<double>(n);
    }
    case CentroidKind::Perimeter: {
      Vec2 s = Vec2::Zero();
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = polygon[i] - o, q = polygon[(i + 1) % n] - o;
        const double len = (q - p).norm();
        s += len * 0.5 * (p + q);
        total += len;
      }
      if (total == 0.0) throw Error(ErrorCode::DegeneratePolygon, "zero perimeter");
      return o + s / total;
    }
    case CentroidKind::Area: {
      Vec2 s = Vec2::Zero();
      double area2 = 0.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = polygon[i] - o, q = polygon[(i + 1) % n] - o;
        const double cr = cross2(p, q);
        area2 += cr;
        s += cr * (p + q);
        scale = std::max(scale, p.squaredNorm());
      }
      if (std::abs(area2) <= 1e-14 * scale) throw Error(ErrorCode::DegeneratePolygon, "zero signed area");
      return o + s / (3.0 * area2);
    }
  }
  return o;
}

ProjPoint centroid(std::span<const ProjPoint> polygon, CentroidKind kind) {
  std::vector<Vec2> pts;
  for (const auto& p : polygon) {
    if (!p.is_finite()) throw Error(ErrorCode::UnboundedInput, "polygon vertex at infinity");
    pts.push_back(p.cartesian());
  }
  return ProjPoint::finite(centroid(std::span<const Vec2>(pts), kind));
}

}  // namespace parapon
