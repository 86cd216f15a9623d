#pragma once

// Kimberling triangle centers and polygon centroids.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "parapon/geom.hpp"

namespace parapon {

inline constexpr std::array<int, 13> kSupportedCenters{1, 2, 3, 4, 5, 6, 10, 20, 26, 68, 99, 110, 161};

struct CenterId {
  int k = 2;

  CenterId() = default;
  explicit CenterId(int index);
  static bool supported(int index);
  std::string name() const { return "X" + std::to_string(k); }
};

enum class CentroidKind { Vertex, Perimeter, Area };

std::string_view to_string(CentroidKind kind) noexcept;

// Barycentric weights at vertex A for side lengths (a, b, c); the other two
// weights follow by cyclic permutation. Forms with poles are cleared of
// denominators so degenerate angles give finite weights.
double center_weight(int k, double a, double b, double c);

struct CenterResult {
  ProjPoint point;
  // sum |w_i| / |sum w_i|
  double condition = 1.0;
  bool ill_conditioned = false;
};

inline constexpr double kCenterConditionLimit = 1e6;

CenterResult triangle_center_checked(std::span<const ProjPoint> vertices, CenterId id);
ProjPoint triangle_center(std::span<const ProjPoint> vertices, CenterId id);
Vec2 triangle_center(const Vec2& A, const Vec2& B, const Vec2& C, CenterId id);

ProjPoint centroid(std::span<const ProjPoint> polygon, CentroidKind kind);
Vec2 centroid(std::span<const Vec2> polygon, CentroidKind kind);

}  // namespace parapon
