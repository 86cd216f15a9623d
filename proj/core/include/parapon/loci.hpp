#pragma once

// Locus sampling over a family and curve fitting of the samples.

#include <optional>
#include <string>
#include <vector>

#include "parapon/centers.hpp"
#include "parapon/curves.hpp"
#include "parapon/engine.hpp"

namespace parapon {

struct LocusTarget {
  enum class Kind { Center, Centroid, DiagonalMeet };

  Kind kind = Kind::Center;
  CenterId center;
  CentroidKind centroid = CentroidKind::Vertex;
  bool polar = false;

  static LocusTarget of_center(int k, bool polar = false);
  static LocusTarget of_centroid(CentroidKind c, bool polar = false);
  static LocusTarget diagonal_meet(bool polar = false);
  // "X2", "C1", "W"; a trailing ' or the polar flag selects the polar polygon.
  static LocusTarget parse(const std::string& text, bool polar = false);
  std::string name() const;
};

struct ParameterGrid {
  int count = 400;
  double lo = -8.0;  // in units of f
  double hi = 8.0;
  // Add points approaching each singular parameter from both sides.
  bool refine_singular = false;

  std::vector<double> values(double f) const;
};

struct LocusSample {
  double y1 = 0.0;
  Vec2 point = Vec2::Zero();
};

struct LocusTrace {
  FamilyConfig family;
  LocusTarget target;
  std::vector<LocusSample> samples;
  std::vector<ParamGap> gaps;
  int skipped = 0;
  int ill_conditioned = 0;

  std::vector<Vec2> points() const;
};

struct TraceOptions {
  FamilyOptions family;
  // Drop samples whose center weights are ill-conditioned.
  bool drop_ill_conditioned = true;
};

// Value of the target on one polygon; nullopt if undefined there.
std::optional<Vec2> evaluate_target(const Orbit& orbit, const LocusTarget& target, bool* ill_conditioned = nullptr);

LocusTrace trace_locus(const FamilyConfig& cfg, const LocusTarget& target, const ParameterGrid& grid,
                       const TraceOptions& opt = {});
LocusTrace trace_from_points(const std::vector<double>& params, const std::vector<Vec2>& points);

enum class FitModel { Line, Circle, Conic, None };

std::string_view to_string(FitModel m) noexcept;

struct FitResult {
  FitModel model = FitModel::None;
  // line: (a, b, c); circle: (cx, cy, R); conic: (A, B, C, D, E, F), unit norm.
  std::vector<double> coefficients;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  std::optional<ConicFeatures> features;
  double x_min = 0.0;
  double x_max = 0.0;
  // Line fits: direction within 1e-9 rad of vertical.
  bool vertical = false;
  double tilt = 0.0;
  std::size_t samples = 0;
};

FitResult fit_line(const std::vector<Vec2>& pts);
FitResult fit_line(const LocusTrace& trace);
FitResult fit_circle(const std::vector<Vec2>& pts);
FitResult fit_circle(const LocusTrace& trace);
FitResult fit_conic(const std::vector<Vec2>& pts, double classify_tol = 1e-6);
FitResult fit_conic(const LocusTrace& trace, double classify_tol = 1e-6);

struct AutoFit {
  FitResult chosen;
  std::vector<FitResult> attempts;
};

// line, then circle, then conic; the first with rms below tol * scale.
AutoFit fit_auto(const std::vector<Vec2>& pts, double tol = 1e-8);

struct ImplicitResidual {
  double max_normalized = 0.0;
  std::vector<double> per_sample;
  int flagged = 0;
};

ImplicitResidual implicit_residual(const std::vector<Vec2>& pts, const BivariatePoly& poly);
ImplicitResidual implicit_residual(const LocusTrace& trace, const BivariatePoly& poly);

struct Strip {
  double width = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

Strip strip_width(const std::vector<Vec2>& pts);
Strip strip_width(const LocusTrace& trace);

}  // namespace parapon
