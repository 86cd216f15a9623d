#pragma once

// Invariant checks and the full proposition suite.

#include <map>
#include <string>
#include <vector>

#include "parapon/bicentric.hpp"
#include "parapon/loci.hpp"

namespace parapon {

enum class CheckKind { Theorem, Conjecture };

struct InvariantReport {
  std::string name;
  std::string claim;
  std::string family;
  CheckKind kind = CheckKind::Theorem;
  // True when the check depends on a closing caustic radius.
  bool radius_sensitive = false;
  std::size_t samples = 0;
  double max_abs_deviation = 0.0;
  double mean_value = 0.0;
  double tolerance = 0.0;
  // Pass when the deviation exceeds the tolerance instead of staying below it.
  bool must_exceed = false;
  bool pass = false;
  std::string detail;
};

// Branch data for a polar polygon. For the hyperbolic case the distal
// branch is the one whose points are on the far side of the center from O.
struct PolarFrame {
  ConicClass kind = ConicClass::Parabola;
  Vec2 conic_center = Vec2::Zero();
  Vec2 duality_center = Vec2::Zero();
};

PolarFrame polar_frame(const BicentricConfig& cfg);

// Sum of sin(theta_i / 2) over unsigned interior angles; when exactly one
// vertex is on the distal branch its two neighbors contribute cos instead and
// the vertex itself enters with a minus sign.
double conserved_half_angle_sum(const std::vector<ProjPoint>& polygon, const PolarFrame& frame);

InvariantReport stationarity_check(const LocusTrace& trace, double tol);

// Distance from p to the Euler line X2 X3 of a triangle.
double euler_line_distance(const std::vector<Vec2>& triangle, const Vec2& p);
// Distance from F = (-f, 0) to the line X2'X3' of a polar triangle.
double euler_line_through_focus(const std::vector<Vec2>& polar_triangle, double f);

double collinearity_check(const Vec2& p, const Vec2& q, const Vec2& r);

struct X4SweepEntry {
  double ratio = 1.0;
  ConicClass expected = ConicClass::Parabola;
  FitModel model = FitModel::None;
  ConicClass found = ConicClass::Empty;
  double line_x = 0.0;
  double rms = 0.0;
  bool pass = false;
};

std::vector<X4SweepEntry> x4_classification_sweep(double R = 1.0, int samples = 200);

struct SuiteConfig {
  double f = 1.0;
  ParameterGrid grid;
  // Relative perturbation applied to every caustic radius.
  double r_perturbation = 0.0;
  // Glob on check names; empty runs everything.
  std::string filter;
  std::map<std::string, double> tolerance_overrides;
};

struct SuiteReport {
  std::vector<InvariantReport> checks;
  int passed = 0;
  int failed = 0;
  int conjecture_evidence = 0;
  int conjecture_anomalies = 0;

  bool theorems_pass() const { return failed == 0; }
};

// Per-check tolerance table.
double default_tolerance(const std::string& key);

std::vector<std::string> suite_check_names();
// Matches the whole name or any part after a dot, so "x99*" finds "polar.x99.circle".
bool glob_match(const std::string& pattern, const std::string& text);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace parapon
