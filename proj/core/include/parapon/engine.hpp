#pragma once

// Poncelet transverse iteration between an outer conic and an inner caustic.

#include <optional>
#include <utility>
#include <vector>

#include "parapon/geom.hpp"

namespace parapon {

struct FamilyConfig {
  int N = 3;
  double f = 1.0;
  double r = 0.0;
  Conic outer;
  Conic caustic;
  Vec2 caustic_center = Vec2::Zero();

  // Canonical parabola x = -y^2/(4f) with a circle of radius r at its focus.
  static FamilyConfig parabola(int N, double f, double r);
  // Arbitrary nondegenerate outer conic with a circular caustic.
  static FamilyConfig general(int N, const Conic& outer, const CircleSpec& caustic);
  static FamilyConfig general(int N, const Conic& outer, const Conic& caustic);

  bool is_canonical_parabola() const { return canonical_; }

 private:
  bool canonical_ = false;
};

struct TransverseState {
  ProjPoint current;
  Vec2 previous_direction = Vec2::Zero();
  int step_index = 0;
};

struct Orbit {
  FamilyConfig family;
  double y1 = 0.0;
  std::vector<ProjPoint> vertices;
  std::vector<ProjPoint> polar_vertices;
  double closure_defect = 0.0;

  bool bounded(double tol = kGeomTol) const;
  std::vector<Vec2> finite_vertices() const;
  std::vector<Vec2> finite_polar_vertices() const;
};

// One step: tangent from p to the caustic with the caustic on its left,
// then the other intersection of that line with the outer conic.
ProjPoint transverse_step(const Conic& outer, const Conic& caustic, const Vec2& caustic_center,
                          const ProjPoint& p, int branch = 1);
ProjPoint transverse_step(const Conic& outer, const CircleSpec& caustic, const ProjPoint& p, int branch = 1);
TransverseState transverse_step(const FamilyConfig& cfg, const TransverseState& s);

// Global angle-like parameter along the outer conic. Parabola: 2*atan(eta/(2f))
// with eta the coordinate across the axis, pi at infinity. Ellipse and circle:
// eccentric angle. Other classes throw Unsupported.
double arc_parameter(const Conic& outer, const ProjPoint& p);

// Lifted parameter advance over N steps minus 2*pi; zero iff closed.
double closure_defect(const Conic& outer, const Conic& caustic, const Vec2& caustic_center,
                      const ProjPoint& start, int N);
double closure_defect(const FamilyConfig& cfg, const ProjPoint& start);

// Default bracket on r/f for the canonical parabola family.
std::pair<double, double> default_closure_bracket(int N);

struct ClosureSolve {
  double r = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double defect = 0.0;
  int iterations = 0;
};

ClosureSolve solve_closure(double f, int N, std::optional<std::pair<double, double>> bracket = std::nullopt);
double solve_closure_radius(double f, int N, std::optional<std::pair<double, double>> bracket = std::nullopt);

struct ParamGap {
  double lo = 0.0;
  double hi = 0.0;
};

struct FamilyOptions {
  bool require_closure = true;
  double closure_tol = 1e-8;
  double gap_eps = 1e-6;
};

struct FamilyBatch {
  std::vector<Orbit> orbits;
  std::vector<ParamGap> gaps;
};

// y1 values at which some vertex of the canonical parabola family is at infinity.
std::vector<double> singular_parameters(const FamilyConfig& cfg);

Orbit make_orbit(const FamilyConfig& cfg, double y1, const FamilyOptions& opt = {});
FamilyBatch generate_family(const FamilyConfig& cfg, const std::vector<double>& params, const FamilyOptions& opt = {});

}  // namespace parapon
