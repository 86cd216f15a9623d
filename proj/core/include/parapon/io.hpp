#pragma once

// Trace CSV, fit and report JSON, SVG figures.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parapon/loci.hpp"
#include "parapon/verify.hpp"

namespace parapon {

inline constexpr int kSchemaVersion = 1;

void write_trace_csv(std::ostream& os, const LocusTrace& trace);
// Parses `y1,x,y` with optional `# gap,lo,hi` comment lines. Throws MalformedInput.
LocusTrace read_trace_csv(std::istream& is);

std::string fit_to_json(const FitResult& fit, const std::vector<FitResult>& attempts = {});
std::string report_to_json(const SuiteReport& report);

struct PlotInput {
  std::string label;
  std::vector<Vec2> points;
  std::optional<FitResult> fit;
};

struct PlotScene {
  double f = 1.0;
  std::optional<double> caustic_radius;
  std::vector<PlotInput> traces;
};

std::string render_svg(const PlotScene& scene);

}  // namespace parapon
