// parapon: closure ratios, locus traces, fits, proposition checks and figures
// for Poncelet polygons inscribed in a parabola around a focus-centered circle.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parapon/family.hpp"
#include "parapon/io.hpp"
#include "parapon/loci.hpp"
#include "parapon/verify.hpp"

using namespace parapon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

struct GridFlags {
  int count = 400;
  double lo = -8.0;
  double hi = 8.0;
  bool refine = false;

  ParameterGrid grid() const {
    if (count < 8) throw Error(ErrorCode::OutOfRange, "grid count must be at least 8");
    ParameterGrid g;
    g.count = count;
    g.lo = lo;
    g.hi = hi;
    g.refine_singular = refine;
    return g;
  }
};

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("--count", g.count, "number of y1 samples")->capture_default_str();
  app->add_option("--lo", g.lo, "lowest y1, in units of f")->capture_default_str();
  app->add_option("--hi", g.hi, "highest y1, in units of f")->capture_default_str();
  app->add_flag("--refine", g.refine, "add samples approaching each singular y1");
}

// Writes to the named file, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::MalformedInput, "cannot write " + path);
  os << text;
}

LocusTrace load_trace(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::MalformedInput, "cannot read " + path);
  return read_trace_csv(is);
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

int cmd_closure(int N, double f, const std::vector<double>& bracket) {
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
  std::optional<std::pair<double, double>> br;
  if (!bracket.empty()) br = std::make_pair(bracket[0], bracket[1]);
  const ClosureSolve s = solve_closure(f, N, br);
  const double ratio = s.r / f;
  switch (N) {
    case 3:
      std::cout << "2*(sqrt(2)-1) = " << fmt12(closure_ratio(3)) << "\n";
      break;
    case 4:
      std::cout << "2*sqrt(sqrt(5)-2) = " << fmt12(closure_ratio(4)) << "\n";
      break;
    case 5:
      std::cout << "root of x^6+12x^5-28x^4+32x^3+112x^2-64x-64 = " << fmt12(closure_ratio(5)) << "\n";
      break;
    default:
      std::cout << fmt12(ratio) << "\n";
      break;
  }
  std::cout << "bisection: r/f = " << fmt12(ratio) << " on [" << fmt12(s.lo) << ", " << fmt12(s.hi) << "], "
            << s.iterations << " iterations, defect " << s.defect << "\n";
  if (N >= 7) std::cout << "note: no tabulated value; bracket grown from the N-1 root toward 1\n";
  return kExitOk;
}

int cmd_trace(int N, const std::string& target_text, bool polar, double f, const GridFlags& gf,
              const std::string& out) {
  if (N < 3) throw Error(ErrorCode::OutOfRange, "N must be at least 3");
  if (!(f > 0.0)) throw Error(ErrorCode::OutOfRange, "f must be positive");
  const LocusTarget target = LocusTarget::parse(target_text, polar);
  const FamilyConfig cfg = FamilyConfig::parabola(N, f, N <= 6 ? closure_ratio(N) * f : solve_closure_radius(f, N));
  const LocusTrace tr = trace_locus(cfg, target, gf.grid());
  std::ostringstream os;
  write_trace_csv(os, tr);
  emit(out, os.str());
  return kExitOk;
}

int cmd_fit(const std::string& path, const std::string& model, double tol, const std::string& out) {
  const LocusTrace tr = load_trace(path);
  if (tr.samples.empty()) throw Error(ErrorCode::EmptyTrace, path + " has no samples");
  const auto pts = tr.points();
  if (model == "auto") {
    const AutoFit a = fit_auto(pts, tol);
    emit(out, fit_to_json(a.chosen, a.attempts));
  } else if (model == "line") {
    emit(out, fit_to_json(fit_line(pts)));
  } else if (model == "circle") {
    emit(out, fit_to_json(fit_circle(pts)));
  } else {
    emit(out, fit_to_json(fit_conic(pts)));
  }
  return kExitOk;
}

int cmd_verify(SuiteConfig cfg, const std::vector<std::string>& tol_flags, const std::string& json_out, bool quiet) {
  for (const auto& t : tol_flags) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::MalformedInput, "expected name=value, got '" + t + "'");
    cfg.tolerance_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  const SuiteReport rep = run_suite(cfg);
  if (rep.checks.empty()) throw Error(ErrorCode::OutOfRange, "no check matches '" + cfg.filter + "'");
  if (!quiet) {
    for (const auto& c : rep.checks) {
      const char* tag = c.pass ? "PASS" : (c.kind == CheckKind::Conjecture ? "ANOM" : "FAIL");
      char line[256];
      std::snprintf(line, sizeof line, "%-4s %-28s %s %-11.3e tol %-8.1e n=%zu", tag, c.name.c_str(),
                    c.must_exceed ? ">" : "<", c.max_abs_deviation, c.tolerance, c.samples);
      std::cout << line << (c.kind == CheckKind::Conjecture ? "  [conjecture]" : "") << "\n";
      if (!c.pass && !c.detail.empty()) std::cout << "     " << c.detail << "\n";
    }
    std::cout << "theorems: " << rep.passed << " passed, " << rep.failed << " failed; conjectures: "
              << rep.conjecture_evidence << " supported, " << rep.conjecture_anomalies << " anomalous\n";
  }
  if (!json_out.empty()) emit(json_out, report_to_json(rep));
  return rep.theorems_pass() ? kExitOk : kExitCheck;
}

FitResult fit_from_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::MalformedInput, "cannot read " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, path + ": " + e.what());
  }
  FitResult fit;
  const std::string m = j.value("model", "none");
  fit.model = m == "line" ? FitModel::Line : m == "circle" ? FitModel::Circle : m == "conic" ? FitModel::Conic : FitModel::None;
  fit.coefficients = j.value("coefficients", std::vector<double>{});
  return fit;
}

int cmd_plot(const std::vector<std::string>& traces, const std::vector<std::string>& fits, double f,
             std::optional<double> caustic, const std::string& out) {
  if (!fits.empty() && fits.size() != traces.size())
    throw Error(ErrorCode::MalformedInput, "give one --fit file per trace");
  PlotScene scene;
  scene.f = f;
  scene.caustic_radius = caustic;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    PlotInput in;
    in.label = traces[i];
    const auto slash = in.label.find_last_of('/');
    if (slash != std::string::npos) in.label = in.label.substr(slash + 1);
    in.points = load_trace(traces[i]).points();
    if (in.points.empty()) throw Error(ErrorCode::EmptyTrace, traces[i] + " has no samples");
    if (!fits.empty()) in.fit = fit_from_json(fits[i]);
    scene.traces.push_back(std::move(in));
  }
  emit(out, render_svg(scene));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet polygons in a parabola: closure, loci, fits and checks"};
  app.set_config("--config", "", "TOML config file with per-command sections");
  app.require_subcommand(1);
  double f = 1.0;
  app.add_option("--f", f, "focal distance of the outer parabola")->capture_default_str();

  int N = 3;
  std::vector<double> bracket;
  auto* closure = app.add_subcommand("closure", "caustic radius r/f at which N-gons close");
  closure->add_option("N", N, "number of sides")->required();
  closure->add_option("--bracket", bracket, "bisection bracket on r/f")->expected(2);

  std::string target, out;
  bool polar = false;
  GridFlags gf;
  auto* trace = app.add_subcommand("trace", "locus of a triangle center or centroid as CSV");
  trace->add_option("N", N, "number of sides")->required();
  trace->add_option("target", target, "X1..X161, C0, C1, C2 or W; a trailing ' selects the polar polygon")->required();
  trace->add_flag("--polar", polar, "use the polar polygon");
  trace->add_option("--out,-o", out, "output CSV (default stdout)");
  add_grid_flags(trace, gf);

  std::string csv, model = "auto";
  double fit_tol = 1e-8;
  auto* fit = app.add_subcommand("fit", "fit a line, circle or conic to a trace CSV");
  fit->add_option("trace", csv, "trace CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", model, "auto, line, circle or conic")
      ->check(CLI::IsMember({"auto", "line", "circle", "conic"}))
      ->capture_default_str();
  fit->add_option("--tol", fit_tol, "relative rms accepted by auto")->capture_default_str();
  fit->add_option("--out,-o", out, "output JSON (default stdout)");

  SuiteConfig suite;
  std::string json_out;
  std::vector<std::string> tol_flags;
  bool quiet = false;
  GridFlags vgf;
  auto* verify = app.add_subcommand("verify", "run the proposition checks");
  verify->add_option("--json", json_out, "write the JSON report here");
  verify->add_option("--filter", suite.filter, "glob on check names");
  verify->add_option("--perturb", suite.r_perturbation, "relative perturbation of every caustic radius");
  verify->add_option("--tol", tol_flags, "tolerance override name=value (check name or class)");
  verify->add_flag("--quiet,-q", quiet, "no per-check lines");
  add_grid_flags(verify, vgf);

  std::vector<std::string> plot_traces, plot_fits;
  std::optional<double> caustic;
  auto* plot = app.add_subcommand("plot", "SVG figure of traces over the parabola");
  plot->add_option("traces", plot_traces, "trace CSV files")->required()->check(CLI::ExistingFile);
  plot->add_option("--fit", plot_fits, "fit JSON per trace, overlaid dashed");
  plot->add_option("--caustic", caustic, "caustic radius to draw, in absolute units");
  plot->add_option("--out,-o", out, "output SVG (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!(f > 0.0)) throw Error(ErrorCode::OutOfRange, "f must be positive");
    if (*closure) return cmd_closure(N, f, bracket);
    if (*trace) return cmd_trace(N, target, polar, f, gf, out);
    if (*fit) return cmd_fit(csv, model, fit_tol, out);
    if (*verify) {
      suite.f = f;
      suite.grid = vgf.grid();
      return cmd_verify(suite, tol_flags, json_out, quiet);
    }
    if (*plot) return cmd_plot(plot_traces, plot_fits, f, caustic, out);
  } catch (const Error& e) {
    std::cerr << "parapon: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "parapon: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
