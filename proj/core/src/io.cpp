#include "parapon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace parapon {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Short form for SVG coordinates.
std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  std::size_t end = used;
  while (end < s.size() && std::isspace(static_cast<unsigned char>(s[end]))) ++end;
  if (used == 0 || end != s.size())
    throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ojson vec(const Vec2& v) { return ojson::array({v.x(), v.y()}); }

ojson features_json(const ConicFeatures& f) {
  ojson j;
  j["class"] = std::string(to_string(f.kind));
  if (f.center) j["center"] = vec(*f.center);
  if (f.kind == ConicClass::Parabola && !f.foci.empty()) {
    j["focus"] = vec(f.foci[0]);
  } else if (!f.foci.empty()) {
    j["foci"] = ojson::array();
    for (const auto& p : f.foci) j["foci"].push_back(vec(p));
  }
  if (f.kind == ConicClass::Parabola && !f.vertices.empty()) {
    j["vertex"] = vec(f.vertices[0]);
  } else if (!f.vertices.empty()) {
    j["vertices"] = ojson::array();
    for (const auto& p : f.vertices) j["vertices"].push_back(vec(p));
  }
  if (f.axis) j["axis"] = vec(*f.axis);
  if (f.opening) j["opening"] = vec(*f.opening);
  if (f.focal_distance) j["focal_distance"] = *f.focal_distance;
  if (f.directrix) j["directrix"] = ojson::array({f.directrix->a, f.directrix->b, f.directrix->c});
  if (f.radius) j["radius"] = *f.radius;
  if (f.semi_axes) j["semi_axes"] = vec(*f.semi_axes);
  return j;
}

ojson fit_object(const FitResult& fit) {
  ojson j;
  j["model"] = std::string(to_string(fit.model));
  j["coefficients"] = fit.coefficients;
  j["rms_residual"] = fit.rms_residual;
  j["max_residual"] = fit.max_residual;
  j["samples"] = fit.samples;
  if (fit.model == FitModel::Line) {
    j["line"] = {{"vertical", fit.vertical}, {"tilt", fit.tilt}};
    if (fit.vertical) j["line"]["x"] = 0.5 * (fit.x_min + fit.x_max);
  }
  if (fit.model == FitModel::Circle && fit.coefficients.size() == 3) {
    j["features"] = {{"class", "circle"},
                     {"center", ojson::array({fit.coefficients[0], fit.coefficients[1]})},
                     {"radius", fit.coefficients[2]}};
  } else if (fit.features) {
    j["features"] = features_json(*fit.features);
  } else {
    j["features"] = ojson::object();
  }
  j["strip"] = {{"x_min", fit.x_min}, {"x_max", fit.x_max}};
  return j;
}

}  // namespace

void write_trace_csv(std::ostream& os, const LocusTrace& trace) {
  os << "y1,x,y\n";
  for (const auto& g : trace.gaps) os << "# gap," << num(g.lo) << ',' << num(g.hi) << '\n';
  for (const auto& s : trace.samples) os << num(s.y1) << ',' << num(s.point.x()) << ',' << num(s.point.y()) << '\n';
}

LocusTrace read_trace_csv(std::istream& is) {
  LocusTrace tr;
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# gap,", 0) == 0) {
        const auto f = split(line.substr(6), ',');
        if (f.size() != 2) throw Error(ErrorCode::MalformedInput, "line " + std::to_string(n) + ": bad gap record");
        tr.gaps.push_back({parse_double(f[0], n), parse_double(f[1], n)});
      }
      continue;
    }
    if (!header) {
      if (line != "y1,x,y") throw Error(ErrorCode::MalformedInput, "expected header 'y1,x,y'");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 3) throw Error(ErrorCode::MalformedInput, "line " + std::to_string(n) + ": expected 3 fields");
    tr.samples.push_back({parse_double(f[0], n), Vec2(parse_double(f[1], n), parse_double(f[2], n))});
  }
  if (!header) throw Error(ErrorCode::MalformedInput, "missing header 'y1,x,y'");
  return tr;
}

std::string fit_to_json(const FitResult& fit, const std::vector<FitResult>& attempts) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  const ojson body = fit_object(fit);
  for (const auto& [k, v] : body.items()) j[k] = v;
  if (!attempts.empty()) {
    j["attempts"] = ojson::array();
    for (const auto& a : attempts)
      j["attempts"].push_back({{"model", std::string(to_string(a.model))}, {"rms_residual", a.rms_residual}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const SuiteReport& report) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["checks"] = ojson::array();
  for (const auto& c : report.checks) {
    ojson o;
    o["name"] = c.name;
    o["paper_ref"] = c.claim;
    o["kind"] = c.kind == CheckKind::Theorem ? "theorem" : "conjecture";
    o["family"] = c.family;
    o["pass"] = c.pass;
    if (std::isfinite(c.max_abs_deviation))
      o["max_deviation"] = c.max_abs_deviation;
    else
      o["max_deviation"] = nullptr;
    o["tolerance"] = c.tolerance;
    o["samples"] = c.samples;
    o["mean_value"] = c.mean_value;
    o["radius_sensitive"] = c.radius_sensitive;
    o["must_exceed"] = c.must_exceed;
    o["detail"] = c.detail;
    j["checks"].push_back(std::move(o));
  }
  j["summary"] = {{"passed", report.passed},
                  {"failed", report.failed},
                  {"conjecture_evidence", report.conjecture_evidence},
                  {"conjecture_anomalies", report.conjecture_anomalies}};
  return j.dump(2) + "\n";
}

namespace {

struct Box {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool contains(const Vec2& p, double margin = 0.0) const {
    const double mx = margin * (x1 - x0), my = margin * (y1 - y0);
    return p.x() >= x0 - mx && p.x() <= x1 + mx && p.y() >= y0 - my && p.y() <= y1 + my;
  }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

class Svg {
 public:
  Svg(const Box& b, double width) : box_(b), w_(width) {
    scale_ = w_ / (b.x1 - b.x0);
    h_ = (b.y1 - b.y0) * scale_;
  }

  std::string px(const Vec2& p) const {
    return short_num((p.x() - box_.x0) * scale_) + "," + short_num((box_.y1 - p.y()) * scale_);
  }

  void polyline(const std::vector<Vec2>& pts, const std::string& color, double width, const std::string& extra = "") {
    if (pts.size() < 2) return;
    os_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"" << extra << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os_ << (i ? " " : "") << px(pts[i]);
    os_ << "\"/>\n";
  }

  void circle(const Vec2& c, double r, const std::string& color, bool filled, const std::string& extra = "") {
    os_ << "<circle cx=\"" << short_num((c.x() - box_.x0) * scale_) << "\" cy=\"" << short_num((box_.y1 - c.y()) * scale_)
        << "\" r=\"" << short_num(r) << "\" fill=\"" << (filled ? color : "none") << "\" stroke=\"" << color << "\""
        << extra << "/>\n";
  }

  void text(const Vec2& at, const std::string& s, const std::string& color) {
    os_ << "<text x=\"" << short_num((at.x() - box_.x0) * scale_) << "\" y=\"" << short_num((box_.y1 - at.y()) * scale_)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << xml_escape(s) << "</text>\n";
  }

  double scale() const { return scale_; }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<!-- generator: parapon " << kSchemaVersion << " -->\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << short_num(w_) << "\" height=\"" << short_num(h_)
        << "\" viewBox=\"0 0 " << short_num(w_) << " " << short_num(h_) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << os_.str() << "</svg>\n";
    return out.str();
  }

 private:
  Box box_;
  double w_, h_ = 0, scale_ = 1;
  std::ostringstream os_;
};

// Split a sampled curve into runs inside the box without long jumps.
std::vector<std::vector<Vec2>> runs(const std::vector<Vec2>& pts, const Box& box) {
  std::vector<std::vector<Vec2>> out(1);
  const double jump = 0.25 * std::max(box.x1 - box.x0, box.y1 - box.y0);
  for (const auto& p : pts) {
    const bool in = box.contains(p, 0.05);
    if (!in || (!out.back().empty() && (p - out.back().back()).norm() > jump)) {
      if (!out.back().empty()) out.emplace_back();
      if (!in) continue;
    }
    out.back().push_back(p);
  }
  if (out.back().empty()) out.pop_back();
  return out;
}

// Conic branches traced by solving for x along horizontal lines.
std::vector<std::vector<Vec2>> conic_curves(const std::vector<double>& c, const Box& box) {
  const double A = c[0], B = c[1], C = c[2], D = c[3], E = c[4], F = c[5];
  std::vector<Vec2> left, right;
  const int n = 600;
  for (int i = 0; i <= n; ++i) {
    const double y = box.y0 + (box.y1 - box.y0) * i / n;
    const double b = B * y + D, cc = C * y * y + E * y + F;
    if (std::abs(A) < 1e-14) {
      if (std::abs(b) > 1e-14) left.emplace_back(-cc / b, y);
      continue;
    }
    const double disc = b * b - 4.0 * A * cc;
    if (disc < 0.0) continue;
    const double s = std::sqrt(disc);
    left.emplace_back((-b - s) / (2.0 * A), y);
    right.emplace_back((-b + s) / (2.0 * A), y);
  }
  auto a = runs(left, box), r = runs(right, box);
  a.insert(a.end(), r.begin(), r.end());
  return a;
}

}  // namespace

std::string render_svg(const PlotScene& scene) {
  const double f = scene.f;
  if (scene.traces.empty()) throw Error(ErrorCode::EmptyTrace, "nothing to plot");
  for (const auto& t : scene.traces)
    if (t.points.empty()) throw Error(ErrorCode::EmptyTrace, "trace '" + t.label + "' is empty");

  Box box{-4.0 * f, 2.0 * f, -3.0 * f, 3.0 * f};
  const double limit = 20.0 * f;
  for (const auto& t : scene.traces)
    for (const auto& p : t.points)
      if (std::abs(p.x()) <= limit && std::abs(p.y()) <= limit) {
        box.x0 = std::min(box.x0, p.x());
        box.x1 = std::max(box.x1, p.x());
        box.y0 = std::min(box.y0, p.y());
        box.y1 = std::max(box.y1, p.y());
      }
  const double pad = 0.05 * std::max(box.x1 - box.x0, box.y1 - box.y0);
  box.x0 -= pad, box.x1 += pad, box.y0 -= pad, box.y1 += pad;

  Svg svg(box, 800.0);
  std::vector<Vec2> axis = {{box.x0, 0.0}, {box.x1, 0.0}};
  svg.polyline(axis, "#bbbbbb", 0.5);
  std::vector<Vec2> directrix = {{f, box.y0}, {f, box.y1}};
  svg.polyline(directrix, "#bbbbbb", 0.5, " stroke-dasharray=\"4 3\"");

  std::vector<Vec2> parabola;
  for (int i = 0; i <= 400; ++i) {
    const double y = box.y0 + (box.y1 - box.y0) * i / 400;
    parabola.emplace_back(-y * y / (4.0 * f), y);
  }
  for (const auto& r : runs(parabola, box)) svg.polyline(r, "#c9a227", 1.5);
  if (scene.caustic_radius) svg.circle(Vec2(-f, 0.0), *scene.caustic_radius * svg.scale(), "#8b5a2b", false);
  svg.circle(Vec2(-f, 0.0), 2.0, "#000000", true);

  for (std::size_t k = 0; k < scene.traces.size(); ++k) {
    const auto& t = scene.traces[k];
    const std::string color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    double spread = 0.0;
    for (const auto& p : t.points) spread = std::max(spread, (p - t.points.front()).norm());
    if (spread <= 1e-9 * std::max(f, t.points.front().norm())) {
      svg.circle(t.points.front(), 4.0, color, true);
    } else {
      for (const auto& r : runs(t.points, box)) svg.polyline(r, color, 1.5);
    }
    if (t.fit) {
      const FitResult& fit = *t.fit;
      const std::string dash = " stroke-dasharray=\"6 4\"";
      if (fit.model == FitModel::Line && fit.coefficients.size() == 3) {
        const double a = fit.coefficients[0], b = fit.coefficients[1], c = fit.coefficients[2];
        std::vector<Vec2> seg;
        if (std::abs(a) > std::abs(b))
          seg = {{-(b * box.y0 + c) / a, box.y0}, {-(b * box.y1 + c) / a, box.y1}};
        else
          seg = {{box.x0, -(a * box.x0 + c) / b}, {box.x1, -(a * box.x1 + c) / b}};
        svg.polyline(seg, color, 1.0, dash);
      } else if (fit.model == FitModel::Circle && fit.coefficients.size() == 3) {
        svg.circle(Vec2(fit.coefficients[0], fit.coefficients[1]), fit.coefficients[2] * svg.scale(), color, false, dash);
      } else if (fit.model == FitModel::Conic && fit.coefficients.size() == 6) {
        for (const auto& r : conic_curves(fit.coefficients, box)) svg.polyline(r, color, 1.0, dash);
      }
    }
    svg.text(Vec2(box.x0 + pad * 0.4, box.y1 - pad * (0.6 + 0.5 * static_cast<double>(k))), t.label, color);
  }
  return svg.str();
}

}  // namespace parapon
