#include "gpmap/io.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "gpmap/error.hpp"

namespace gpmap {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_orbit_csv(std::ostream& os, const OrbitRecord& orbit) {
  os << "index,x,y,lift,branch,hit\n";
  std::size_t h = 0;
  for (std::size_t i = 0; i < orbit.states.size(); ++i) {
    const bool hit = h < orbit.discontinuity_hits.size() && orbit.discontinuity_hits[h] == i;
    if (hit) ++h;
    const State& s = orbit.states[i];
    os << i << ',' << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.lift) << ','
       << to_string(orbit.branches[i]) << ',' << (hit ? 1 : 0) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const SeparatrixTrace& trace) {
  os << "piece,vertex,x,y,branch\n";
  for (std::size_t p = 0; p < trace.pieces.size(); ++p) {
    const auto& piece = trace.pieces[p];
    for (std::size_t v = 0; v < piece.points.size(); ++v) {
      os << p << ',' << v << ',' << format_double(piece.points[v].x) << ',' << format_double(piece.points[v].y)
         << ',' << to_string(piece.branch) << '\n';
    }
  }
}

void write_scan_csv(std::ostream& os, const ScanGrid& grid) {
  os << "cell,i,j,lambda,a,label,witness,flags\n";
  for (std::size_t i = 0; i < grid.lambda_axis.n; ++i) {
    for (std::size_t j = 0; j < grid.a_axis.n; ++j) {
      const std::size_t k = grid.index(i, j);
      os << k << ',' << i << ',' << j << ',' << format_double(grid.lambda_axis.at(i)) << ','
         << format_double(grid.a_axis.at(j)) << ',' << grid.label_name(i, j) << ',' << format_double(grid.witness[k])
         << ',' << static_cast<int>(grid.flags[k]) << '\n';
    }
  }
}

void write_pll_csv(std::ostream& os, const std::vector<PllSample>& samples) {
  os << "t,x,u,V,mode\n";
  for (const auto& s : samples) {
    os << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.u) << ','
       << format_double(s.V) << ',' << to_string(s.mode) << '\n';
  }
}

std::string to_key_value(const MapSpec& spec) {
  std::ostringstream os;
  os << "variant = " << to_string(spec.variant) << '\n'
     << "lambda = " << format_double(spec.lambda) << '\n'
     << "a = " << format_double(spec.a) << '\n'
     << "l = " << format_double(spec.l) << '\n'
     << "k = " << format_double(spec.k) << '\n'
     << "omega = " << format_double(spec.omega) << '\n'
     << "period = " << format_double(spec.period) << '\n'
     << "topology = " << (spec.on_cylinder() ? "cylinder" : "plane") << '\n'
     << "wrap = " << (spec.wrap == WrapConvention::Centered ? "centered" : "positive") << '\n';
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "key '" + key + "' needs a number, got '" + v + "'");
  }
}

}  // namespace

MapSpec map_spec_from_key_value(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected key = value: '" + t + "'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  static const char* known[] = {"variant", "lambda", "a", "l", "k", "omega", "period", "topology", "wrap"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorKind::InvalidArgument, "unknown key '" + key + "'");
  }
  auto num = [&](const char* key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : to_number(key, it->second);
  };
  const auto vit = kv.find("variant");
  if (vit == kv.end()) throw Error(ErrorKind::InvalidArgument, "missing key 'variant'");
  const auto variant = parse_variant(vit->second);
  if (!variant) throw Error(ErrorKind::InvalidArgument, "unknown variant '" + vit->second + "'");

  const double lambda = num("lambda", 0.5);
  const double a = num("a", 1.0);
  MapSpec spec;
  switch (*variant) {
    case Variant::Lozi: spec = MapSpec::lozi(lambda, a); break;
    case Variant::Hybrid: spec = MapSpec::hybrid(lambda, a, num("l", 1.0)); break;
    case Variant::BelykhTwoBranch: spec = MapSpec::belykh(lambda, a); break;
    case Variant::BelykhPeriodic: {
      const auto w = kv.count("wrap") ? kv["wrap"] : std::string("centered");
      if (w != "centered" && w != "positive") throw Error(ErrorKind::InvalidArgument, "wrap must be centered or positive");
      spec = MapSpec::belykh_periodic(lambda, a, w == "centered" ? WrapConvention::Centered : WrapConvention::Positive);
      break;
    }
    case Variant::Sine: spec = MapSpec::sine(lambda, num("k", 1.0)); break;
    case Variant::Standard: spec = MapSpec::standard(num("k", 1.0)); break;
    case Variant::Zaslavsky: spec = MapSpec::zaslavsky(lambda, a, num("omega", 0.0)); break;
  }
  if (kv.count("topology")) {
    const auto& t = kv["topology"];
    if (t != "plane" && t != "cylinder") throw Error(ErrorKind::InvalidArgument, "topology must be plane or cylinder");
    spec.topology = t == "cylinder" ? Topology::Cylinder : Topology::Plane;
  }
  if (kv.count("period")) {
    const double p = num("period", spec.period);
    if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    spec.period = p;
  }
  return spec;
}

SvgCanvas::SvgCanvas(Box world, int width, int height, int margin)
    : world_(world), width_(width), height_(height), margin_(margin) {
  if (!(world_.xmax > world_.xmin)) world_.xmax = world_.xmin + 1.0;
  if (!(world_.ymax > world_.ymin)) world_.ymax = world_.ymin + 1.0;
}

double SvgCanvas::px(double x) const {
  return margin_ + (x - world_.xmin) / (world_.xmax - world_.xmin) * (width_ - 2 * margin_);
}

double SvgCanvas::py(double y) const {
  return height_ - margin_ - (y - world_.ymin) / (world_.ymax - world_.ymin) * (height_ - 2 * margin_);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void SvgCanvas::rect_world(double x0, double y0, double x1, double y1, const std::string& fill) {
  const double X0 = px(std::min(x0, x1)), X1 = px(std::max(x0, x1));
  const double Y0 = py(std::max(y0, y1)), Y1 = py(std::min(y0, y1));
  body_ += "<rect x=\"" + num(X0) + "\" y=\"" + num(Y0) + "\" width=\"" + num(X1 - X0) + "\" height=\"" +
           num(Y1 - Y0) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::polygon(const Polyline& pts, const std::string& fill, const std::string& stroke, double opacity,
                        bool dashed) {
  body_ += "<polygon points=\"";
  for (const Vec2 p : pts) body_ += num(px(p.x)) + "," + num(py(p.y)) + " ";
  body_ += "\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) + "\" stroke=\"" + stroke + "\"";
  if (dashed) body_ += " stroke-dasharray=\"6,4\"";
  body_ += "/>\n";
}

void SvgCanvas::polyline(const Polyline& pts, const std::string& stroke, double width, bool dashed) {
  body_ += "<polyline points=\"";
  for (const Vec2 p : pts) body_ += num(px(p.x)) + "," + num(py(p.y)) + " ";
  body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"";
  if (dashed) body_ += " stroke-dasharray=\"6,4\"";
  body_ += "/>\n";
}

void SvgCanvas::dots(const Polyline& pts, const std::string& fill, double radius) {
  body_ += "<g fill=\"" + fill + "\">\n";
  for (const Vec2 p : pts) {
    if (p.x < world_.xmin || p.x > world_.xmax || p.y < world_.ymin || p.y > world_.ymax) continue;
    body_ += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"" + num(radius) + "\"/>\n";
  }
  body_ += "</g>\n";
}

void SvgCanvas::marker(Vec2 p, const std::string& label, const std::string& fill) {
  body_ += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"3\" fill=\"" + fill + "\"/>\n";
  body_ += "<text x=\"" + num(px(p.x) + 5) + "\" y=\"" + num(py(p.y) - 5) + "\" font-size=\"12\">" + escape(label) +
           "</text>\n";
}

void SvgCanvas::axes(const std::string& x_label, const std::string& y_label) {
  const double x0 = px(world_.xmin), x1 = px(world_.xmax), y0 = py(world_.ymin), y1 = py(world_.ymax);
  body_ += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
           num(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = world_.xmin + (world_.xmax - world_.xmin) * i / 4.0;
    const double fy = world_.ymin + (world_.ymax - world_.ymin) * i / 4.0;
    body_ += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(y0 + 16) + "\" font-size=\"11\" text-anchor=\"middle\">" +
             num(fx) + "</text>\n";
    body_ += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(py(fy) + 4) + "\" font-size=\"11\" text-anchor=\"end\">" +
             num(fy) + "</text>\n";
  }
  body_ += "<text x=\"" + num(0.5 * (x0 + x1)) + "\" y=\"" + num(height_ - 8.0) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  body_ += "<text x=\"14\" y=\"" + num(0.5 * (y0 + y1)) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           num(0.5 * (y0 + y1)) + ")\">" + escape(y_label) + "</text>\n";
}

void SvgCanvas::title(const std::string& text) {
  body_ += "<text x=\"" + num(width_ / 2.0) + "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" + escape(text) +
           "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
         std::to_string(width_) + " " + std::to_string(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

std::string render_scan_svg(const ScanGrid& grid, const std::vector<BoundaryCurves>& curves) {
  static const char* four[] = {"#ffffff", "#b0b0b0", "#f2e36b", "#8a7f2e", "#d62728"};
  static const char* two[] = {"#9ecae1", "#fdae6b", "#d62728"};
  const Axis& L = grid.lambda_axis;
  const Axis& A = grid.a_axis;
  SvgCanvas canvas({L.lo, L.hi, A.lo, A.hi});
  const double dl = (L.hi - L.lo) / static_cast<double>(L.n);
  const double da = (A.hi - A.lo) / static_cast<double>(A.n);
  for (std::size_t i = 0; i < L.n; ++i) {
    for (std::size_t j = 0; j < A.n; ++j) {
      const auto lab = grid.label(i, j);
      const char* fill = grid.classifier == Classifier::Belykh ? two[lab] : four[lab];
      const double l0 = L.lo + dl * i, a0 = A.lo + da * j;
      canvas.rect_world(l0, a0, l0 + dl, a0 + da, fill);
    }
  }
  for (const auto& c : curves) {
    for (const auto& poly : c.curves) canvas.polyline(poly, "black", 2.0, true);
  }
  canvas.axes("lambda", "a");
  canvas.title(std::string(to_string(grid.classifier)) + " parameter plane");
  return canvas.str();
}

}  // namespace gpmap
