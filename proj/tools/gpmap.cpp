// gpmap: command-line driver for orbit dumps, certificates, parameter
// atlases, homoclinic roots, spectral queries and the PLL flow.
//
// Exit codes: 0 success (or Holds), 1 Fails / Inapplicable / numeric
// failure, 2 configuration error, 3 numeric overflow.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpmap/certify.hpp"
#include "gpmap/dynamics.hpp"
#include "gpmap/error.hpp"
#include "gpmap/homoclinic.hpp"
#include "gpmap/io.hpp"
#include "gpmap/map.hpp"
#include "gpmap/pll.hpp"
#include "gpmap/scan.hpp"
#include "gpmap/separatrix.hpp"
#include "gpmap/spectral.hpp"

namespace {

using gpmap::Error;
using gpmap::ErrorKind;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOverflow = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  out << text;
}

template <class Fn>
std::string capture(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

ordered_json point(gpmap::Vec2 p) { return ordered_json::array({number(p.x), number(p.y)}); }

// ---- map selection ----------------------------------------------------------

struct MapArgs {
  std::string variant;
  std::string map_file;
  std::optional<double> lambda, a, l, k, omega;
  std::string wrap = "centered";
  bool plane = false;
};

void add_map_options(CLI::App* cmd, MapArgs& m) {
  cmd->add_option("--map", m.variant,
                  "Map variant: lozi, hybrid, belykh, belykh-periodic, sine, standard, zaslavsky");
  cmd->add_option("--map-file", m.map_file, "Key-value MapSpec file (flags given on the command line win)");
  cmd->add_option("--lambda", m.lambda, "Contraction lambda in (0, 1)");
  cmd->add_option("--a", m.a, "Slope / amplitude parameter a");
  cmd->add_option("--l", m.l, "Hybrid weight l in [0, 1] (1 = Lozi, 0 = Henon)");
  cmd->add_option("--k", m.k, "Sine / standard map amplitude");
  cmd->add_option("--omega", m.omega, "Zaslavsky rotation");
  cmd->add_option("--wrap", m.wrap, "Cylinder representative: centered or positive")
      ->check(CLI::IsMember({"centered", "positive"}));
  cmd->add_flag("--plane", m.plane, "Iterate periodic variants on the plane instead of the cylinder");
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw CLI::RequiredError(flag);
  return *v;
}

gpmap::MapSpec build_map(const MapArgs& m) {
  std::string text;
  if (!m.map_file.empty()) {
    std::ifstream in(m.map_file);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read map file '" + m.map_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (!m.variant.empty()) text += "\nvariant = " + m.variant;
  if (text.find("variant") == std::string::npos) throw CLI::RequiredError("--map");
  auto set = [&](const char* key, const std::optional<double>& v) {
    if (v) text += std::string("\n") + key + " = " + gpmap::format_double(*v);
  };
  set("lambda", m.lambda);
  set("a", m.a);
  set("l", m.l);
  set("k", m.k);
  set("omega", m.omega);
  text += "\nwrap = " + m.wrap;

  if (m.map_file.empty()) {
    const auto v = gpmap::parse_variant(m.variant);
    if (!v) throw Error(ErrorKind::InvalidArgument, "unknown map '" + m.variant + "'");
    switch (*v) {
      case gpmap::Variant::Lozi:
      case gpmap::Variant::Hybrid:
      case gpmap::Variant::BelykhTwoBranch:
      case gpmap::Variant::BelykhPeriodic:
      case gpmap::Variant::Zaslavsky:
        need(m.lambda, "--lambda");
        need(m.a, "--a");
        break;
      case gpmap::Variant::Sine: need(m.lambda, "--lambda"); break;
      case gpmap::Variant::Standard: break;
    }
    if (*v == gpmap::Variant::Hybrid) need(m.l, "--l");
  }
  // Later keys override earlier ones, so command-line values win over the file.
  std::string merged;
  {
    std::map<std::string, std::string> kv;
    std::vector<std::string> order;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) merged += line + "\n";
        continue;
      }
      std::string key = line.substr(0, eq);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      if (!kv.count(key)) order.push_back(key);
      kv[key] = line.substr(eq + 1);
    }
    for (const auto& key : order) merged += key + " =" + kv[key] + "\n";
  }
  gpmap::MapSpec spec = gpmap::map_spec_from_key_value(merged);
  if (m.plane) spec.topology = gpmap::Topology::Plane;
  return spec;
}

// ---- iterate ----------------------------------------------------------------

struct IterateArgs {
  MapArgs map;
  std::size_t n = 10000;
  std::size_t transient = 1000;
  std::optional<double> x0, y0;
  std::string csv = "-";
  std::string svg;
  std::string summary;
  bool lyapunov = false;
};

void overlay_regions(gpmap::SvgCanvas& canvas, const gpmap::MapSpec& spec) {
  using gpmap::Variant;
  try {
    if (spec.variant == Variant::Lozi && spec.a > 1.0 + spec.lambda) {
      const auto trap = gpmap::lozi_trap(spec.lambda, spec.a, {200, 50, 50});
      if (trap.region) canvas.polygon(trap.region->outline(), "none", "#1f77b4", 1.0, true);
    }
    if (spec.variant == Variant::BelykhTwoBranch || spec.variant == Variant::BelykhPeriodic) {
      const auto c = gpmap::belykh_construction(spec.lambda, spec.a);
      canvas.polygon(c.P, "none", "#1f77b4", 1.0, true);
      canvas.marker(c.M1, "M1");
      canvas.marker(c.M2, "M2");
      canvas.marker(c.M3, "M3");
      canvas.marker(c.fM1, "fM1");
      if (spec.variant == Variant::BelykhPeriodic && spec.a > 1.0 - spec.lambda) {
        const auto gates = gpmap::cylinder_gates(spec.lambda, spec.a);
        canvas.polygon(gates.delta1.polygon, "#d62728", "#d62728", 0.3);
        canvas.polygon(gates.delta2.polygon, "#2ca02c", "#2ca02c", 0.3);
      }
    }
  } catch (const Error&) {
    // Regions are decoration; a parameter outside their range draws nothing.
  }
}

int run_iterate(const IterateArgs& args, std::uint64_t seed) {
  const gpmap::MapSpec spec = build_map(args.map);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  const double rx = u(rng), ry = u(rng);
  const double x0 = args.x0.value_or(rx);
  const double y0 = args.y0.value_or(ry);
  const gpmap::State s0{gpmap::wrap(spec, x0), y0, x0};

  gpmap::OrbitOptions opt;
  opt.transient = args.transient;
  const auto orbit = gpmap::iterate_orbit(spec, s0, args.n, opt);
  write_text(args.csv, capture([&](std::ostream& os) { gpmap::write_orbit_csv(os, orbit); }));

  if (!args.svg.empty()) {
    gpmap::Polyline pts;
    pts.reserve(orbit.states.size());
    for (const auto& s : orbit.states) pts.push_back(s.point());
    gpmap::Box box = gpmap::bounding_box(pts);
    const double pad = 0.05 * std::max(box.xmax - box.xmin, box.ymax - box.ymin) + 1e-9;
    box = {box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad};
    gpmap::SvgCanvas canvas(box);
    canvas.dots(pts, "#a0a0a0", 0.6);
    overlay_regions(canvas, spec);
    canvas.axes("x", "y");
    canvas.title(std::string(gpmap::to_string(spec.variant)) + " lambda=" + gpmap::format_double(spec.lambda) +
                 " a=" + gpmap::format_double(spec.a));
    write_text(args.svg, canvas.str());
  }

  if (!args.summary.empty() || args.lyapunov) {
    ordered_json j;
    j["map"] = gpmap::to_key_value(spec);
    j["x0"] = x0;
    j["y0"] = y0;
    j["n"] = args.n;
    j["transient"] = args.transient;
    j["discontinuity_hits"] = orbit.discontinuity_hits.size();
    if (args.lyapunov) {
      const auto est = gpmap::lyapunov(spec, s0, args.n, args.transient);
      j["h1"] = number(est.h1);
      j["h2"] = number(est.h2);
      j["ln_lambda"] = std::log(spec.lambda);
    }
    const std::string text = j.dump(2) + "\n";
    if (!args.summary.empty()) write_text(args.summary, text);
    else std::cerr << text;
  }
  return kExitOk;
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs {
  std::string theorem;
  std::optional<double> lambda, a, l;
  std::string map = "lozi";
  std::size_t boundary = 1000, interior = 1000, steps = 1000;
  std::size_t starts = 1000, annulus_steps = 10000;
  std::size_t cone_samples = 10000;
  std::string out = "-";
};

int run_certify(const CertifyArgs& args, std::uint64_t seed) {
  gpmap::InvarianceSampling inv;
  inv.boundary = args.boundary;
  inv.interior = args.interior;
  inv.steps = args.steps;
  inv.seed = seed;

  gpmap::CertReport report;
  const std::string& t = args.theorem;
  if (t == "lozi") {
    report = gpmap::lozi_trap(args.lambda.value_or(0.2), args.a.value_or(1.5), inv).report;
  } else if (t == "hybrid") {
    report = gpmap::hybrid_certify(args.lambda.value_or(0.2), args.a.value_or(1.5), args.l.value_or(0.95));
  } else if (t == "belykh") {
    report = gpmap::belykh_certify(args.lambda.value_or(0.5), args.a.value_or(0.5), inv);
  } else if (t == "annulus") {
    gpmap::AnnulusSampling s;
    s.starts = args.starts;
    s.steps = args.annulus_steps;
    s.seed = seed;
    report = gpmap::annulus_absorbing(args.lambda.value_or(0.8), args.a.value_or(0.6), s);
  } else if (t == "hyperbolicity") {
    MapArgs m;
    m.variant = args.map;
    m.lambda = args.lambda.value_or(0.2);
    m.a = args.a.value_or(1.5);
    m.l = args.l.value_or(1.0);
    report = gpmap::check_theorem1(build_map(m));
  } else if (t == "cones") {
    const double lambda = args.lambda.value_or(0.5);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> d;
    d.reserve(args.cone_samples);
    const double eps = 1e-6, lo = -2.0 * (1.0 + lambda) - eps;
    for (std::size_t i = 0; i < args.cone_samples; ++i) {
      const double r = u(rng);
      d.push_back(i % 2 == 0 ? eps + r * (100.0 - eps) : -100.0 + r * (lo + 100.0));
    }
    report = gpmap::verify_cone_invariance(lambda, d, eps);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown theorem '" + t + "'");
  }
  write_text(args.out, report.to_json(2) + "\n");
  return report.holds() ? kExitOk : kExitNegative;
}

// ---- scan -------------------------------------------------------------------

struct ScanArgs {
  std::string classifier = "lozi";
  std::optional<double> lambda_min, lambda_max, a_min, a_max;
  std::size_t resolution = 500;
  std::optional<std::size_t> n_lambda, n_a;
  double l = 0.95;
  unsigned threads = 0;
  std::string csv = "scan.csv";
  std::string svg;
  std::string boundaries;
  bool no_boundaries = false;
};

int run_scan(const ScanArgs& args) {
  const auto c = gpmap::parse_classifier(args.classifier);
  if (!c) throw Error(ErrorKind::InvalidArgument, "unknown classifier '" + args.classifier + "'");
  const bool belykh = *c == gpmap::Classifier::Belykh;
  gpmap::Axis lam{"lambda", args.lambda_min.value_or(0.0), args.lambda_max.value_or(1.0),
                  args.n_lambda.value_or(args.resolution)};
  gpmap::Axis a{"a", args.a_min.value_or(0.0), args.a_max.value_or(belykh ? 1.0 : 2.5),
                args.n_a.value_or(args.resolution)};
  if (!(lam.hi > lam.lo) || !(a.hi > a.lo)) throw Error(ErrorKind::InvalidArgument, "empty scan window");

  gpmap::ScanOptions opt;
  opt.threads = args.threads;
  opt.l = args.l;
  const auto grid = gpmap::grid_scan(*c, lam, a, opt);
  write_text(args.csv, capture([&](std::ostream& os) { gpmap::write_scan_csv(os, grid); }));

  std::vector<gpmap::BoundaryCurves> curves;
  if (!args.no_boundaries) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (belykh) {
      pairs = {{"single-attractor", "three-component"}};
    } else {
      pairs = {{"neither", "attractor"}, {"neither", "hyperbolic-only"}, {"attractor", "hyperbolic-only"},
               {"trapping-only", "attractor"}};
    }
    for (const auto& [x, y] : pairs) {
      try {
        curves.push_back(gpmap::boundary_extract(grid, x, y));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyBoundary) throw;
      }
    }
  }
  if (!args.boundaries.empty()) {
    ordered_json j = ordered_json::array();
    for (const auto& bc : curves) {
      ordered_json cj;
      cj["scalar"] = bc.scalar;
      cj["max_residual"] = number(bc.max_residual);
      cj["curves"] = ordered_json::array();
      for (const auto& poly : bc.curves) {
        ordered_json pj = ordered_json::array();
        for (const auto p : poly) pj.push_back(point(p));
        cj["curves"].push_back(pj);
      }
      j.push_back(cj);
    }
    write_text(args.boundaries, j.dump(2) + "\n");
  }
  if (!args.svg.empty()) write_text(args.svg, gpmap::render_scan_svg(grid, curves));
  return kExitOk;
}

// ---- homoclinic -------------------------------------------------------------

struct HomoclinicArgs {
  double lambda = 0.2;
  double a_lo = 1.88;
  double a_hi = 1.95;
  double tol = 1e-10;
  bool geometric = false;
  std::string out = "-";
  std::string svg;
  std::string trace_csv;
};

int run_homoclinic(const HomoclinicArgs& args) {
  const auto root = args.geometric ? gpmap::homoclinic_root_geometric(args.lambda, args.a_lo, args.a_hi, args.tol)
                                   : gpmap::homoclinic_root(args.lambda, args.a_lo, args.a_hi, args.tol);
  ordered_json j;
  j["lambda"] = args.lambda;
  j["method"] = args.geometric ? "geometric" : "H";
  j["a"] = number(root.a);
  j["h_residual"] = number(root.h_residual);
  j["m3_distance"] = number(root.m3_distance);
  j["geometric_gap"] = number(root.geometric_gap);
  j["m3"] = point(root.m3);
  j["iterations"] = root.iterations;
  write_text(args.out, j.dump(2) + "\n");

  if (!args.svg.empty() || !args.trace_csv.empty()) {
    const auto spec = gpmap::MapSpec::lozi(args.lambda, root.a);
    const auto fps = gpmap::fixed_points(spec);
    const auto& O1 = fps.front();
    gpmap::TraceOptions up;
    up.budget = 2;
    up.stop_at_discontinuity = false;
    const auto wu = gpmap::trace_separatrix(spec, O1, gpmap::SeparatrixBranch::UnstablePlus, up);
    const auto ws = gpmap::trace_separatrix(spec, O1, gpmap::SeparatrixBranch::StablePlus);
    write_text(args.trace_csv, capture([&](std::ostream& os) { gpmap::write_trace_csv(os, wu); }));
    if (!args.svg.empty()) {
      gpmap::Polyline all;
      for (const auto* tr : {&wu, &ws})
        for (const auto& p : tr->pieces) all.insert(all.end(), p.points.begin(), p.points.end());
      const gpmap::Vec2 o = O1.location.point();
      const gpmap::Vec2 far = o - 0.5 * (ws.end() - o);
      all.push_back(far);
      gpmap::Box box = gpmap::bounding_box(all);
      const double pad = 0.05 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
      gpmap::SvgCanvas canvas({box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad});
      for (const auto& p : wu.pieces) canvas.polyline(p.points, "#d62728", 1.8);
      canvas.polyline({far, o}, "#1f77b4", 1.8, true);
      for (const auto& p : ws.pieces) canvas.polyline(p.points, "#1f77b4", 1.8, true);
      canvas.marker(o, "O1");
      canvas.marker(root.m3, "M3");
      canvas.axes("x", "y");
      canvas.title("Lozi lambda=" + gpmap::format_double(args.lambda) + " a=" + gpmap::format_double(root.a));
      write_text(args.svg, canvas.str());
    }
  }
  return kExitOk;
}

// ---- eig --------------------------------------------------------------------

struct EigArgs {
  std::optional<double> d;
  MapArgs map;
  double epsilon = 1e-6;
  std::string out = "-";
};

ordered_json eigen_json(double d, double lambda, double epsilon) {
  ordered_json j;
  j["d"] = d;
  j["lambda"] = lambda;
  j["class"] = std::string(gpmap::to_string(gpmap::classify(d, lambda, epsilon)));
  try {
    const auto e = gpmap::eigen(d, lambda);
    j["mu1"] = e.mu1;
    j["mu2"] = e.mu2;
    j["alpha1"] = e.alpha1;
    j["alpha2"] = e.alpha2;
    j["discriminant"] = e.discriminant;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ComplexEigenvalues) throw;
    j["complex"] = true;
  }
  return j;
}

int run_eig(const EigArgs& args) {
  ordered_json j;
  if (args.d) {
    const double lambda = need(args.map.lambda, "--lambda");
    j = eigen_json(*args.d, lambda, args.epsilon);
    const auto c = gpmap::cones(lambda);
    j["unstable_cone"] = {c.unstable.lo, c.unstable.hi};
    j["stable_cone"] = {c.stable.lo, c.stable.hi};
  } else {
    const auto spec = build_map(args.map);
    j["map"] = gpmap::to_key_value(spec);
    j["fixed_points"] = ordered_json::array();
    for (const auto& fp : gpmap::fixed_points(spec)) {
      ordered_json f = eigen_json(fp.d, spec.lambda, args.epsilon);
      f["location"] = point(fp.location.point());
      f["side"] = std::string(gpmap::to_string(fp.side));
      f["unstable_slope"] = number(fp.unstable_slope);
      f["stable_slope"] = number(fp.stable_slope);
      j["fixed_points"].push_back(f);
    }
  }
  write_text(args.out, j.dump(2) + "\n");
  return kExitOk;
}

// ---- pll --------------------------------------------------------------------

struct PllArgs {
  gpmap::PllParams params;
  double h = 1e-3;
  double T = 30.0;
  std::size_t starts = 6;
  std::size_t record_every = 10;
  std::optional<double> x0, u0;
  std::string csv = "pll.csv";
  std::string v_csv;
  std::string svg;
};

int run_pll(const PllArgs& args, std::uint64_t seed) {
  if (!(args.h > 0.0)) throw Error(ErrorKind::InvalidArgument, "--h-step must be positive");
  if (!(args.T >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--T must be non-negative");
  std::vector<gpmap::PllState> starts;
  if (args.x0 || args.u0) {
    starts.push_back({args.x0.value_or(0.0), args.u0.value_or(0.0)});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-1.9, 1.9), uu(-2.0, 2.0);
    for (std::size_t i = 0; i < args.starts; ++i) {
      const double x = ux(rng);
      starts.push_back({x, uu(rng)});
    }
  }
  gpmap::PllOptions opt;
  opt.h = args.h;
  opt.record_every = args.record_every;

  std::ostringstream traj, vcsv;
  traj << "start,t,x,u,V,mode\n";
  vcsv << "start,t,V\n";
  std::vector<gpmap::Polyline> curves;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const auto samples = gpmap::pll_integrate(args.params, starts[k], args.T, opt);
    gpmap::Polyline curve;
    for (const auto& s : samples) {
      traj << k << ',' << gpmap::format_double(s.t) << ',' << gpmap::format_double(s.x) << ','
           << gpmap::format_double(s.u) << ',' << gpmap::format_double(s.V) << ',' << gpmap::to_string(s.mode)
           << '\n';
      vcsv << k << ',' << gpmap::format_double(s.t) << ',' << gpmap::format_double(s.V) << '\n';
      curve.push_back({s.x, s.u});
    }
    curves.push_back(std::move(curve));
  }
  write_text(args.csv, traj.str());
  write_text(args.v_csv, vcsv.str());
  if (!args.svg.empty()) {
    gpmap::SvgCanvas canvas({-2.0, 2.0, -2.5, 2.5});
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    for (std::size_t k = 0; k < curves.size(); ++k) canvas.polyline(curves[k], colors[k % 6], 1.2);
    canvas.polyline({{0.0, -2.5}, {0.0, 2.5}}, "#7f7f7f", 0.8, true);
    canvas.marker({0.0, 0.0}, "glued equilibrium", "#d62728");
    canvas.axes("x", "u");
    canvas.title("PLL phase portrait");
    write_text(args.svg, canvas.str());
  }
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InconsistentParameters: return kExitConfig;
    case ErrorKind::Overflow: return kExitOverflow;
    default: return kExitNegative;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpmap: generalized planar map toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML config file; command-line flags take precedence");
  app.allow_config_extras(false);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for every randomized sampling step")->capture_default_str();

  IterateArgs it;
  auto* iterate = app.add_subcommand("iterate", "Iterate a map and dump the orbit as CSV");
  add_map_options(iterate, it.map);
  iterate->add_option("--n", it.n, "Recorded iterates after the transient")->capture_default_str();
  iterate->add_option("--transient", it.transient, "Discarded iterates")->capture_default_str();
  iterate->add_option("--x0", it.x0, "Initial x (default: seeded draw in [-0.1, 0.1])");
  iterate->add_option("--y0", it.y0, "Initial y (default: seeded draw in [-0.1, 0.1])");
  iterate->add_option("--csv", it.csv, "Orbit CSV path, '-' for stdout")->capture_default_str();
  iterate->add_option("--svg", it.svg, "SVG portrait of the recorded points");
  iterate->add_option("--summary", it.summary, "JSON run summary path");
  iterate->add_flag("--lyapunov", it.lyapunov, "Also estimate both Lyapunov exponents");

  CertifyArgs ce;
  auto* certify = app.add_subcommand("certify", "Run a numeric certificate and emit its JSON report");
  certify->add_option("--theorem", ce.theorem, "lozi, hybrid, belykh, annulus, hyperbolicity or cones")
      ->required()
      ->check(CLI::IsMember({"lozi", "hybrid", "belykh", "annulus", "hyperbolicity", "cones"}));
  certify->add_option("--lambda", ce.lambda, "lambda (default per theorem)");
  certify->add_option("--a", ce.a, "a (default per theorem)");
  certify->add_option("--l", ce.l, "Hybrid weight (default 0.95)");
  certify->add_option("--map", ce.map, "Variant for --theorem hyperbolicity")->capture_default_str();
  certify->add_option("--boundary-samples", ce.boundary, "Boundary points mapped")->capture_default_str();
  certify->add_option("--interior-samples", ce.interior, "Random interior starts")->capture_default_str();
  certify->add_option("--steps", ce.steps, "Iterates per interior start")->capture_default_str();
  certify->add_option("--starts", ce.starts, "Annulus starts")->capture_default_str();
  certify->add_option("--annulus-steps", ce.annulus_steps, "Annulus steps after entry")->capture_default_str();
  certify->add_option("--cone-samples", ce.cone_samples, "Sampled derivatives for cones")->capture_default_str();
  certify->add_option("--out", ce.out, "JSON path, '-' for stdout")->capture_default_str();

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "Classify a (lambda, a) grid and render the atlas");
  scan->add_option("--classifier", sc.classifier, "lozi, hybrid or belykh")->capture_default_str();
  scan->add_option("--lambda-min", sc.lambda_min, "Window (default 0)");
  scan->add_option("--lambda-max", sc.lambda_max, "Window (default 1)");
  scan->add_option("--a-min", sc.a_min, "Window (default 0)");
  scan->add_option("--a-max", sc.a_max, "Window (default 2.5, belykh 1)");
  scan->add_option("--resolution", sc.resolution, "Cells per axis (at least 2)")->capture_default_str();
  scan->add_option("--n-lambda", sc.n_lambda, "Cells along lambda (overrides --resolution)");
  scan->add_option("--n-a", sc.n_a, "Cells along a (overrides --resolution)");
  scan->add_option("--l", sc.l, "Hybrid weight")->capture_default_str();
  scan->add_option("--threads", sc.threads, "Workers (0: GPMAP_THREADS or hardware)")->capture_default_str();
  scan->add_option("--csv", sc.csv, "Grid CSV path")->capture_default_str();
  scan->add_option("--svg", sc.svg, "Heatmap SVG path");
  scan->add_option("--boundaries", sc.boundaries, "Boundary polylines as JSON");
  scan->add_flag("--no-boundaries", sc.no_boundaries, "Skip boundary refinement");

  HomoclinicArgs ho;
  auto* homoclinic = app.add_subcommand("homoclinic", "Root of the Lozi homoclinic condition along a");
  homoclinic->add_option("--lambda", ho.lambda, "lambda")->capture_default_str();
  homoclinic->add_option("--a-lo", ho.a_lo, "Bracket low end")->capture_default_str();
  homoclinic->add_option("--a-hi", ho.a_hi, "Bracket high end")->capture_default_str();
  homoclinic->add_option("--tol", ho.tol, "Bisection tolerance in a")->capture_default_str();
  homoclinic->add_flag("--geometric", ho.geometric, "Bisect the traced landing gap instead of H");
  homoclinic->add_option("--out", ho.out, "JSON path, '-' for stdout")->capture_default_str();
  homoclinic->add_option("--svg", ho.svg, "Separatrix picture at the root");
  homoclinic->add_option("--trace-csv", ho.trace_csv, "Unstable separatrix vertices at the root");

  EigArgs ei;
  auto* eig = app.add_subcommand("eig", "Eigenstructure for one derivative or a map's fixed points");
  eig->add_option("--d", ei.d, "Derivative value g'(x); requires --lambda");
  add_map_options(eig, ei.map);
  eig->add_option("--epsilon", ei.epsilon, "Hyperbolicity margin")->capture_default_str();
  eig->add_option("--out", ei.out, "JSON path, '-' for stdout")->capture_default_str();

  PllArgs pl;
  auto* pll = app.add_subcommand("pll", "Integrate the PLL flow and check its Lyapunov function");
  pll->add_option("--omega1", pl.params.omega1, "Gain omega1")->capture_default_str();
  pll->add_option("--omega2", pl.params.omega2, "Gain omega2")->capture_default_str();
  pll->add_option("--lambda0", pl.params.lambda0, "Damping lambda0")->capture_default_str();
  pll->add_option("--a", pl.params.a, "Sawtooth slope")->capture_default_str();
  pll->add_option("--h-step", pl.h, "RK4 step (positive)")->capture_default_str();
  pll->add_option("--T", pl.T, "Integration time")->capture_default_str();
  pll->add_option("--starts", pl.starts, "Seeded random starts")->capture_default_str();
  pll->add_option("--x0", pl.x0, "Single start x (replaces random starts)");
  pll->add_option("--u0", pl.u0, "Single start u (replaces random starts)");
  pll->add_option("--record-every", pl.record_every, "Emit every k-th step")->capture_default_str();
  pll->add_option("--csv", pl.csv, "Trajectory CSV path")->capture_default_str();
  pll->add_option("--v-csv", pl.v_csv, "V along the trajectories");
  pll->add_option("--svg", pl.svg, "Phase portrait SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*iterate) return run_iterate(it, seed);
    if (*certify) return run_certify(ce, seed);
    if (*scan) return run_scan(sc);
    if (*homoclinic) return run_homoclinic(ho);
    if (*eig) return run_eig(ei);
    if (*pll) return run_pll(pl, seed);
  } catch (const CLI::ParseError& e) {
    std::cerr << "gpmap: " << e.what() << "\n" << app.help();
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "gpmap: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "gpmap: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitOk;
}
