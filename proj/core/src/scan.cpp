#include "gpmap/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint8_t kHyper = 1;
constexpr std::uint8_t kTrap = 2;

const std::vector<std::string> kFourWay{"neither", "hyperbolic-only", "trapping-only", "attractor", "error"};
const std::vector<std::string> kBelykh{"single-attractor", "three-component", "error"};

struct Cell {
  std::uint8_t label;
  double witness;
  std::uint8_t flags;
};

double hyper_scalar(Classifier c, double lambda, double a, double l) {
  if (c == Classifier::Hybrid) return a * l - (1.0 + lambda);
  return a - (1.0 + lambda);
}

// Throws when the trapping scalar is undefined at (lambda, a).
double trap_scalar(Classifier c, double lambda, double a, double l) {
  switch (c) {
    case Classifier::Lozi: return lozi_H(lambda, a);
    case Classifier::Hybrid: {
      const HybridConstruction h = hybrid_construction(lambda, a, l);
      return (1.0 - lambda) * (h.M3.x - h.O1.location.x) + h.M3.y;
    }
    case Classifier::Belykh: return (1.0 - lambda) - a;
  }
  return kNaN;
}

Cell evaluate(Classifier c, double lambda, double a, double l) {
  if (c == Classifier::Belykh) {
    const double slack = (1.0 - lambda) - a;
    return {static_cast<std::uint8_t>(slack >= 0.0 ? 0 : 1), slack, kFlagNone};
  }
  const std::uint8_t error_label = 4;
  try {
    std::uint8_t label = hyper_scalar(c, lambda, a, l) > 0.0 ? kHyper : 0;
    if (c == Classifier::Lozi && a * a < 4.0 * lambda) return {label, kNaN, kFlagHUndefined};
    double w = kNaN;
    try {
      w = trap_scalar(c, lambda, a, l);
    } catch (const Error&) {
      return {label, kNaN, kFlagNoConstruction};
    }
    // The Lozi trapping polygon only exists above the hyperbolicity line.
    if (c == Classifier::Lozi && !(label & kHyper)) return {label, w, kFlagNoConstruction};
    if (w >= -1e-12) label |= kTrap;
    return {label, w, kFlagNone};
  } catch (const std::exception&) {
    return {error_label, kNaN, kFlagError};
  }
}

std::optional<std::uint8_t> code_of(Classifier c, const std::string& name) {
  const auto& names = label_names(c);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<std::uint8_t>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Classifier c) noexcept {
  switch (c) {
    case Classifier::Lozi: return "lozi";
    case Classifier::Hybrid: return "hybrid";
    case Classifier::Belykh: return "belykh";
  }
  return "lozi";
}

std::optional<Classifier> parse_classifier(std::string_view name) noexcept {
  if (name == "lozi") return Classifier::Lozi;
  if (name == "hybrid") return Classifier::Hybrid;
  if (name == "belykh") return Classifier::Belykh;
  return std::nullopt;
}

const std::vector<std::string>& label_names(Classifier c) {
  return c == Classifier::Belykh ? kBelykh : kFourWay;
}

const std::string& ScanGrid::label_name(std::size_t i, std::size_t j) const {
  return label_names(classifier).at(label(i, j));
}

unsigned default_threads() {
  if (const char* env = std::getenv("GPMAP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ScanGrid grid_scan(Classifier classifier, const Axis& lambda, const Axis& a, const ScanOptions& options) {
  if (lambda.n < 2 || a.n < 2) {
    throw Error(ErrorKind::InvalidArgument, "scan resolution must be at least 2 per axis");
  }
  ScanGrid grid;
  grid.classifier = classifier;
  grid.l = options.l;
  grid.lambda_axis = lambda;
  grid.a_axis = a;
  const std::size_t cells = lambda.n * a.n;
  grid.labels.assign(cells, 0);
  grid.witness.assign(cells, kNaN);
  grid.flags.assign(cells, 0);

  std::atomic<std::size_t> next_row{0};
  auto worker = [&] {
    for (std::size_t i = next_row++; i < lambda.n; i = next_row++) {
      const double lam = lambda.at(i);
      for (std::size_t j = 0; j < a.n; ++j) {
        const Cell c = evaluate(classifier, lam, a.at(j), options.l);
        const std::size_t k = grid.index(i, j);
        grid.labels[k] = c.label;
        grid.witness[k] = c.witness;
        grid.flags[k] = c.flags;
      }
    }
  };
  const unsigned threads = options.threads == 0 ? default_threads() : options.threads;
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return grid;
}

BoundaryCurves boundary_extract(const ScanGrid& grid, const std::string& label_a, const std::string& label_b,
                                double tol) {
  const auto ca = code_of(grid.classifier, label_a);
  const auto cb = code_of(grid.classifier, label_b);
  if (!ca || !cb || *ca == *cb) {
    throw Error(ErrorKind::EmptyBoundary, "unknown or identical labels '" + label_a + "', '" + label_b + "'");
  }
  bool has_a = false, has_b = false;
  for (const auto lab : grid.labels) {
    has_a = has_a || lab == *ca;
    has_b = has_b || lab == *cb;
  }
  if (!has_a || !has_b) throw Error(ErrorKind::EmptyBoundary, "grid lacks one of the labels");

  BoundaryCurves out;
  std::function<double(double, double)> scalar;
  const Classifier c = grid.classifier;
  const double l = grid.l;
  if (c == Classifier::Belykh) {
    out.scalar = "1-lambda-a";
    scalar = [](double lam, double a) { return (1.0 - lam) - a; };
  } else {
    const std::uint8_t diff = *ca ^ *cb;
    if (diff & kHyper) {
      out.scalar = c == Classifier::Hybrid ? "a*l-(1+lambda)" : "a-(1+lambda)";
      scalar = [c, l](double lam, double a) { return hyper_scalar(c, lam, a, l); };
    } else if (diff == kTrap) {
      out.scalar = c == Classifier::Hybrid ? "condition27" : "H";
      scalar = [c, l](double lam, double a) { return trap_scalar(c, lam, a, l); };
    } else {
      throw Error(ErrorKind::EmptyBoundary, "labels differ in more than one condition");
    }
  }

  std::map<std::size_t, Polyline> open;
  auto flush = [&](std::size_t track) {
    auto it = open.find(track);
    if (it == open.end()) return;
    if (!it->second.empty()) out.curves.push_back(std::move(it->second));
    open.erase(it);
  };

  for (std::size_t i = 0; i < grid.lambda_axis.n; ++i) {
    const double lam = grid.lambda_axis.at(i);
    std::size_t track = 0;
    for (std::size_t j = 0; j + 1 < grid.a_axis.n; ++j) {
      const auto l0 = grid.label(i, j), l1 = grid.label(i, j + 1);
      if (!((l0 == *ca && l1 == *cb) || (l0 == *cb && l1 == *ca))) continue;
      double lo = grid.a_axis.at(j), hi = grid.a_axis.at(j + 1);
      double flo, fhi;
      try {
        flo = scalar(lam, lo);
        fhi = scalar(lam, hi);
      } catch (const Error&) {
        continue;
      }
      if ((flo > 0.0) == (fhi > 0.0)) continue;
      double best = std::abs(flo) <= std::abs(fhi) ? lo : hi;
      double fbest = std::min(std::abs(flo), std::abs(fhi));
      for (int it = 0; it < 200 && fbest > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double fm = scalar(lam, mid);
        if (std::abs(fm) < fbest) {
          fbest = std::abs(fm);
          best = mid;
        }
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.max_residual = std::max(out.max_residual, fbest);
      open[track].push_back({lam, best});
      ++track;
    }
    for (auto it = open.begin(); it != open.end();) {
      const std::size_t t = it->first;
      ++it;
      if (t >= track) flush(t);
    }
  }
  while (!open.empty()) flush(open.begin()->first);
  if (out.curves.empty()) throw Error(ErrorKind::EmptyBoundary, "no crossing between the labels");
  return out;
}

}  // namespace gpmap
