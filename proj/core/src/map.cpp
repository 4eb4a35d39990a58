#include "gpmap/map.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 7> kVariantNames{{
    {Variant::Lozi, "lozi"},
    {Variant::Hybrid, "hybrid"},
    {Variant::BelykhTwoBranch, "belykh"},
    {Variant::BelykhPeriodic, "belykh-periodic"},
    {Variant::Sine, "sine"},
    {Variant::Standard, "standard"},
    {Variant::Zaslavsky, "zaslavsky"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

void require_dissipative(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0 && lambda < 1.0,
          "lambda must lie in (0, 1), got " + std::to_string(lambda));
}

void require_gain(double a) {
  require(std::isfinite(a) && a > 0.0, "a must be positive and finite, got " + std::to_string(a));
}

// Piece of a single-line variant (line at x = 0).
Side resolve_single(double x, Branch branch) {
  switch (branch) {
    case Branch::Left: return Side::Left;
    case Branch::Right: return Side::Right;
    case Branch::Auto: break;
  }
  return x >= 0.0 ? Side::Right : Side::Left;
}

struct PeriodicPiece {
  double line;  // the discontinuity the side refers to
  Side side;
};

PeriodicPiece resolve_periodic(double x, double p, Branch branch) {
  // Midpoints between lines belong to the line above, for every branch.
  const double m = std::floor(x / p);
  const bool lower = x - m * p < 0.5 * p;
  const double line = lower ? m * p : (m + 1.0) * p;
  if (branch == Branch::Auto) return {line, lower ? Side::Right : Side::Left};
  return {line, branch == Branch::Left ? Side::Left : Side::Right};
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  return std::nullopt;
}

std::string_view to_string(Side s) noexcept {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Smooth: return "smooth";
  }
  return "smooth";
}

MapSpec MapSpec::lozi(double lambda, double a) {
  require_dissipative(lambda);
  require_gain(a);
  MapSpec s;
  s.variant = Variant::Lozi;
  s.lambda = lambda;
  s.a = a;
  return s;
}

MapSpec MapSpec::hybrid(double lambda, double a, double l) {
  require_dissipative(lambda);
  require_gain(a);
  require(l >= 0.0 && l <= 1.0, "hybrid weight l must lie in [0, 1]");
  MapSpec s;
  s.variant = Variant::Hybrid;
  s.lambda = lambda;
  s.a = a;
  s.l = l;
  return s;
}

MapSpec MapSpec::belykh(double lambda, double a) {
  require_dissipative(lambda);
  require_gain(a);
  MapSpec s;
  s.variant = Variant::BelykhTwoBranch;
  s.lambda = lambda;
  s.a = a;
  return s;
}

MapSpec MapSpec::belykh_periodic(double lambda, double a, WrapConvention wrap) {
  require_dissipative(lambda);
  require_gain(a);
  MapSpec s;
  s.variant = Variant::BelykhPeriodic;
  s.lambda = lambda;
  s.a = a;
  s.period = 2.0;
  s.topology = Topology::Cylinder;
  s.wrap = wrap;
  return s;
}

MapSpec MapSpec::sine(double lambda, double k) {
  require_dissipative(lambda);
  require(std::isfinite(k), "sine amplitude must be finite");
  MapSpec s;
  s.variant = Variant::Sine;
  s.lambda = lambda;
  s.k = k;
  s.period = 2.0 * std::numbers::pi;
  return s;
}

MapSpec MapSpec::standard(double k) {
  require(std::isfinite(k), "standard-map amplitude must be finite");
  MapSpec s;
  s.variant = Variant::Standard;
  s.lambda = 1.0;
  s.k = k;
  s.period = 2.0 * std::numbers::pi;
  return s;
}

MapSpec MapSpec::zaslavsky(double lambda, double a, double omega) {
  require_dissipative(lambda);
  require(std::isfinite(a) && a >= 0.0, "Zaslavsky amplitude must be non-negative");
  require(std::isfinite(omega), "Zaslavsky omega must be finite");
  MapSpec s;
  s.variant = Variant::Zaslavsky;
  s.lambda = lambda;
  s.a = a;
  s.omega = omega;
  s.period = 2.0 * std::numbers::pi;
  return s;
}

bool MapSpec::piecewise_linear() const noexcept {
  return variant == Variant::Lozi || variant == Variant::BelykhTwoBranch ||
         variant == Variant::BelykhPeriodic || (variant == Variant::Hybrid && l == 1.0);
}

bool MapSpec::smooth() const noexcept {
  return variant == Variant::Sine || variant == Variant::Standard || variant == Variant::Zaslavsky;
}

GValue eval_g(const MapSpec& spec, double x, Branch branch) {
  const double lam = spec.lambda;
  const double a = spec.a;
  switch (spec.variant) {
    case Variant::Lozi: {
      const Side side = resolve_single(x, branch);
      const double s = side == Side::Right ? 1.0 : -1.0;
      return {(1.0 - a * s * x) - (1.0 + lam) * x, -a * s - 1.0 - lam, side};
    }
    case Variant::Hybrid: {
      const Side side = resolve_single(x, branch);
      const double s = side == Side::Right ? 1.0 : -1.0;
      const double al = a * spec.l;
      const double quad = a * (1.0 - spec.l);
      return {((1.0 - al * s * x) - (1.0 + lam) * x) - quad * x * x,
              ((-al * s) - 1.0 - lam) - 2.0 * quad * x, side};
    }
    case Variant::BelykhTwoBranch: {
      const Side side = resolve_single(x, branch);
      return {side == Side::Right ? a * (x - 1.0) : a * (x + 1.0), a, side};
    }
    case Variant::BelykhPeriodic: {
      const double p = spec.period;
      const PeriodicPiece piece = resolve_periodic(x, p, branch);
      const double centre = piece.side == Side::Right ? piece.line + 0.5 * p : piece.line - 0.5 * p;
      return {a * (x - centre), a, piece.side};
    }
    case Variant::Sine:
    case Variant::Standard:
      return {spec.k * std::sin(x), spec.k * std::cos(x), Side::Smooth};
    case Variant::Zaslavsky:
      return {spec.omega * (1.0 - lam) + a * std::sin(x), a * std::cos(x), Side::Smooth};
  }
  return {0.0, 0.0, Side::Smooth};
}

std::optional<double> nearest_discontinuity(const MapSpec& spec, double x) {
  switch (spec.variant) {
    case Variant::Lozi:
    case Variant::Hybrid:
    case Variant::BelykhTwoBranch:
      return 0.0;
    case Variant::BelykhPeriodic:
      return std::round(x / spec.period) * spec.period;
    default:
      return std::nullopt;
  }
}

double discontinuity_distance(const MapSpec& spec, double x) {
  const auto line = nearest_discontinuity(spec, x);
  return line ? std::abs(x - *line) : std::numeric_limits<double>::infinity();
}

double wrap(const MapSpec& spec, double x) {
  if (!spec.on_cylinder()) return x;
  const double p = spec.period;
  if (spec.wrap == WrapConvention::Positive) {
    double w = x - p * std::floor(x / p);
    if (w >= p) w -= p;
    return w;
  }
  double w = x - p * std::floor((x + 0.5 * p) / p);
  if (w >= 0.5 * p) w -= p;
  return w;
}

State step(const MapSpec& spec, const State& s, Branch branch) {
  const GValue g = eval_g(spec, s.x, branch);
  const double t = s.y + g.value;
  const double xn = s.x + t;
  const double yn = spec.lambda * t;
  if (spec.on_cylinder()) return {wrap(spec, xn), yn, s.lift + t};
  return {xn, yn, xn};
}

State step_inverse(const MapSpec& spec, const State& s, Branch branch) {
  const double t = s.y / spec.lambda;
  const double xu = s.x - t;
  const double x = wrap(spec, xu);
  if (branch != Branch::Auto) {
    if (const auto line = nearest_discontinuity(spec, x)) {
      const bool ok = branch == Branch::Left ? x <= *line : x >= *line;
      if (!ok) {
        throw Error(ErrorKind::WrongBranch,
                    "preimage x = " + std::to_string(x) + " is not on the requested side of x = " +
                        std::to_string(*line));
      }
    }
  }
  const GValue g = eval_g(spec, x, branch);
  const double y = t - g.value;
  if (spec.on_cylinder()) return {x, y, s.lift - t};
  return {x, y, x};
}

Jacobian2 jacobian(const MapSpec& spec, double x, Branch branch) {
  const double d = eval_g(spec, x, branch).derivative;
  return {1.0 + d, 1.0, spec.lambda * d, spec.lambda};
}

MapSpec from_henon_lozi(double a, double b, double l) {
  if (!(b < 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Henon-Lozi rewrite needs b < 0 so that lambda = -b > 0");
  }
  return MapSpec::hybrid(-b, a, l);
}

MapSpec from_zaslavsky(double a, double eta, double omega) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "Zaslavsky eta must lie in (0, 1)");
  }
  return MapSpec::zaslavsky(eta, a, omega);
}

MapSpec pll_discretize(double omega1, double omega2, double lambda0, double h,
                       PhaseDetector detector, double tol) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step h must be positive");
  const double lambda = 1.0 - lambda0 * h;
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "1 - lambda0 h must lie in (0, 1)");
  }
  const double a = h * omega1;
  const double lhs = omega2 * h * h;
  const double rhs = lambda * a;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  if (std::abs(lhs - rhs) > tol * scale) {
    throw Error(ErrorKind::InconsistentParameters,
                "omega2 h^2 = " + std::to_string(lhs) + " differs from lambda a = " + std::to_string(rhs));
  }
  if (detector == PhaseDetector::Sine) return MapSpec::sine(lambda, a);
  return MapSpec::belykh_periodic(lambda, a);
}

}  // namespace gpmap
