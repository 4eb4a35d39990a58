#ifndef GPMAP_MAP_HPP
#define GPMAP_MAP_HPP

// The planar map family
//
//   x' = x + y + g(x)
//   y' = lambda * (y + g(x))
//
// with g drawn from a small set of closed forms. Every variant shares the
// Jacobian ((1 + g'(x), 1), (lambda g'(x), lambda)), whose determinant is
// lambda independent of x.

#include <optional>
#include <string_view>

#include "gpmap/geometry.hpp"

namespace gpmap {

enum class Variant {
  Lozi,             // g = 1 - a|x| - (1+lambda)x
  Hybrid,           // g = 1 - a l|x| - (1+lambda)x - a(1-l)x^2
  BelykhTwoBranch,  // g = a(x+1) for x < 0, a(x-1) for x >= 0
  BelykhPeriodic,   // g = a(x - (2k-1)) on (2k-2, 2k), the 2-periodic sawtooth
  Sine,             // g = k sin x
  Standard,         // g = k sin x with lambda = 1
  Zaslavsky,        // g = omega(1-lambda) + a sin x
};

enum class Topology { Plane, Cylinder };

/// Representative interval for wrapped x on the cylinder.
enum class WrapConvention {
  Centered,  // [-period/2, period/2)
  Positive,  // [0, period)
};

/// Which smooth piece of g to evaluate near a discontinuity line.
/// Auto takes the piece containing x, with ties resolved to the right.
/// Left and Right select the piece on that side of the nearest line and
/// extend it analytically.
enum class Branch { Auto, Left, Right };

/// The piece actually used for an evaluation.
enum class Side { Left, Right, Smooth };

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;
std::string_view to_string(Side s) noexcept;
inline Branch to_branch(Side s) noexcept {
  return s == Side::Left ? Branch::Left : s == Side::Right ? Branch::Right : Branch::Auto;
}

/// Immutable description of one member of the map family. Construct through
/// the named factories, which validate parameter ranges.
struct MapSpec {
  Variant variant = Variant::Lozi;
  double lambda = 0.5;
  double a = 1.0;
  double l = 1.0;       // hybrid weight: 1 is Lozi, 0 is Henon
  double k = 1.0;       // sine / standard amplitude
  double omega = 0.0;   // Zaslavsky rotation
  double period = 2.0;  // cylinder period
  Topology topology = Topology::Plane;
  WrapConvention wrap = WrapConvention::Centered;

  static MapSpec lozi(double lambda, double a);
  static MapSpec hybrid(double lambda, double a, double l);
  static MapSpec belykh(double lambda, double a);
  static MapSpec belykh_periodic(double lambda, double a,
                                 WrapConvention wrap = WrapConvention::Centered);
  static MapSpec sine(double lambda, double k = 1.0);
  static MapSpec standard(double k);
  static MapSpec zaslavsky(double lambda, double a, double omega);

  bool piecewise_linear() const noexcept;
  bool smooth() const noexcept;
  bool on_cylinder() const noexcept { return topology == Topology::Cylinder; }
};

struct GValue {
  double value;
  double derivative;
  Side side;
};

/// Phase-space point. On the cylinder `x` is wrapped and `lift` carries the
/// unwrapped coordinate; on the plane both are equal.
struct State {
  double x = 0.0;
  double y = 0.0;
  double lift = 0.0;

  static State at(double x, double y) { return {x, y, x}; }
  Vec2 point() const { return {x, y}; }
  friend bool operator==(const State&, const State&) = default;
};

using Jacobian2 = Mat2;

GValue eval_g(const MapSpec& spec, double x, Branch branch = Branch::Auto);

/// Nearest discontinuity line of g' to x, if the variant has any.
std::optional<double> nearest_discontinuity(const MapSpec& spec, double x);

/// Distance to the nearest discontinuity line (infinity for smooth variants).
double discontinuity_distance(const MapSpec& spec, double x);

/// Representative of x on the cylinder (identity on the plane).
double wrap(const MapSpec& spec, double x);

State step(const MapSpec& spec, const State& s, Branch branch = Branch::Auto);

/// Unique preimage. With an explicit branch, throws WrongBranch when the
/// recovered x lies on the other side of its nearest discontinuity.
State step_inverse(const MapSpec& spec, const State& s, Branch branch = Branch::Auto);

Jacobian2 jacobian(const MapSpec& spec, double x, Branch branch = Branch::Auto);

/// Henon-Lozi family x' = y + 1 - a U(x), y' = b x with
/// U = l|x| + (1-l)x^2, rewritten through (x, y) -> (x, y - b x).
MapSpec from_henon_lozi(double a, double b, double l);

/// Zaslavsky map z' = eta(z + a sin t), t' = t + omega + z + a sin t under
/// x = t, y = z + omega eta.
MapSpec from_zaslavsky(double a, double eta, double omega);

enum class PhaseDetector { Sawtooth, Sine };

/// Euler-like discretisation of the PLL loop with a unit-slope phase
/// detector: y = h u, lambda = 1 - lambda0 h, a = h omega1, and the
/// consistency relation omega2 h^2 = lambda a checked to a relative `tol`.
MapSpec pll_discretize(double omega1, double omega2, double lambda0, double h,
                       PhaseDetector detector = PhaseDetector::Sawtooth, double tol = 1e-9);

}  // namespace gpmap

#endif
