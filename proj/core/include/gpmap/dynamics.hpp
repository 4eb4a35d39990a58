#ifndef GPMAP_DYNAMICS_HPP
#define GPMAP_DYNAMICS_HPP

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "gpmap/map.hpp"

namespace gpmap {

/// Post-transient orbit. branches[i] is the piece of g used at states[i],
/// so step(states[i], to_branch(branches[i])) == states[i + 1].
struct OrbitRecord {
  std::vector<State> states;
  std::vector<Side> branches;
  std::vector<std::size_t> discontinuity_hits;  // indices within hit_tol of a line
  std::size_t transient = 0;
  double hit_tol = 1e-9;
};

struct OrbitOptions {
  std::size_t transient = 1000;
  double hit_tol = 1e-9;
  double overflow = 1e12;  // |y| above this (or a non-finite state) throws Overflow
};

OrbitRecord iterate_orbit(const MapSpec& spec, State s0, std::size_t n, const OrbitOptions& options = {});

struct LyapunovEstimate {
  double h1 = 0.0;  // nats per iterate, h1 >= h2
  double h2 = 0.0;
  std::size_t n = 0;
  std::size_t renormalization = 1;
};

/// Tangent-frame propagation with QR re-orthonormalization every
/// `renormalization` steps. The first `transient` steps move the state and
/// align the frame without contributing to the sums.
LyapunovEstimate lyapunov(const MapSpec& spec, State s0, std::size_t n, std::size_t transient = 1000,
                          std::size_t renormalization = 1, double overflow = 1e12);

enum class WindingLabel { Oscillating, Rotating, RotatingOscillating };

std::string_view to_string(WindingLabel l) noexcept;

struct WindingOptions {
  double bounded_turns = 2.0;  // |net winding| allowed for an oscillating orbit
  std::size_t window = 1000;   // steps per monotone-advance window
  std::size_t min_windows = 3; // shorter orbits are Inconclusive
};

struct WindingStats {
  long long net_winding = 0;     // whole turns of the lift over the orbit
  double turns = 0.0;            // exact lift advance in periods
  double winding_per_1000 = 0.0;
  double p_fraction = 0.0;
  WindingLabel label = WindingLabel::RotatingOscillating;
};

/// Membership test for the oscillation region, applied to the point with x
/// reduced into [-period/2, period/2).
using RegionTest = std::function<bool(Vec2)>;

/// Throws Inconclusive when the orbit is shorter than min_windows windows.
WindingStats winding_classify(const MapSpec& spec, const OrbitRecord& orbit, const RegionTest& in_p,
                              const WindingOptions& options = {});

}  // namespace gpmap

#endif
