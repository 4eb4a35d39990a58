#ifndef GPMAP_SEPARATRIX_HPP
#define GPMAP_SEPARATRIX_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "gpmap/certify.hpp"
#include "gpmap/geometry.hpp"
#include "gpmap/map.hpp"

namespace gpmap {

/// Half-branch of an invariant manifold; "plus" leaves the fixed point
/// towards increasing x.
enum class SeparatrixBranch { UnstablePlus, UnstableMinus, StablePlus, StableMinus };

enum class TraceEvent { Crossed, HitBudget, ReachedStableManifold };

std::string_view to_string(TraceEvent e) noexcept;

struct TracePiece {
  Side branch = Side::Smooth;  // piece of g the generation was mapped with
  Polyline points;
};

struct SeparatrixTrace {
  std::vector<TracePiece> pieces;  // generation by generation, chained
  TraceEvent event = TraceEvent::HitBudget;
  /// Distance from the closest generation end point to the target segment.
  double target_distance = std::numeric_limits<double>::quiet_NaN();
  std::size_t closest_generation = 0;

  Vec2 end() const { return pieces.back().points.back(); }
  /// Largest jump between consecutive pieces.
  double chain_gap() const;
};

struct TraceOptions {
  /// Generations after the first straight (or shot) piece.
  std::size_t budget = 64;
  /// Stop as soon as the first piece meets a discontinuity line.
  bool stop_at_discontinuity = true;
  /// Optional stable-manifold segment to land on.
  std::optional<std::pair<Vec2, Vec2>> target;
  double landing_tol = 1e-6;
  /// Shooting parameters for smooth pieces.
  double delta = 1e-8;
  std::size_t points_per_generation = 1000;
  std::size_t max_vertices = 1000000;
};

/// Traces one half-branch of the manifold of a saddle. Piecewise-linear g
/// gives exact segment chains (each generation is the image of the previous
/// one, split where it meets a discontinuity); smooth g is shot from a seed
/// offset `delta` along the eigenvector. Stable branches use step_inverse.
/// A trace that runs out of budget ends with event HitBudget.
SeparatrixTrace trace_separatrix(const MapSpec& spec, const FixedPointInfo& fp,
                                 SeparatrixBranch which, const TraceOptions& options = {});

struct ShotCrossing {
  Vec2 point;      // iterate on the line x = x_target (x set exactly)
  double seed = 0.0;
  std::size_t iterations = 0;
  Polyline orbit;  // seed and iterates before the crossing
};

/// Finds the point where the manifold through `origin` tangent to
/// `direction` first reaches x = x_target, iterating forward (growth = the
/// expanding multiplier) or backward (growth = 1 / contracting multiplier).
/// The seed is bisected over one fundamental domain. Throws TraceFailure
/// when nothing crosses within `budget` iterates.
ShotCrossing shoot_to_vertical(const MapSpec& spec, Vec2 origin, Vec2 direction, double growth,
                               Branch branch, bool backward, double x_target, double delta,
                               std::size_t budget);

}  // namespace gpmap

#endif
