#include "gpmap/separatrix.hpp"

#include <algorithm>
#include <cmath>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

constexpr double kChainTol = 1e-9;

MapSpec on_plane(MapSpec spec) {
  spec.topology = Topology::Plane;
  return spec;
}

Vec2 forward(const MapSpec& spec, Vec2 p, Branch b) {
  const double t = p.y + eval_g(spec, p.x, b).value;
  return {p.x + t, spec.lambda * t};
}

// Inverse on a prescribed branch, without the side check of step_inverse.
Vec2 backward(const MapSpec& spec, Vec2 p, Branch b) {
  const double t = p.y / spec.lambda;
  const double x = p.x - t;
  return {x, t - eval_g(spec, x, b).value};
}

// Discontinuity lines strictly between x0 and x1.
std::vector<double> lines_between(const MapSpec& spec, double x0, double x1) {
  std::vector<double> out;
  const double lo = std::min(x0, x1), hi = std::max(x0, x1);
  if (spec.variant == Variant::BelykhPeriodic) {
    const double p = spec.period;
    for (double l = p * std::floor(lo / p) + p; l < hi; l += p) {
      if (l > lo) out.push_back(l);
    }
  } else if (!spec.smooth() && lo < 0.0 && 0.0 < hi) {
    out.push_back(0.0);
  }
  if (x1 < x0) std::reverse(out.begin(), out.end());
  return out;
}

// Next discontinuity line met from x moving in direction sign(dx).
std::optional<double> next_line(const MapSpec& spec, double x, double dx) {
  if (spec.smooth()) return std::nullopt;
  if (spec.variant == Variant::BelykhPeriodic) {
    const double p = spec.period;
    return dx > 0.0 ? p * std::floor(x / p) + p : p * std::ceil(x / p) - p;
  }
  if ((0.0 - x) * dx > 0.0) return 0.0;
  return std::nullopt;
}

// Image of a polyline under the piecewise-linear map, split at the lines.
// Returns false when the image is disconnected.
bool map_generation(const MapSpec& spec, const Polyline& in, Polyline& out, Side& side) {
  out.clear();
  side = Side::Smooth;
  for (std::size_t i = 0; i + 1 < in.size(); ++i) {
    Vec2 p = in[i];
    const Vec2 q = in[i + 1];
    Polyline cuts{p};
    for (double l : lines_between(spec, p.x, q.x)) {
      const double t = (l - p.x) / (q.x - p.x);
      Vec2 c = lerp(p, q, t);
      c.x = l;
      cuts.push_back(c);
    }
    cuts.push_back(q);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const Vec2 a = cuts[j], b = cuts[j + 1];
      const GValue g = eval_g(spec, 0.5 * (a.x + b.x));
      const Branch br = to_branch(g.side);
      if (side == Side::Smooth) side = g.side;
      const Vec2 fa = forward(spec, a, br);
      const Vec2 fb = forward(spec, b, br);
      if (!out.empty()) {
        if (distance(out.back(), fa) > kChainTol * std::max(1.0, norm(fa))) return false;
      } else {
        out.push_back(fa);
      }
      out.push_back(fb);
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(TraceEvent e) noexcept {
  switch (e) {
    case TraceEvent::Crossed: return "crossed";
    case TraceEvent::HitBudget: return "hit-budget";
    case TraceEvent::ReachedStableManifold: return "reached-stable-manifold";
  }
  return "hit-budget";
}

double SeparatrixTrace::chain_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    gap = std::max(gap, distance(pieces[i].points.back(), pieces[i + 1].points.front()));
  }
  return gap;
}

ShotCrossing shoot_to_vertical(const MapSpec& spec_in, Vec2 origin, Vec2 direction, double growth,
                               Branch branch, bool backward_dir, double x_target, double delta,
                               std::size_t budget) {
  if (!(growth > 1.0)) {
    throw Error(ErrorKind::TraceFailure, "shooting needs a growth factor above 1");
  }
  const MapSpec spec = on_plane(spec_in);
  const Vec2 dir = (1.0 / norm(direction)) * direction;
  const double side0 = origin.x < x_target ? -1.0 : 1.0;
  auto crossed = [&](Vec2 p) { return (p.x - x_target) * side0 <= 0.0; };
  auto map = [&](Vec2 p) { return backward_dir ? backward(spec, p, branch) : forward(spec, p, branch); };
  auto iterate = [&](double sigma, std::size_t k) {
    Vec2 p = origin + sigma * dir;
    for (std::size_t i = 0; i < k; ++i) p = map(p);
    return p;
  };

  Vec2 p = origin + delta * dir;
  std::size_t k = 0;
  while (!crossed(p)) {
    if (k == budget || !std::isfinite(p.x)) {
      throw Error(ErrorKind::TraceFailure,
                  "no crossing of x = " + std::to_string(x_target) + " within the budget");
    }
    p = map(p);
    ++k;
  }
  if (k == 0) throw Error(ErrorKind::TraceFailure, "seed offset already beyond the target line");

  double lo = delta / growth, hi = delta;
  if (crossed(iterate(lo, k))) {
    throw Error(ErrorKind::TraceFailure, "crossing is not bracketed by one fundamental domain");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (crossed(iterate(mid, k)) ? hi : lo) = mid;
  }
  const Vec2 plo = iterate(lo, k), phi = iterate(hi, k);
  ShotCrossing out;
  const bool use_hi = std::abs(phi.x - x_target) <= std::abs(plo.x - x_target);
  out.seed = use_hi ? hi : lo;
  out.point = use_hi ? phi : plo;
  out.point.x = x_target;
  out.iterations = k;
  Vec2 q = origin + out.seed * dir;
  for (std::size_t i = 0; i < k; ++i) {
    out.orbit.push_back(q);
    q = map(q);
  }
  return out;
}

SeparatrixTrace trace_separatrix(const MapSpec& spec_in, const FixedPointInfo& fp,
                                 SeparatrixBranch which, const TraceOptions& options) {
  if (fp.cls == SaddleClass::NonHyperbolic && !std::isfinite(fp.unstable_slope)) {
    throw Error(ErrorKind::InvalidArgument, "fixed point is not a saddle");
  }
  const MapSpec spec = on_plane(spec_in);
  const bool unstable = which == SeparatrixBranch::UnstablePlus || which == SeparatrixBranch::UnstableMinus;
  const bool plus = which == SeparatrixBranch::UnstablePlus || which == SeparatrixBranch::StablePlus;
  const double slope = unstable ? fp.unstable_slope : fp.stable_slope;
  const double mult = unstable ? fp.unstable_multiplier : fp.stable_multiplier;
  Vec2 dir{1.0, slope};
  dir = (plus ? 1.0 : -1.0) / norm(dir) * dir;
  const Vec2 O = fp.location.point();
  const Branch own = to_branch(fp.side);

  SeparatrixTrace trace;
  auto check_target = [&](Vec2 end, std::size_t gen) {
    if (!options.target) return false;
    const double dist = segment_distance(options.target->first, options.target->second, end);
    if (!(dist >= trace.target_distance)) {
      trace.target_distance = dist;
      trace.closest_generation = gen;
    }
    return dist <= options.landing_tol;
  };

  if (spec.piecewise_linear()) {
    const auto line = next_line(spec, O.x, dir.x);
    if (!line) {
      trace.pieces.push_back({fp.side, {O, O + 10.0 * dir}});
      trace.event = TraceEvent::HitBudget;
      check_target(trace.end(), 0);
      return trace;
    }
    Vec2 C = O + ((*line - O.x) / dir.x) * dir;
    C.x = *line;
    trace.pieces.push_back({fp.side, {O, C}});
    if (check_target(C, 0)) {
      trace.event = TraceEvent::ReachedStableManifold;
      return trace;
    }
    if (options.stop_at_discontinuity || !unstable || mult <= 0.0) {
      trace.event = TraceEvent::Crossed;
      return trace;
    }
    Polyline gen{C, forward(spec, C, own)};
    trace.pieces.push_back({fp.side, gen});
    if (check_target(gen.back(), 1)) {
      trace.event = TraceEvent::ReachedStableManifold;
      return trace;
    }
    std::size_t vertices = 3;
    for (std::size_t k = 2; k <= options.budget; ++k) {
      Polyline next;
      Side side;
      if (!map_generation(spec, gen, next, side) ||
          distance(next.front(), gen.back()) > kChainTol * std::max(1.0, norm(gen.back()))) {
        trace.event = TraceEvent::Crossed;
        return trace;
      }
      vertices += next.size();
      gen = std::move(next);
      trace.pieces.push_back({side, gen});
      if (check_target(gen.back(), k)) {
        trace.event = TraceEvent::ReachedStableManifold;
        return trace;
      }
      if (vertices > options.max_vertices) break;
    }
    trace.event = TraceEvent::HitBudget;
    return trace;
  }

  // Smooth pieces: dense shooting from a small seed offset.
  const double growth = unstable ? std::abs(mult) : 1.0 / std::abs(mult);
  if (!(mult > 0.0) || !(growth > 1.0)) {
    throw Error(ErrorKind::TraceFailure, "dense shooting needs a positive saddle multiplier");
  }
  const std::size_t n = std::max<std::size_t>(options.points_per_generation, 2);
  Polyline seeds;
  for (std::size_t j = 0; j <= n; ++j) {
    const double sigma = options.delta * std::pow(growth, static_cast<double>(j) / n - 1.0);
    seeds.push_back(O + sigma * dir);
  }
  const auto line = next_line(spec, O.x, dir.x);
  Polyline gen = seeds;
  for (std::size_t k = 0; k <= options.budget; ++k) {
    if (k > 0) {
      for (Vec2& p : gen) p = unstable ? forward(spec, p, Branch::Auto) : backward(spec, p, Branch::Auto);
    }
    const bool cross = line && options.stop_at_discontinuity &&
                       std::any_of(gen.begin(), gen.end(),
                                   [&](Vec2 p) { return (p.x - *line) * (O.x - *line) <= 0.0; });
    if (cross) {
      const ShotCrossing hit = shoot_to_vertical(spec, O, dir, growth, own, !unstable, *line,
                                                 options.delta, k + 1);
      Polyline cut;
      for (Vec2 p : gen) {
        if ((p.x - *line) * (O.x - *line) <= 0.0) break;
        cut.push_back(p);
      }
      cut.push_back(hit.point);
      trace.pieces.push_back({fp.side, cut});
      check_target(hit.point, k);
      trace.event = TraceEvent::Crossed;
      return trace;
    }
    trace.pieces.push_back({fp.side, gen});
    if (!std::isfinite(gen.back().x) || !std::isfinite(gen.back().y)) break;
    if (check_target(gen.back(), k)) {
      trace.event = TraceEvent::ReachedStableManifold;
      return trace;
    }
  }
  trace.event = TraceEvent::HitBudget;
  return trace;
}

}  // namespace gpmap
