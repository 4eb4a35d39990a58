#include <cmath>
#include <string>

#include "gpmap/dynamics.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

namespace {

void guard(const State& s, double overflow, std::size_t k) {
  if (!(std::abs(s.y) <= overflow) || !std::isfinite(s.x)) {
    throw Error(ErrorKind::Overflow, "orbit diverged at step " + std::to_string(k));
  }
}

}  // namespace

OrbitRecord iterate_orbit(const MapSpec& spec, State s0, std::size_t n, const OrbitOptions& options) {
  OrbitRecord rec;
  rec.transient = options.transient;
  rec.hit_tol = options.hit_tol;
  State s = s0;
  if (!spec.on_cylinder()) s.lift = s.x;
  guard(s, options.overflow, 0);
  for (std::size_t k = 0; k < options.transient; ++k) {
    s = step(spec, s);
    guard(s, options.overflow, k + 1);
  }
  rec.states.reserve(n);
  rec.branches.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GValue g = eval_g(spec, s.x);
    rec.states.push_back(s);
    rec.branches.push_back(g.side);
    if (discontinuity_distance(spec, s.x) < options.hit_tol) rec.discontinuity_hits.push_back(i);
    if (i + 1 < n) {
      s = step(spec, s);
      guard(s, options.overflow, options.transient + i + 1);
    }
  }
  return rec;
}

}  // namespace gpmap
