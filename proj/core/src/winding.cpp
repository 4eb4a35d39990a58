#include <cmath>

#include "gpmap/dynamics.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

std::string_view to_string(WindingLabel l) noexcept {
  switch (l) {
    case WindingLabel::Oscillating: return "oscillating";
    case WindingLabel::Rotating: return "rotating";
    case WindingLabel::RotatingOscillating: return "rotating-oscillating";
  }
  return "rotating-oscillating";
}

WindingStats winding_classify(const MapSpec& spec, const OrbitRecord& orbit, const RegionTest& in_p,
                              const WindingOptions& options) {
  const std::size_t n = orbit.states.size();
  const std::size_t window = options.window == 0 ? 1 : options.window;
  if (n < 2 || n < options.min_windows * window) {
    throw Error(ErrorKind::Inconclusive, "orbit too short for window statistics");
  }
  const double p = spec.period;
  WindingStats w;

  std::size_t visits = 0;
  for (const State& s : orbit.states) {
    const double xc = s.lift - p * std::floor((s.lift + 0.5 * p) / p);
    if (in_p({xc, s.y})) ++visits;
  }
  w.p_fraction = static_cast<double>(visits) / static_cast<double>(n);

  if (!spec.on_cylinder()) {
    w.label = w.p_fraction == 1.0 ? WindingLabel::Oscillating : WindingLabel::RotatingOscillating;
    return w;
  }

  const double advance = orbit.states.back().lift - orbit.states.front().lift;
  w.turns = advance / p;
  w.net_winding = static_cast<long long>(std::trunc(w.turns));
  w.winding_per_1000 = 1000.0 * w.turns / static_cast<double>(n - 1);

  bool monotone = true;
  int sign = 0;
  for (std::size_t i = 0; i + window < n; i += window) {
    const double d = orbit.states[i + window].lift - orbit.states[i].lift;
    const int sg = d >= p ? 1 : d <= -p ? -1 : 0;
    if (sg == 0 || (sign != 0 && sg != sign)) {
      monotone = false;
      break;
    }
    sign = sg;
  }

  if (visits == n && std::abs(w.turns) <= options.bounded_turns) {
    w.label = WindingLabel::Oscillating;
  } else if (visits == 0 && monotone) {
    w.label = WindingLabel::Rotating;
  } else {
    w.label = WindingLabel::RotatingOscillating;
  }
  return w;
}

}  // namespace gpmap
