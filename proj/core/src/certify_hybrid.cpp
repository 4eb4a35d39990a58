#include <cmath>
#include <limits>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"
#include "gpmap/separatrix.hpp"

namespace gpmap {

HybridConstruction hybrid_construction(double lambda, double a, double l, const HybridOptions& options) {
  [[maybe_unused]] const MapSpec spec = MapSpec::hybrid(lambda, a, l);
  const auto fps = fixed_points(spec);
  if (fps.empty() || fps.front().side != Side::Left) {
    throw Error(ErrorKind::TraceFailure, "no fixed point in x < 0");
  }
  HybridConstruction c;
  c.O1 = fps.front();
  if (c.O1.cls != SaddleClass::PositiveSaddle) {
    throw Error(ErrorKind::TraceFailure, "O1 is not a positive saddle");
  }
  const Vec2 O = c.O1.location.point();
  const double x1 = O.x;
  c.y1_bound = -lambda * x1;

  const ShotCrossing m1 = shoot_to_vertical(spec, O, {1.0, c.O1.unstable_slope}, c.O1.unstable_multiplier,
                                            Branch::Left, false, 0.0, options.delta, options.budget);
  c.M1 = {0.0, m1.point.y};
  for (const Vec2 p : m1.orbit) {
    if (!(p.y > 0.0 && p.y < lambda * (p.x - x1))) ++c.phi1_violations;
  }
  c.M2 = step(spec, State::at(c.M1.x, c.M1.y), Branch::Left).point();
  c.M3 = step(spec, State::at(c.M2.x, c.M2.y), Branch::Right).point();

  c.w2_gap = std::numeric_limits<double>::quiet_NaN();
  const double toward = c.M3.x >= x1 ? 1.0 : -1.0;
  try {
    const ShotCrossing w2 =
        shoot_to_vertical(spec, O, Vec2{toward, toward * c.O1.stable_slope}, 1.0 / c.O1.stable_multiplier,
                          Branch::Left, true, c.M3.x, options.delta, options.budget);
    c.w2_gap = c.M3.y - w2.point.y;
  } catch (const Error&) {
  }
  return c;
}

CertReport hybrid_certify(double lambda, double a, double l, const HybridOptions& options) {
  CertReport r;
  r.theorem = "hybrid";
  r.verdict = Verdict::Holds;
  r.tolerances["delta"] = options.delta;
  r.sampling["budget"] = static_cast<double>(options.budget);

  [[maybe_unused]] const MapSpec spec = MapSpec::hybrid(lambda, a, l);
  const double margin23 = a * l - (1.0 + lambda);
  r.witnesses["condition23_margin"] = margin23;

  if (l == 0.0) {
    r.verdict = Verdict::Inapplicable;
    r.witnesses["henon_local_bound"] = (1.0 + lambda) / (2.0 * a);
    r.notes.push_back("l = 0: hyperbolicity holds only on |x| > (1 + lambda) / (2a)");
  } else if (!(margin23 > 0.0)) {
    r.fail("condition23_margin", margin23);
  }

  HybridConstruction c;
  try {
    c = hybrid_construction(lambda, a, l, options);
  } catch (const Error& e) {
    if (r.verdict == Verdict::Holds) throw;
    r.notes.push_back(std::string("construction unavailable: ") + e.what());
    return r;
  }

  const double x1 = c.O1.location.x;
  r.witnesses["x1"] = x1;
  r.witnesses["y1"] = c.M1.y;
  r.witnesses["y1_bound"] = c.y1_bound;
  r.witnesses["x2"] = c.M2.x;
  r.witnesses["y2"] = c.M2.y;
  r.witnesses["x3"] = c.M3.x;
  r.witnesses["y3"] = c.M3.y;
  r.witnesses["w2_gap"] = c.w2_gap;
  r.witnesses["phi1_violations"] = static_cast<double>(c.phi1_violations);

  // Closed forms for M3 as a cross-check on the stepped value.
  const double u = c.M1.y + 1.0;
  const double q = a * (1.0 - l);
  const double x3f = 1.0 - a * l * u - q * u * u;
  const double y3f = lambda - lambda * (a * l + 1.0) * u - lambda * q * u * u;
  r.witnesses["m3_formula_residual"] = std::hypot(x3f - c.M3.x, y3f - c.M3.y);

  const double margin27 = (1.0 - lambda) * (c.M3.x - x1) + c.M3.y;
  r.witnesses["condition27_margin"] = margin27;
  r.witnesses["x3_sign_check"] = (1.0 - a) - c.M3.x;  // positive when x3 < 1 - a
  r.witnesses["y3_sign_check"] = -lambda * a - c.M3.y;
  if (!(c.M3.x < 1.0 - a && 1.0 - a < 0.0)) r.notes.push_back("x3 < 1 - a < 0 does not hold");

  if (r.verdict == Verdict::Inapplicable) return r;
  if (!(c.M1.y > 0.0 && c.M1.y < c.y1_bound)) r.fail("y1", c.M1.y);
  if (c.phi1_violations > 0) r.fail("phi1_violations", static_cast<double>(c.phi1_violations));
  if (margin27 < 0.0) r.fail("condition27_margin", margin27);
  r.zero_margin = r.holds() && std::abs(margin27) <= 1e-12;
  return r;
}

}  // namespace gpmap
