#include <algorithm>
#include <cmath>
#include <random>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

BelykhConstruction belykh_construction(double lambda, double a) {
  const MapSpec spec = MapSpec::belykh(lambda, a);
  BelykhConstruction c;
  c.eigen = eigen(a, lambda);
  const double x2 = (c.eigen.s - 2.0 * lambda) / std::sqrt(c.eigen.discriminant);
  c.O1 = {-1.0, 0.0};
  c.O2 = {1.0, 0.0};
  c.M1 = {0.0, c.eigen.alpha1};
  c.M2 = {x2, c.eigen.alpha1 * (x2 + 1.0)};
  c.M3 = {0.0, -c.eigen.alpha2};
  c.fM1 = step(spec, State::at(c.M1.x, c.M1.y), Branch::Left).point();
  c.M1bar = -c.M1;
  c.M2bar = -c.M2;
  c.M3bar = -c.M3;
  c.fM1bar = step(spec, State::at(c.M1bar.x, c.M1bar.y), Branch::Right).point();
  c.P = {c.O1, c.M2bar, c.O2, c.M2};
  return c;
}

TrapRegion belykh_parallelogram(double lambda, double a) {
  const BelykhConstruction c = belykh_construction(lambda, a);
  TrapRegion region({{"W2s(O1)", {c.O1, c.M2bar}},
                     {"W1u(O2)", {c.M2bar, c.O2}},
                     {"W2s(O2)", {c.O2, c.M2}},
                     {"W1u(O1)", {c.M2, c.O1}}});
  region.witnesses() = {{"O1", c.O1},       {"O2", c.O2},       {"M1", c.M1},
                        {"M2", c.M2},       {"M3", c.M3},       {"fM1", c.fM1},
                        {"M1bar", c.M1bar}, {"M2bar", c.M2bar}, {"fM1bar", c.fM1bar}};
  return region;
}

CertReport belykh_certify(double lambda, double a, const InvarianceSampling& sampling) {
  constexpr double kBand = 1e-12;
  const BelykhConstruction c = belykh_construction(lambda, a);
  CertReport r;
  r.theorem = "belykh";
  r.verdict = Verdict::Holds;
  r.tolerances["slack_band"] = kBand;
  r.tolerances["membership"] = sampling.tol;

  const double slack = (1.0 - lambda) - a;
  const double sq = std::sqrt(c.eigen.discriminant);
  r.witnesses["slack"] = slack;
  r.witnesses["alpha1"] = c.eigen.alpha1;
  r.witnesses["alpha2"] = c.eigen.alpha2;
  r.witnesses["x2"] = c.M2.x;
  r.witnesses["fM1.x"] = c.fM1.x;
  r.witnesses["fM1.y"] = c.fM1.y;
  r.witnesses["overshoot"] = c.fM1.x - c.M2.x;
  r.witnesses["fM1_to_M2"] = distance(c.fM1, c.M2);
  r.witnesses["inequality40"] = (2.0 - c.eigen.s) * (c.eigen.s + sq);

  if (slack < -kBand) {
    r.fail("slack", slack);
    return r;
  }
  r.zero_margin = std::abs(slack) <= kBand;
  const InvarianceResult inv = check_invariance(MapSpec::belykh(lambda, a),
                                                belykh_parallelogram(lambda, a), sampling);
  r.sampling["boundary"] = static_cast<double>(sampling.boundary);
  r.sampling["interior"] = static_cast<double>(sampling.interior);
  r.sampling["steps"] = static_cast<double>(sampling.steps);
  r.witnesses["worst_boundary_excess"] = inv.worst_boundary_excess;
  r.witnesses["interior_escapes"] = static_cast<double>(inv.interior_escapes);
  if (inv.boundary_escapes > 0) r.fail("boundary_escapes", static_cast<double>(inv.boundary_escapes));
  if (inv.interior_escapes > 0) r.fail("interior_escapes", static_cast<double>(inv.interior_escapes));
  return r;
}

CertReport annulus_absorbing(double lambda, double a, const AnnulusSampling& sampling) {
  const MapSpec spec = MapSpec::belykh_periodic(lambda, a);
  const double bound = a / (1.0 - lambda);
  const double y_max = sampling.y_max > 0.0 ? sampling.y_max : 10.0 * bound;
  CertReport r;
  r.theorem = "annulus";
  r.verdict = Verdict::Holds;
  r.witnesses["bound"] = bound;
  r.sampling["starts"] = static_cast<double>(sampling.starts);
  r.sampling["steps"] = static_cast<double>(sampling.steps);
  r.sampling["y_max"] = y_max;
  r.tolerances["one_step_relative"] = 1e-12;

  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-y_max, y_max);
  std::size_t not_absorbed = 0, exits = 0, no_decrease = 0, one_step = 0, longest_entry = 0;
  for (std::size_t i = 0; i < sampling.starts; ++i) {
    State s = State::at(ux(rng), uy(rng));
    std::size_t k = 0;
    // Outside the annulus |y| must shrink every step.
    while (std::abs(s.y) >= bound && k < sampling.steps) {
      const State n = step(spec, s);
      if (!(std::abs(n.y) < std::abs(s.y))) ++no_decrease;
      if (std::abs(n.y) > lambda * (std::abs(s.y) + a) * (1.0 + 1e-12)) ++one_step;
      s = n;
      ++k;
    }
    if (std::abs(s.y) >= bound) {
      ++not_absorbed;
      continue;
    }
    longest_entry = std::max(longest_entry, k);
    for (std::size_t j = 0; j < sampling.steps; ++j) {
      const State n = step(spec, s);
      if (std::abs(n.y) > lambda * (std::abs(s.y) + a) * (1.0 + 1e-12)) ++one_step;
      s = n;
      if (std::abs(s.y) >= bound) {
        ++exits;
        break;
      }
    }
  }
  r.witnesses["longest_entry"] = static_cast<double>(longest_entry);
  r.witnesses["absorbed"] = static_cast<double>(sampling.starts - not_absorbed);
  if (not_absorbed > 0) r.fail("not_absorbed", static_cast<double>(not_absorbed));
  if (exits > 0) r.fail("exits", static_cast<double>(exits));
  if (no_decrease > 0) r.fail("no_decrease", static_cast<double>(no_decrease));
  if (one_step > 0) r.fail("one_step_violations", static_cast<double>(one_step));
  return r;
}

CylinderGates cylinder_gates(double lambda, double a) {
  if (!(a > 1.0 - lambda)) {
    throw Error(ErrorKind::EmptyGate, "gates are empty for a <= 1 - lambda");
  }
  const MapSpec spec = MapSpec::belykh(lambda, a);
  const BelykhConstruction c = belykh_construction(lambda, a);

  CylinderGates g;
  g.delta2 = {"delta2", {c.M1, c.M2, c.M3}};

  // f restricted to x <= 0 is affine, so the image of the left half of P is convex.
  const Polyline left = clip_left(c.P, {0.0, -1.0}, {0.0, 1.0});
  Polyline image;
  for (const Vec2 p : left) image.push_back(step(spec, State::at(p.x, p.y), Branch::Left).point());
  const auto pieces = convex_difference(image, c.P);
  double best = -1.0;
  for (const auto& piece : pieces) {
    Vec2 centroid{};
    for (const Vec2 p : piece) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(piece.size())) * centroid;
    const double area = std::abs(signed_area(piece));
    if (centroid.y > 0.0 && area > best) {
      best = area;
      g.delta1 = {"delta1", piece};
    }
  }
  if (best <= 0.0) throw Error(ErrorKind::EmptyGate, "f(P) does not leave P above the axis");
  return g;
}

}  // namespace gpmap
