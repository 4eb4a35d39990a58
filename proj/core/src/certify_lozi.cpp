#include <cmath>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

double lozi_H(double lambda, double a) {
  const double disc = a * a - 4.0 * lambda;
  if (disc < 0.0) {
    throw Error(ErrorKind::ComplexRoot, "a^2 < 4 lambda: H is undefined");
  }
  const double r = std::sqrt(disc);
  return a * (2.0 * lambda - a + 2.0) * r + a * (2.0 * lambda * lambda - 6.0 * lambda - a * a + 2.0 * a) +
         4.0 * lambda * lambda;
}

LoziConstruction lozi_construction(double lambda, double a) {
  if (!(a > 1.0 + lambda)) {
    throw Error(ErrorKind::InvalidArgument, "the Lozi construction needs a > 1 + lambda");
  }
  const MapSpec spec = MapSpec::lozi(lambda, a);
  LoziConstruction c;
  const double dm = a - 1.0 - lambda;
  c.left = eigen(dm, lambda);
  c.x1 = 1.0 / (1.0 + lambda - a);
  c.O1 = {c.x1, 0.0};
  c.O2 = {1.0 / (1.0 + lambda + a), 0.0};
  c.M1 = {0.0, c.left.alpha1 / dm};
  c.M2 = step(spec, State::at(c.M1.x, c.M1.y), Branch::Left).point();
  c.M3 = step(spec, State::at(c.M2.x, c.M2.y), Branch::Right).point();
  c.Q = {c.M3.x, c.left.alpha2 * (c.M3.x - c.x1)};
  c.geometric_gap = c.M3.y - c.Q.y;
  return c;
}

TrapCertificate lozi_trap(double lambda, double a, const InvarianceSampling& sampling) {
  constexpr double kBand = 1e-12;
  TrapCertificate out;
  CertReport& r = out.report;
  r.theorem = "lozi";
  r.verdict = Verdict::Holds;
  r.tolerances["H_band"] = kBand;
  r.tolerances["membership"] = sampling.tol;
  r.witnesses["hyperbolicity_margin"] = a - 1.0 - lambda;
  if (!(a > 1.0 + lambda)) {
    r.fail("hyperbolicity_margin", a - 1.0 - lambda);
    if (a * a >= 4.0 * lambda) r.witnesses["H"] = lozi_H(lambda, a);
    return out;
  }

  const double H = lozi_H(lambda, a);
  const LoziConstruction c = lozi_construction(lambda, a);
  r.witnesses["H"] = H;
  r.witnesses["x1"] = c.x1;
  r.witnesses["M1.y"] = c.M1.y;
  r.witnesses["M2.x"] = c.M2.x;
  r.witnesses["M2.y"] = c.M2.y;
  r.witnesses["x3"] = c.M3.x;
  r.witnesses["y3"] = c.M3.y;
  r.witnesses["geometric_gap"] = c.geometric_gap;
  if (!(c.M3.x < 0.0)) r.notes.push_back("M3 is not in x < 0");

  TrapRegion region({{"W1", {c.O1, c.M1}},
                     {"M1M2", {c.M1, c.M2}},
                     {"M2M3", {c.M2, c.M3}},
                     {"I", {c.M3, c.Q}},
                     {"W2", {c.Q, c.O1}}});
  region.witnesses() = {{"O1", c.O1}, {"O2", c.O2}, {"M1", c.M1}, {"M2", c.M2}, {"M3", c.M3}, {"Q", c.Q}};

  if (H < -kBand) {
    r.fail("H", H);
    if (c.geometric_gap >= 0.0) {
      r.notes.push_back("H < 0 while M3 still lies above the stable line of O1");
    }
  } else {
    r.zero_margin = std::abs(H) <= kBand;
    const InvarianceResult inv = check_invariance(MapSpec::lozi(lambda, a), region, sampling);
    r.sampling["boundary"] = static_cast<double>(sampling.boundary);
    r.sampling["interior"] = static_cast<double>(sampling.interior);
    r.sampling["steps"] = static_cast<double>(sampling.steps);
    r.witnesses["interior_escapes"] = static_cast<double>(inv.interior_escapes);
    r.witnesses["worst_boundary_excess"] = inv.worst_boundary_excess;
    if (inv.boundary_escapes > 0) r.fail("boundary_escapes", static_cast<double>(inv.boundary_escapes));
    if (inv.interior_escapes > 0) r.fail("interior_escapes", static_cast<double>(inv.interior_escapes));
  }
  out.region = std::move(region);
  return out;
}

}  // namespace gpmap
