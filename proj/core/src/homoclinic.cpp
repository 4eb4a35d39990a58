#include "gpmap/homoclinic.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"
#include "gpmap/separatrix.hpp"

namespace gpmap {

namespace {

struct Bracket {
  double a;
  std::size_t iterations;
};

Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double tol, const char* what) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorKind::NoSignChange, std::string(what) + " has the same sign at a = " +
                                             std::to_string(lo) + " and a = " + std::to_string(hi));
  }
  std::size_t it = 0;
  while (hi - lo > tol && it < 200) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    ++it;
    if (fm == 0.0) return {mid, it};
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return {std::abs(flo) <= std::abs(fhi) ? lo : hi, it};
}

HomoclinicRoot describe(double lambda, double a, std::size_t iterations) {
  HomoclinicRoot r;
  r.a = a;
  r.iterations = iterations;
  r.h_residual = std::abs(lozi_H(lambda, a));
  const LoziConstruction c = lozi_construction(lambda, a);
  r.geometric_gap = c.geometric_gap;

  const MapSpec spec = MapSpec::lozi(lambda, a);
  const FixedPointInfo o1 = fixed_points(spec).front();
  const SeparatrixTrace stable = trace_separatrix(spec, o1, SeparatrixBranch::StablePlus);
  const Vec2 far_end = o1.location.point() - 10.0 * (stable.end() - o1.location.point());
  TraceOptions opt;
  opt.stop_at_discontinuity = false;
  opt.budget = 2;
  opt.target = std::make_pair(far_end, stable.end());
  const SeparatrixTrace unstable = trace_separatrix(spec, o1, SeparatrixBranch::UnstablePlus, opt);
  r.m3 = unstable.end();
  r.m3_distance = segment_distance(far_end, stable.end(), r.m3);
  return r;
}

}  // namespace

HomoclinicRoot homoclinic_root(double lambda, double a_lo, double a_hi, double tol) {
  const Bracket b = bisect([&](double a) { return lozi_H(lambda, a); }, a_lo, a_hi, tol, "H");
  return describe(lambda, b.a, b.iterations);
}

HomoclinicRoot homoclinic_root_geometric(double lambda, double a_lo, double a_hi, double tol) {
  const Bracket b = bisect([&](double a) { return lozi_construction(lambda, a).geometric_gap; }, a_lo, a_hi,
                           tol, "M3 height");
  return describe(lambda, b.a, b.iterations);
}

}  // namespace gpmap
