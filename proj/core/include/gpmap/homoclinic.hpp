#ifndef GPMAP_HOMOCLINIC_HPP
#define GPMAP_HOMOCLINIC_HPP

#include <cstddef>

#include "gpmap/geometry.hpp"

namespace gpmap {

struct HomoclinicRoot {
  double a = 0.0;
  double h_residual = 0.0;   // |H(lambda, a)| at the returned root
  /// Distance from M3 (end of the traced continuation of the unstable
  /// separatrix) to the stable segment of O1 in x < 0, at the root.
  double m3_distance = 0.0;
  double geometric_gap = 0.0;  // signed height of M3 above the stable line
  Vec2 m3;
  std::size_t iterations = 0;
};

/// Bisection root of H(lambda, .) on [a_lo, a_hi] to `tol` in a. Throws
/// NoSignChange when H has the same sign at both ends.
HomoclinicRoot homoclinic_root(double lambda, double a_lo, double a_hi, double tol = 1e-10);

/// Bisection root of the signed height of the traced M3 above the stable
/// segment of O1, i.e. the parameter where the continuation lands.
HomoclinicRoot homoclinic_root_geometric(double lambda, double a_lo, double a_hi, double tol = 1e-10);

}  // namespace gpmap

#endif
