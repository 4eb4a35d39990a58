#ifndef GPMAP_SPECTRAL_HPP
#define GPMAP_SPECTRAL_HPP

#include <cstdint>
#include <span>
#include <string_view>

#include "gpmap/geometry.hpp"
#include "gpmap/map.hpp"
#include "gpmap/report.hpp"

namespace gpmap {

/// Eigenstructure of A(d) = ((1+d, 1), (lambda d, lambda)).
///
/// Roots are kept in the order of the closed form: mu1 and alpha1 take the
/// "+ sqrt" branch. For a flip saddle that puts the smaller |mu| first.
struct EigenPair {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double alpha1 = 0.0;  // eigenvector (1, alpha1) for mu1
  double alpha2 = 0.0;  // eigenvector (1, alpha2) for mu2
  double discriminant = 0.0;
  double s = 0.0;  // trace 1 + d + lambda
};

/// Throws ComplexEigenvalues when (1+d+lambda)^2 < 4 lambda.
EigenPair eigen(double d, double lambda);

enum class SaddleClass { PositiveSaddle, FlipSaddle, NonHyperbolic };

std::string_view to_string(SaddleClass c) noexcept;

SaddleClass classify(double d, double lambda, double epsilon = 1e-6);

enum class ConeKind { Unstable, Stable };

/// Upper slope bound for the unstable cone: the edge vector (1, 2 lambda)
/// or the narrower printed interval (0, lambda).
enum class UnstableBound { EdgeVectors, Printed };

/// Open cone of directions. For Unstable the ratio is u2/u1, for Stable it
/// is u1/u2; membership requires lo < ratio < hi.
struct ConeSpec {
  ConeKind kind = ConeKind::Unstable;
  double lo = 0.0;
  double hi = 0.0;
  Vec2 edge_lo;
  Vec2 edge_hi;
};

struct ConePair {
  ConeSpec unstable;
  ConeSpec stable;
};

ConePair cones(double lambda, UnstableBound bound = UnstableBound::EdgeVectors);

/// Strict interior membership; v and -v agree. The zero vector is never inside.
bool cone_contains(const ConeSpec& cone, Vec2 v);

/// Signed distance of the direction ratio from the nearer cone edge
/// (positive inside). Infinite ratios give -infinity.
double cone_margin(const ConeSpec& cone, Vec2 v);

/// Edge-vector test of DF K^u in K^u (with growth) and DF^-1 K^s in K^s
/// for each d. Non-hyperbolic samples are counted and make the verdict
/// Inapplicable unless some hyperbolic sample fails outright.
CertReport verify_cone_invariance(double lambda, std::span<const double> d_samples,
                                  double epsilon = 1e-6,
                                  UnstableBound bound = UnstableBound::EdgeVectors);

/// Same check with d values taken from the pieces of g: the two one-sided
/// values at each discontinuity for piecewise-linear variants, otherwise
/// the supplied samples.
CertReport verify_cone_invariance(const MapSpec& spec, std::span<const double> d_samples,
                                  double epsilon = 1e-6,
                                  UnstableBound bound = UnstableBound::EdgeVectors);

struct AffineMap2 {
  Mat2 linear;
  Vec2 offset;

  Vec2 operator()(Vec2 p) const { return linear * p + offset; }
  AffineMap2 inverse() const;
};

/// Two-branch Belykh map written in scaled eigen-coordinates u = T(x, y):
///
///   v <  0:  u_i' = mu_i (u_i + 1) - 1
///   v >= 0:  u_i' = mu_i (u_i - 1) + 1
///
/// with v = u1 + k u2 a positive multiple of x, and O1, O2 sent to (-1,-1),
/// (1,1).
struct BelykhNormalForm {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double k = 0.0;
  AffineMap2 T;
  double residual = 0.0;        // max |T f(p) - F(T p)| over the samples
  std::size_t samples_per_branch = 0;

  double switching(Vec2 u) const { return u.x + k * u.y; }
  Vec2 step(Vec2 u) const;
};

/// Builds the conjugacy and measures its residual on random points of the
/// box |x|, |y| <= 3, `samples` per branch.
BelykhNormalForm belykh_normal_form(double lambda, double a, std::size_t samples = 1000,
                                    std::uint64_t seed = 1);

}  // namespace gpmap

#endif
