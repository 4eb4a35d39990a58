#include "gpmap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

// Roots of z^2 - p z + q = 0 as ("+" root, "-" root), each evaluated
// without cancellation: the larger one directly, the other through q.
std::pair<double, double> stable_roots(double p, double q, double sq) {
  if (p >= 0.0) {
    const double big = 0.5 * (p + sq);
    return {big, big != 0.0 ? q / big : 0.0};
  }
  const double big = 0.5 * (p - sq);
  return {big != 0.0 ? q / big : 0.0, big};
}

double ratio(const ConeSpec& cone, Vec2 v) {
  const double num = cone.kind == ConeKind::Unstable ? v.y : v.x;
  const double den = cone.kind == ConeKind::Unstable ? v.x : v.y;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

EigenPair eigen(double d, double lambda) {
  EigenPair e;
  e.s = 1.0 + d + lambda;
  e.discriminant = std::fma(e.s, e.s, -4.0 * lambda);
  if (e.discriminant < 0.0) {
    throw Error(ErrorKind::ComplexEigenvalues,
                "discriminant " + std::to_string(e.discriminant) + " < 0 at d = " + std::to_string(d));
  }
  const double sq = std::sqrt(e.discriminant);
  std::tie(e.mu1, e.mu2) = stable_roots(e.s, lambda, sq);
  // alpha solves alpha^2 + (1 + d - lambda) alpha - lambda d = 0.
  std::tie(e.alpha1, e.alpha2) = stable_roots(-(1.0 + d - lambda), -lambda * d, sq);
  return e;
}

std::string_view to_string(SaddleClass c) noexcept {
  switch (c) {
    case SaddleClass::PositiveSaddle: return "positive-saddle";
    case SaddleClass::FlipSaddle: return "flip-saddle";
    case SaddleClass::NonHyperbolic: return "non-hyperbolic";
  }
  return "non-hyperbolic";
}

SaddleClass classify(double d, double lambda, double epsilon) {
  if (d >= epsilon) return SaddleClass::PositiveSaddle;
  if (d < -2.0 * (1.0 + lambda)) return SaddleClass::FlipSaddle;
  return SaddleClass::NonHyperbolic;
}

ConePair cones(double lambda, UnstableBound bound) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "cones need lambda in (0, 1)");
  }
  ConePair c;
  const double top = bound == UnstableBound::EdgeVectors ? 2.0 * lambda : lambda;
  c.unstable = {ConeKind::Unstable, 0.0, top, {1.0, 0.0}, {1.0, top}};
  c.stable = {ConeKind::Stable, -1.0 / (1.0 - lambda), 1.0 / (1.0 + lambda),
              {-1.0, 1.0 - lambda}, {1.0, 1.0 + lambda}};
  return c;
}

double cone_margin(const ConeSpec& cone, Vec2 v) {
  const double r = ratio(cone, v);
  if (!std::isfinite(r)) return -std::numeric_limits<double>::infinity();
  return std::min(r - cone.lo, cone.hi - r);
}

bool cone_contains(const ConeSpec& cone, Vec2 v) { return cone_margin(cone, v) > 0.0; }

CertReport verify_cone_invariance(double lambda, std::span<const double> d_samples, double epsilon,
                                  UnstableBound bound) {
  CertReport r;
  r.theorem = "cone-invariance";
  r.verdict = Verdict::Holds;
  r.tolerances["epsilon"] = epsilon;
  r.sampling["d_samples"] = static_cast<double>(d_samples.size());

  const ConePair c = cones(lambda, bound);
  const Vec2 unstable_edges[2] = {c.unstable.edge_lo, c.unstable.edge_hi};
  const Vec2 stable_edges[2] = {c.stable.edge_lo, c.stable.edge_hi};

  double min_u_margin = std::numeric_limits<double>::infinity();
  double min_s_margin = std::numeric_limits<double>::infinity();
  double min_growth = std::numeric_limits<double>::infinity();
  double min_back_growth = std::numeric_limits<double>::infinity();
  std::size_t checked = 0, skipped = 0, failures = 0;
  double first_bad_d = std::numeric_limits<double>::quiet_NaN();

  for (const double d : d_samples) {
    if (classify(d, lambda, epsilon) == SaddleClass::NonHyperbolic) {
      ++skipped;
      continue;
    }
    ++checked;
    const Mat2 A{1.0 + d, 1.0, lambda * d, lambda};
    const Mat2 Ainv = A.inverse();
    bool ok = true;
    for (const Vec2 e : unstable_edges) {
      const Vec2 w = A * e;
      const double m = cone_margin(c.unstable, w);
      const double g = norm(w) / norm(e);
      min_u_margin = std::min(min_u_margin, m);
      min_growth = std::min(min_growth, g);
      ok = ok && m > 0.0 && g > 1.0;
    }
    for (const Vec2 e : stable_edges) {
      const Vec2 w = Ainv * e;
      const double m = cone_margin(c.stable, w);
      const double g = norm(w) / norm(e);
      min_s_margin = std::min(min_s_margin, m);
      min_back_growth = std::min(min_back_growth, g);
      ok = ok && m > 0.0 && g > 1.0;
    }
    if (!ok) {
      if (failures == 0) first_bad_d = d;
      ++failures;
    }
  }

  r.witnesses["checked"] = static_cast<double>(checked);
  r.witnesses["non_hyperbolic"] = static_cast<double>(skipped);
  r.witnesses["failures"] = static_cast<double>(failures);
  r.witnesses["min_unstable_margin"] = min_u_margin;
  r.witnesses["min_stable_margin"] = min_s_margin;
  r.witnesses["min_expansion"] = min_growth;
  r.witnesses["min_backward_expansion"] = min_back_growth;
  r.witnesses["cone_u_hi"] = c.unstable.hi;
  r.witnesses["cone_s_lo"] = c.stable.lo;
  r.witnesses["cone_s_hi"] = c.stable.hi;

  if (failures > 0) {
    r.fail("first_failing_d", first_bad_d);
  } else if (checked == 0 || skipped > 0) {
    r.verdict = Verdict::Inapplicable;
    r.notes.push_back("some d samples are not saddle-classified");
  }
  return r;
}

CertReport verify_cone_invariance(const MapSpec& spec, std::span<const double> d_samples,
                                  double epsilon, UnstableBound bound) {
  std::vector<double> ds(d_samples.begin(), d_samples.end());
  if (ds.empty()) {
    if (spec.piecewise_linear()) {
      const double line = nearest_discontinuity(spec, 0.0).value_or(0.0);
      ds.push_back(eval_g(spec, line, Branch::Left).derivative);
      ds.push_back(eval_g(spec, line, Branch::Right).derivative);
    } else {
      constexpr int n = 2001;
      for (int i = 0; i < n; ++i) {
        const double x = -10.0 + 20.0 * i / (n - 1);
        ds.push_back(eval_g(spec, x).derivative);
      }
    }
  }
  CertReport r = verify_cone_invariance(spec.lambda, ds, epsilon, bound);
  r.notes.push_back(std::string("variant ") + std::string(to_string(spec.variant)));
  return r;
}

AffineMap2 AffineMap2::inverse() const {
  const Mat2 inv = linear.inverse();
  return {inv, -(inv * offset)};
}

Vec2 BelykhNormalForm::step(Vec2 u) const {
  if (switching(u) < 0.0) return {mu1 * (u.x + 1.0) - 1.0, mu2 * (u.y + 1.0) - 1.0};
  return {mu1 * (u.x - 1.0) + 1.0, mu2 * (u.y - 1.0) + 1.0};
}

BelykhNormalForm belykh_normal_form(double lambda, double a, std::size_t samples,
                                    std::uint64_t seed) {
  const MapSpec spec = MapSpec::belykh(lambda, a);
  const EigenPair e = eigen(a, lambda);
  const Mat2 V{1.0, 1.0, e.alpha1, e.alpha2};
  const double det = V.det();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    throw Error(ErrorKind::DegenerateConjugacy, "eigenvectors are parallel");
  }
  const Mat2 Vinv = V.inverse();
  // Eigen-coordinates of the offset O2 - O1 = (2, 0).
  const Vec2 delta = Vinv * Vec2{2.0, 0.0};
  if (!(delta.x != 0.0 && delta.y != 0.0) || !std::isfinite(delta.x) || !std::isfinite(delta.y)) {
    throw Error(ErrorKind::DegenerateConjugacy, "a scale factor of the eigenbasis vanishes");
  }
  const double c1 = 2.0 / delta.x;
  const double c2 = 2.0 / delta.y;

  BelykhNormalForm nf;
  nf.mu1 = e.mu1;
  nf.mu2 = e.mu2;
  nf.k = c1 / c2;
  const Mat2 C{c1, 0.0, 0.0, c2};
  nf.T.linear = C * Vinv;
  nf.T.offset = Vec2{-1.0, -1.0} - nf.T.linear * Vec2{-1.0, 0.0};
  nf.samples_per_branch = samples;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> left(-3.0, 0.0), right(0.0, 3.0), ys(-3.0, 3.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < 2 * samples; ++i) {
    const double x = i < samples ? left(rng) : right(rng);
    const State p = State::at(x, ys(rng));
    const Vec2 lhs = nf.T(step(spec, p).point());
    const Vec2 rhs = nf.step(nf.T(p.point()));
    worst = std::max(worst, distance(lhs, rhs));
  }
  nf.residual = worst;
  return nf;
}

}  // namespace gpmap
