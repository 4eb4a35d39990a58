#include "gpmap/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FixedPointInfo describe(const MapSpec& spec, double x, Side side) {
  FixedPointInfo fp;
  fp.location = State::at(x, 0.0);
  fp.side = side;
  fp.d = eval_g(spec, x, to_branch(side)).derivative;
  fp.unstable_slope = fp.stable_slope = kNaN;
  try {
    fp.eigen = eigen(fp.d, spec.lambda);
  } catch (const Error&) {
    return fp;
  }
  fp.cls = classify(fp.d, spec.lambda);
  const bool first_expands = std::abs(fp.eigen.mu1) >= std::abs(fp.eigen.mu2);
  fp.unstable_slope = first_expands ? fp.eigen.alpha1 : fp.eigen.alpha2;
  fp.stable_slope = first_expands ? fp.eigen.alpha2 : fp.eigen.alpha1;
  fp.unstable_multiplier = first_expands ? fp.eigen.mu1 : fp.eigen.mu2;
  fp.stable_multiplier = first_expands ? fp.eigen.mu2 : fp.eigen.mu1;
  return fp;
}

// Representative of x in [-pi, pi).
double angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = x - two_pi * std::floor((x + std::numbers::pi) / two_pi);
  if (w >= std::numbers::pi) w -= two_pi;
  return w;
}

}  // namespace

std::vector<FixedPointInfo> fixed_points(const MapSpec& spec) {
  std::vector<FixedPointInfo> out;
  const double lam = spec.lambda;
  const double a = spec.a;
  switch (spec.variant) {
    case Variant::Lozi:
      if (a > 1.0 + lam) out.push_back(describe(spec, 1.0 / (1.0 + lam - a), Side::Left));
      out.push_back(describe(spec, 1.0 / (1.0 + lam + a), Side::Right));
      break;
    case Variant::Hybrid: {
      const double q = a * (1.0 - spec.l);
      const double b_left = 1.0 + lam - a * spec.l;
      const double b_right = 1.0 + lam + a * spec.l;
      if (q > 0.0) {
        const double sq = std::sqrt(b_left * b_left + 4.0 * q);
        out.push_back(describe(spec, -2.0 / (sq - b_left), Side::Left));
      } else if (b_left < 0.0) {
        out.push_back(describe(spec, 1.0 / b_left, Side::Left));
      }
      const double sq = std::sqrt(b_right * b_right + 4.0 * q);
      out.push_back(describe(spec, 2.0 / (b_right + sq), Side::Right));
      break;
    }
    case Variant::BelykhTwoBranch:
      out.push_back(describe(spec, -1.0, Side::Left));
      out.push_back(describe(spec, 1.0, Side::Right));
      break;
    case Variant::BelykhPeriodic: {
      const double x = wrap(spec, -1.0);
      out.push_back(describe(spec, x, eval_g(spec, x).side));
      break;
    }
    case Variant::Sine:
    case Variant::Standard:
      if (spec.k != 0.0) {
        out.push_back(describe(spec, -std::numbers::pi, Side::Smooth));
        out.push_back(describe(spec, 0.0, Side::Smooth));
      }
      break;
    case Variant::Zaslavsky: {
      if (a == 0.0) break;
      const double r = -spec.omega * (1.0 - lam) / a;
      if (std::abs(r) > 1.0) break;
      const double x0 = std::asin(r);
      out.push_back(describe(spec, angle(x0), Side::Smooth));
      if (std::abs(r) < 1.0) out.push_back(describe(spec, angle(std::numbers::pi - x0), Side::Smooth));
      break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FixedPointInfo& p, const FixedPointInfo& q) { return p.location.x < q.location.x; });
  return out;
}

CertReport check_theorem1(const MapSpec& spec, const RegionSampling& plan) {
  CertReport r;
  r.theorem = "hyperbolicity";
  r.verdict = Verdict::Holds;
  r.tolerances["epsilon"] = plan.epsilon;
  r.sampling["points"] = static_cast<double>(plan.n);
  r.sampling["x_lo"] = plan.x_lo;
  r.sampling["x_hi"] = plan.x_hi;

  const double lam = spec.lambda;
  const double flip = -2.0 * (1.0 + lam);

  struct Sample {
    double x, d;
    long piece;
  };
  std::vector<Sample> samples;
  auto piece_of = [&](double x, Side side) -> long {
    if (spec.variant == Variant::BelykhPeriodic) {
      const double line = *nearest_discontinuity(spec, x);
      return static_cast<long>(std::lround(line / spec.period)) * 2 + (side == Side::Right ? 1 : 0);
    }
    return side == Side::Left ? 0 : side == Side::Right ? 1 : 2;
  };
  auto add = [&](double x, Branch b) {
    const GValue g = eval_g(spec, x, b);
    samples.push_back({x, g.derivative, piece_of(x, g.side)});
  };

  const std::size_t n = std::max<std::size_t>(plan.n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    add(plan.x_lo + (plan.x_hi - plan.x_lo) * static_cast<double>(i) / static_cast<double>(n - 1),
        Branch::Auto);
  }
  if (!spec.smooth()) {
    // One-sided limits at every discontinuity line inside the window.
    for (double x = plan.x_lo; x <= plan.x_hi;) {
      const auto line = nearest_discontinuity(spec, x);
      if (!line) break;
      if (*line >= plan.x_lo && *line <= plan.x_hi) {
        add(*line, Branch::Left);
        add(*line, Branch::Right);
      }
      if (spec.variant != Variant::BelykhPeriodic) break;
      x = *line + spec.period;
    }
  }

  std::map<long, std::pair<double, double>> range;
  for (const auto& s : samples) {
    auto [it, fresh] = range.try_emplace(s.piece, s.d, s.d);
    if (!fresh) {
      it->second.first = std::min(it->second.first, s.d);
      it->second.second = std::max(it->second.second, s.d);
    }
  }
  for (const auto& [piece, mm] : range) {
    if (mm.first < 0.0 && mm.second > 0.0) {
      r.verdict = Verdict::Inapplicable;
      r.witnesses["d_min_in_piece"] = mm.first;
      r.witnesses["d_max_in_piece"] = mm.second;
      r.notes.push_back("d changes sign inside one smooth piece of g");
      return r;
    }
  }

  double min_plus = std::numeric_limits<double>::infinity();
  double max_minus = -std::numeric_limits<double>::infinity();
  std::size_t plus = 0, minus = 0, bad = 0;
  double bad_x = kNaN, bad_d = kNaN;
  for (const auto& s : samples) {
    if (s.d >= plan.epsilon) {
      ++plus;
      min_plus = std::min(min_plus, s.d);
    } else if (s.d < flip) {
      ++minus;
      max_minus = std::max(max_minus, s.d);
    } else {
      if (bad == 0) {
        bad_x = s.x;
        bad_d = s.d;
      }
      ++bad;
    }
  }
  r.witnesses["g_plus_samples"] = static_cast<double>(plus);
  r.witnesses["g_minus_samples"] = static_cast<double>(minus);
  if (plus > 0) r.witnesses["min_d_plus"] = min_plus;
  if (minus > 0) r.witnesses["max_d_minus"] = max_minus;
  r.witnesses["flip_threshold"] = flip;
  if (spec.variant == Variant::Lozi) r.witnesses["a_minus_1_minus_lambda"] = spec.a - 1.0 - lam;
  if (lam > 0.0 && lam < 1.0) {
    const ConePair c = cones(lam);
    r.witnesses["cone_u_lo"] = c.unstable.lo;
    r.witnesses["cone_u_hi"] = c.unstable.hi;
    r.witnesses["cone_s_lo"] = c.stable.lo;
    r.witnesses["cone_s_hi"] = c.stable.hi;
  }
  if (bad > 0) {
    r.witnesses["non_hyperbolic_x"] = bad_x;
    r.fail("non_hyperbolic_d", bad_d);
    r.witnesses["non_hyperbolic_samples"] = static_cast<double>(bad);
  }
  return r;
}

Polyline TrapRegion::outline() const {
  Polyline out;
  for (const auto& piece : pieces_) {
    for (const Vec2 p : piece.points) {
      if (!out.empty() && distance(out.back(), p) <= 1e-12) continue;
      out.push_back(p);
    }
  }
  if (out.size() > 1 && distance(out.front(), out.back()) <= 1e-12) out.pop_back();
  return out;
}

bool TrapRegion::inside(Vec2 p, double tol) const { return contains(outline(), p, tol); }

double TrapRegion::closure_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& here = pieces_[i].points;
    const auto& next = pieces_[(i + 1) % pieces_.size()].points;
    if (here.empty() || next.empty()) return std::numeric_limits<double>::infinity();
    gap = std::max(gap, distance(here.back(), next.front()));
  }
  return gap;
}

InvarianceResult check_invariance(const MapSpec& spec, const TrapRegion& region,
                                  const InvarianceSampling& sampling) {
  InvarianceResult res;
  const Polyline poly = region.outline();
  for (std::size_t j = 0; j < sampling.boundary; ++j) {
    const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(sampling.boundary);
    const Vec2 p = point_on_boundary(poly, t);
    const Vec2 img = step(spec, State::at(p.x, p.y)).point();
    if (!contains(poly, img, sampling.tol)) {
      ++res.boundary_escapes;
      res.worst_boundary_excess = std::max(res.worst_boundary_excess, boundary_distance(poly, img));
    }
  }

  const Box box = bounding_box(poly);
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
  for (std::size_t i = 0; i < sampling.interior; ++i) {
    Vec2 p;
    do {
      p = {ux(rng), uy(rng)};
    } while (!contains(poly, p));
    State s = State::at(p.x, p.y);
    for (std::size_t k = 0; k < sampling.steps; ++k) {
      s = step(spec, s);
      if (!contains(poly, s.point(), sampling.tol)) {
        ++res.interior_escapes;
        break;
      }
    }
  }
  return res;
}

}  // namespace gpmap
