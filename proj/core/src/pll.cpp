#include "gpmap/pll.hpp"

#include <cmath>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

struct Deriv {
  double dx, du;
};

Deriv rhs(const PllParams& p, double x, double u, double centre) {
  const double g = p.a * (x - centre);
  return {u + p.omega1 * g, -p.lambda0 * u + p.omega2 * g};
}

PllState rk4(const PllParams& p, PllState s, double h, double centre) {
  const Deriv k1 = rhs(p, s.x, s.u, centre);
  const Deriv k2 = rhs(p, s.x + 0.5 * h * k1.dx, s.u + 0.5 * h * k1.du, centre);
  const Deriv k3 = rhs(p, s.x + 0.5 * h * k2.dx, s.u + 0.5 * h * k2.du, centre);
  const Deriv k4 = rhs(p, s.x + h * k3.dx, s.u + h * k3.du, centre);
  return {s.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.u + h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du)};
}

}  // namespace

std::string_view to_string(PllMode m) noexcept { return m == PllMode::Flow ? "flow" : "sliding"; }

double pll_sawtooth(double a, double x) {
  const double m = std::floor(x / 2.0);
  return a * (x - 2.0 * m - 1.0);
}

double pll_lyapunov_V(double omega2, double a, PllState s) {
  const double xm = s.x - 2.0 * std::floor(s.x / 2.0);
  const double G = a * (0.5 * xm * xm - xm);
  return 0.5 * s.u * s.u - omega2 * G;
}

std::vector<PllSample> pll_integrate(const PllParams& p, PllState s, double T, const PllOptions& options) {
  if (!(options.h > 0.0)) throw Error(ErrorKind::InvalidArgument, "h_step must be positive");
  if (!(T >= 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be non-negative");
  if (!(p.omega1 > 0.0 && p.omega2 > 0.0 && p.a > 0.0 && p.lambda0 >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "PLL gains must be positive");
  }
  const double slide_rate = p.lambda0 + p.omega2 / p.omega1;
  const double edge_speed = p.omega1 * p.a;

  PllMode mode = PllMode::Flow;
  double lo_line = 2.0 * std::floor(s.x / 2.0);  // current piece is (lo_line, lo_line + 2)

  // On a line: continue into the piece the flow points at, or slide.
  auto settle = [&](double line) {
    s.x = line;
    if (s.u > edge_speed) {
      lo_line = line;
    } else if (s.u < -edge_speed) {
      lo_line = line - 2.0;
    } else {
      mode = PllMode::Sliding;
    }
  };
  if (s.x == lo_line) settle(lo_line);

  std::vector<PllSample> out;
  std::size_t count = 0;
  auto record = [&](double t) {
    if (count++ % (options.record_every == 0 ? 1 : options.record_every) == 0) {
      out.push_back({t, s.x, s.u, pll_lyapunov_V(p, s), mode});
    }
  };

  double t = 0.0;
  record(t);
  while (t < T) {
    const double h = std::min(options.h, T - t);
    if (mode == PllMode::Sliding) {
      s.u *= std::exp(-slide_rate * h);
      t += h;
      record(t);
      continue;
    }
    const double centre = lo_line + 1.0;
    const PllState next = rk4(p, s, h, centre);
    if (next.x > lo_line && next.x < lo_line + 2.0) {
      s = next;
      t += h;
      record(t);
      continue;
    }
    const double line = next.x <= lo_line ? lo_line : lo_line + 2.0;
    auto beyond = [&](const PllState& q) { return line == lo_line ? q.x <= line : q.x >= line; };
    double th_lo = 0.0, th_hi = 1.0;
    while ((th_hi - th_lo) * h > options.event_tol) {
      const double mid = 0.5 * (th_lo + th_hi);
      if (!(mid > th_lo && mid < th_hi)) break;
      (beyond(rk4(p, s, mid * h, centre)) ? th_hi : th_lo) = mid;
    }
    s = rk4(p, s, th_hi * h, centre);
    t += th_hi * h;
    settle(line);
    record(t);
  }
  return out;
}

}  // namespace gpmap
