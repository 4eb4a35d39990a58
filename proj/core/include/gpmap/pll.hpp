#ifndef GPMAP_PLL_HPP
#define GPMAP_PLL_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace gpmap {

/// Continuous-time loop  x' = u + omega1 g(x),  u' = -lambda0 u + omega2 g(x)
/// with the 2-periodic sawtooth g(x) = a(x - (2k - 1)) on (2k - 2, 2k).
struct PllParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double lambda0 = 0.5;
  double a = 1.0;
};

struct PllState {
  double x = 0.0;
  double u = 0.0;
};

/// Sliding: pinned to a discontinuity x = 2k where both one-sided vector
/// fields point at the line (|u| < omega1 a).
enum class PllMode { Flow, Sliding };

std::string_view to_string(PllMode m) noexcept;

struct PllSample {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
  double V = 0.0;
  PllMode mode = PllMode::Flow;
};

struct PllOptions {
  double h = 1e-3;            // fixed RK4 step
  double event_tol = 1e-12;   // bisection tolerance in time for line crossings
  std::size_t record_every = 1;
};

/// Sawtooth value, taking the right-hand piece on the lines x = 2k.
double pll_sawtooth(double a, double x);

/// V = u^2/2 - omega2 * integral_0^x g. Non-negative, zero exactly on the
/// glued equilibria (2k, 0).
double pll_lyapunov_V(double omega2, double a, PllState s);
inline double pll_lyapunov_V(const PllParams& p, PllState s) { return pll_lyapunov_V(p.omega2, p.a, s); }

/// Fixed-step RK4 on the current smooth piece. Crossings of x = 2k are
/// located by bisection on the step fraction; at a crossing the flow either
/// continues on the next piece or, when both sides push into the line,
/// slides along it with u(t) = u0 exp(-(lambda0 + omega2/omega1) t).
/// Throws InvalidArgument for h <= 0, T < 0 or non-positive gains.
std::vector<PllSample> pll_integrate(const PllParams& p, PllState s0, double T, const PllOptions& options = {});

}  // namespace gpmap

#endif
