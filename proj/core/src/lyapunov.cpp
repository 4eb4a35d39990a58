#include <cmath>
#include <string>

#include "gpmap/dynamics.hpp"
#include "gpmap/error.hpp"

namespace gpmap {

namespace {

// Gram-Schmidt on the columns (c1, c2); returns log |r11| and log |r22|.
std::pair<double, double> reorthonormalize(Vec2& c1, Vec2& c2) {
  const double r11 = norm(c1);
  c1 = (1.0 / r11) * c1;
  const double r22 = cross(c1, c2);
  c2 = Vec2{-c1.y, c1.x};
  return {std::log(r11), std::log(std::abs(r22))};
}

}  // namespace

LyapunovEstimate lyapunov(const MapSpec& spec, State s0, std::size_t n, std::size_t transient,
                          std::size_t renormalization, double overflow) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "lyapunov needs n > 0");
  if (renormalization == 0) renormalization = 1;
  State s = s0;
  Vec2 c1{1.0, 0.0}, c2{0.0, 1.0};
  double sum1 = 0.0, sum2 = 0.0;
  const std::size_t total = transient + n;
  for (std::size_t k = 0; k < total; ++k) {
    const Mat2 J = jacobian(spec, s.x);
    c1 = J * c1;
    c2 = J * c2;
    s = step(spec, s);
    if (!(std::abs(s.y) <= overflow) || !std::isfinite(s.x)) {
      throw Error(ErrorKind::Overflow, "orbit diverged at step " + std::to_string(k + 1));
    }
    const bool last = k + 1 == total;
    if ((k + 1) % renormalization == 0 || last || k + 1 == transient) {
      const auto [l1, l2] = reorthonormalize(c1, c2);
      if (k >= transient) {
        sum1 += l1;
        sum2 += l2;
      }
    }
  }
  LyapunovEstimate est;
  est.n = n;
  est.renormalization = renormalization;
  est.h1 = sum1 / static_cast<double>(n);
  est.h2 = sum2 / static_cast<double>(n);
  if (est.h2 > est.h1) std::swap(est.h1, est.h2);
  return est;
}

}  // namespace gpmap
