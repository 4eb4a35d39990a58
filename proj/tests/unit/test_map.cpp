#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gpmap/error.hpp"
#include "gpmap/map.hpp"

using namespace gpmap;

namespace {

bool throws_kind(auto&& fn, ErrorKind kind) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

std::vector<MapSpec> variants() {
  return {MapSpec::lozi(0.2, 1.905),        MapSpec::hybrid(0.3, 1.7, 0.6), MapSpec::belykh(0.8, 0.6),
          MapSpec::belykh_periodic(0.8, 0.6), MapSpec::sine(0.5, 1.3),       MapSpec::standard(0.97),
          MapSpec::zaslavsky(0.4, 2.0, 0.7)};
}

}  // namespace

TEST_CASE("eval_g picks the requested piece at a discontinuity") {
  const auto b = eval_g(MapSpec::belykh(0.8, 0.6), 0.0, Branch::Left);
  CHECK(b.value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(b.derivative == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(b.side == Side::Left);

  const auto right = eval_g(MapSpec::belykh(0.8, 0.6), 0.0);
  CHECK(right.side == Side::Right);
  CHECK(right.value == doctest::Approx(-0.6).epsilon(1e-15));

  const MapSpec lz = MapSpec::lozi(0.2, 1.905);
  CHECK(eval_g(lz, 0.0, Branch::Left).value == 1.0);
  CHECK(eval_g(lz, 0.0, Branch::Right).value == 1.0);
  // sign(0) resolves to the right piece for the derivative.
  CHECK(eval_g(lz, 0.0).derivative == doctest::Approx(-1.905 - 1.2));
}

TEST_CASE("hybrid with l = 1 evaluates exactly like Lozi") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const auto h = eval_g(MapSpec::hybrid(0.35, 1.8, 1.0), x);
    const auto l = eval_g(MapSpec::lozi(0.35, 1.8), x);
    CHECK(h.value == l.value);
    CHECK(h.derivative == l.derivative);
  }
}

TEST_CASE("hybrid with l = 0 is the quadratic Henon form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double lam = 0.3, a = 1.4;
  const MapSpec h = MapSpec::hybrid(lam, a, 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double want = 1.0 - (1.0 + lam) * x - a * x * x;
    CHECK(std::abs(eval_g(h, x).value - want) <= 1e-15 * std::max(1.0, std::abs(want)) * 4);
    CHECK(eval_g(h, x).derivative == doctest::Approx(-(1.0 + lam) - 2.0 * a * x).epsilon(1e-14));
  }
}

TEST_CASE("step reproduces the Belykh construction images") {
  const State f = step(MapSpec::belykh(0.8, 0.6), State::at(0.0, 0.4), Branch::Left);
  CHECK(f.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.y == doctest::Approx(0.8).epsilon(1e-15));

  const double alpha1 = (std::sqrt(2.0) - 1.0) / 2.0;
  const State m2 = step(MapSpec::belykh(0.5, 0.5), State::at(0.0, alpha1), Branch::Left);
  CHECK(m2.x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(m2.y == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("Lozi fixed points are fixed under step and step_inverse") {
  const double lam = 0.2, a = 1.905;
  const MapSpec lz = MapSpec::lozi(lam, a);
  const State O1 = State::at(1.0 / (1.0 + lam - a), 0.0);
  CHECK(O1.x == doctest::Approx(-1.4184397).epsilon(1e-7));
  const State f1 = step(lz, O1);
  CHECK(std::abs(f1.x - O1.x) <= 1e-12);
  CHECK(std::abs(f1.y) <= 1e-12);

  const State O2 = State::at(1.0 / (1.0 + lam + a), 0.0);
  const State b2 = step_inverse(lz, O2);
  CHECK(std::abs(b2.x - O2.x) <= 1e-12);
  CHECK(std::abs(b2.y) <= 1e-12);
}

TEST_CASE("step_inverse recovers the preimage and checks the branch") {
  const MapSpec b = MapSpec::belykh(0.8, 0.6);
  const State back = step_inverse(b, State::at(1.0, 0.8), Branch::Left);
  CHECK(std::abs(back.x) <= 1e-15);
  CHECK(back.y == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(throws_kind([&] { step_inverse(b, State::at(0.5, 0.8), Branch::Right); }, ErrorKind::WrongBranch));
}

TEST_CASE("jacobian matches the matrix form") {
  const Mat2 J = jacobian(MapSpec::belykh(0.8, 0.6), 0.37);
  CHECK(J.a11 == doctest::Approx(1.6));
  CHECK(J.a12 == 1.0);
  CHECK(J.a21 == doctest::Approx(0.48));
  CHECK(J.a22 == 0.8);
  CHECK(J.det() == doctest::Approx(0.8).epsilon(1e-15));

  const Mat2 L = jacobian(MapSpec::lozi(0.2, 1.905), 0.5);
  CHECK(L.a11 == doctest::Approx(-2.105));
  CHECK(L.a21 == doctest::Approx(-0.621));
  CHECK(L.a22 == 0.2);

  CHECK(jacobian(MapSpec::standard(1.3), 0.8).det() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: det jacobian = lambda for every variant") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const auto& spec : variants()) {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = u(rng);
      if (discontinuity_distance(spec, x) < 1e-9) continue;
      const Mat2 J = jacobian(spec, x);
      const long double det = static_cast<long double>(J.a11) * J.a22 - static_cast<long double>(J.a12) * J.a21;
      worst = std::max(worst, static_cast<double>(std::abs(det - spec.lambda) / spec.lambda));
      CHECK(std::abs(J.det() - spec.lambda) <= 1e-15 * spec.lambda);
    }
    CHECK(worst <= 1e-15);
  }
}

TEST_CASE("property: step_inverse undoes step") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& spec : variants()) {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x0 = u(rng);
      const State s{wrap(spec, x0), u(rng), wrap(spec, x0)};
      const State back = step_inverse(spec, step(spec, s));
      worst = std::max({worst, std::abs(back.x - s.x), std::abs(back.y - s.y), std::abs(back.lift - s.lift)});
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("property: the sine map is the discrete sine-Gordon recurrence") {
  const double lam = 0.6;
  const MapSpec spec = MapSpec::sine(lam, 1.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    State s = State::at(u(rng), u(rng));
    double u_prev = s.x - s.y / lam;  // lambda (u_j - u_{j-1}) = y_j
    for (int j = 0; j < 100; ++j) {
      const double uj = s.lift;
      const State n = step(spec, s);
      const double lhs = n.lift - uj - lam * (uj - u_prev);
      CHECK(std::abs(lhs - std::sin(uj)) <= 1e-12 * std::max(1.0, std::abs(uj)));
      u_prev = uj;
      s = n;
    }
  }
}

TEST_CASE("property: wrapped x agrees with the lift modulo the period") {
  for (const auto wrapc : {WrapConvention::Centered, WrapConvention::Positive}) {
    const MapSpec spec = MapSpec::belykh_periodic(0.8, 0.6, wrapc);
    State s{wrap(spec, 0.3), 2.5, 0.3};
    for (int i = 0; i < 5000; ++i) {
      s = step(spec, s);
      const double r = std::remainder(s.lift - s.x, spec.period);
      CHECK(std::abs(r) <= 1e-9 * std::max(1.0, std::abs(s.lift)));
      if (wrapc == WrapConvention::Centered) CHECK((s.x >= -1.0 && s.x < 1.0));
      else CHECK((s.x >= 0.0 && s.x < 2.0));
    }
  }
}

TEST_CASE("Henon-Lozi rewrite") {
  const MapSpec lz = from_henon_lozi(1.7, -0.5, 1.0);
  CHECK(lz.lambda == 0.5);
  CHECK(lz.a == 1.7);
  CHECK(lz.l == 1.0);
  const MapSpec he = from_henon_lozi(1.4, -0.3, 0.0);
  CHECK(he.l == 0.0);
  CHECK(throws_kind([] { from_henon_lozi(1.7, 0.5, 1.0); }, ErrorKind::InvalidArgument));

  // Conjugacy (X, Y) -> (X, Y - b X) against the original recurrence.
  for (const double l : {0.0, 0.4, 1.0}) {
    const double a = 1.4, b = -0.3;
    const MapSpec spec = from_henon_lozi(a, b, l);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 1000; ++i) {
      const double X = u(rng), Y = u(rng);
      const double U = l * std::abs(X) + (1.0 - l) * X * X;
      const double Xn = Y + 1.0 - a * U, Yn = b * X;
      const State s = step(spec, State::at(X, Y - b * X));
      CHECK(std::abs(s.x - Xn) <= 1e-12);
      CHECK(std::abs(s.y - (Yn - b * Xn)) <= 1e-12);
    }
  }
}

TEST_CASE("Zaslavsky rewrite") {
  const MapSpec lin = from_zaslavsky(0.0, 0.5, 0.0);
  State s = State::at(0.7, 0.0);
  for (int i = 0; i < 10; ++i) {
    s = step(lin, s);
    CHECK(s.y == 0.0);
  }
  CHECK(throws_kind([] { from_zaslavsky(1.0, 1.2, 0.0); }, ErrorKind::InvalidArgument));

  const double a = 1.0, eta = 0.5, omega = 0.3;
  MapSpec spec = from_zaslavsky(a, eta, omega);
  spec.topology = Topology::Plane;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double theta = u(rng), z = u(rng);
    const double zn = eta * (z + a * std::sin(theta));
    const double tn = theta + omega + z + a * std::sin(theta);
    const State n = step(spec, State::at(theta, z + omega * eta));
    CHECK(std::abs(n.x - tn) <= 1e-12);
    CHECK(std::abs(n.y - (zn + omega * eta)) <= 1e-12);
  }
}

TEST_CASE("PLL discretisation consistency") {
  CHECK(throws_kind([] { pll_discretize(6.0, 2.7, 1.0, 0.1); }, ErrorKind::InconsistentParameters));
  const MapSpec ok = pll_discretize(6.0, 54.0, 1.0, 0.1);
  CHECK(ok.lambda == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(ok.a == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(ok.variant == Variant::BelykhPeriodic);
  CHECK(pll_discretize(6.0, 54.0, 1.0, 0.1, PhaseDetector::Sine).variant == Variant::Sine);
  // Small steps approach the identity: a -> 0 and lambda -> 1.
  const double h = 1e-6;
  const MapSpec tiny = pll_discretize(1.0, (1.0 - h) * h / (h * h), 1.0, h);
  CHECK(tiny.a == doctest::Approx(1e-6));
  CHECK(tiny.lambda == doctest::Approx(1.0 - 1e-6).epsilon(1e-15));
  CHECK(throws_kind([] { pll_discretize(1.0, 1.0, 1.0, 0.0); }, ErrorKind::InvalidArgument));
}

TEST_CASE("factories validate their ranges") {
  CHECK(throws_kind([] { MapSpec::lozi(1.0, 1.5); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { MapSpec::lozi(0.0, 1.5); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { MapSpec::lozi(0.5, 0.0); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { MapSpec::hybrid(0.5, 1.0, 1.5); }, ErrorKind::InvalidArgument));
  CHECK(MapSpec::standard(1.0).lambda == 1.0);
  CHECK(MapSpec::belykh_periodic(0.8, 0.6).on_cylinder());
  for (const auto& spec : variants()) CHECK(parse_variant(to_string(spec.variant)) == spec.variant);
  CHECK_FALSE(parse_variant("henon").has_value());
}

TEST_CASE("periodic midpoints resolve to the same piece for every branch") {
  const MapSpec bp = MapSpec::belykh_periodic(0.8, 0.6);
  for (const double x : {-1.0, 1.0, 3.0}) {
    const GValue automatic = eval_g(bp, x);
    const GValue explicit_side = eval_g(bp, x, to_branch(automatic.side));
    CHECK(automatic.value == explicit_side.value);
    CHECK(automatic.value == 0.0);
  }
}
