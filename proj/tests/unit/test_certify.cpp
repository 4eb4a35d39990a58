#include <doctest.h>

#include <cmath>
#include <random>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"
#include "gpmap/map.hpp"
#include "gpmap/report.hpp"

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

// Direct transcription of the closed form for H, kept separate from the library.
double H_oracle(double l, double a) {
  return a * (2 * l - a + 2) * std::sqrt(a * a - 4 * l) + a * (2 * l * l - 6 * l - a * a + 2 * a) + 4 * l * l;
}

InvarianceSampling light() {
  InvarianceSampling s;
  s.boundary = 200;
  s.interior = 20;
  s.steps = 50;
  return s;
}

}  // namespace

TEST_CASE("fixed points are fixed") {
  const MapSpec specs[] = {MapSpec::lozi(0.2, 1.905), MapSpec::hybrid(0.2, 1.9, 0.9),
                           MapSpec::hybrid(0.3, 1.2, 0.0), MapSpec::belykh(0.8, 0.6),
                           MapSpec::belykh_periodic(0.8, 0.6), MapSpec::sine(0.5, 1.0),
                           MapSpec::zaslavsky(0.5, 1.0, 0.3)};
  for (const auto& spec : specs) {
    const auto fps = fixed_points(spec);
    CHECK_FALSE(fps.empty());
    for (const auto& fp : fps) {
      const State n = step(spec, fp.location, to_branch(fp.side));
      CHECK(std::abs(n.x - fp.location.x) <= 1e-12);
      CHECK(std::abs(n.y - fp.location.y) <= 1e-12);
      if (fp.cls != SaddleClass::NonHyperbolic) {
        const bool pos = fp.cls == SaddleClass::PositiveSaddle;
        CHECK(fp.unstable_slope == (pos ? fp.eigen.alpha1 : fp.eigen.alpha2));
      }
    }
  }
}

TEST_CASE("closed-form fixed point locations") {
  const auto lz = fixed_points(MapSpec::lozi(0.2, 1.905));
  REQUIRE(lz.size() == 2);
  CHECK(lz[0].location.x == doctest::Approx(1.0 / (1.2 - 1.905)));
  CHECK(lz[1].location.x == doctest::Approx(1.0 / (1.2 + 1.905)));

  // Hybrid against the printed (1 / 2a(1-l)) [ ... ] form.
  for (const double l : {0.2, 0.6, 0.95}) {
    const double lam = 0.3, a = 1.7, q = a * (1.0 - l);
    const double x1 = (-1.0 - lam + (a * l - std::sqrt(std::pow(a * l - (1.0 + lam), 2) + 4.0 * q))) / (2.0 * q);
    const double x2 = (-1.0 - lam - (a * l - std::sqrt(std::pow(a * l + (1.0 + lam), 2) + 4.0 * q))) / (2.0 * q);
    const auto h = fixed_points(MapSpec::hybrid(lam, a, l));
    REQUIRE(h.size() == 2);
    CHECK(h[0].location.x == doctest::Approx(x1).epsilon(1e-12));
    CHECK(h[1].location.x == doctest::Approx(x2).epsilon(1e-12));
  }

  const auto b = fixed_points(MapSpec::belykh(0.8, 0.6));
  REQUIRE(b.size() == 2);
  CHECK(b[0].location.x == -1.0);
  CHECK(b[1].location.x == 1.0);
}

TEST_CASE("hyperbolicity conditions") {
  const auto ok = check_theorem1(MapSpec::lozi(0.2, 1.905));
  CHECK(ok.holds());
  CHECK(ok.witnesses.at("min_d_plus") == doctest::Approx(0.705));
  CHECK(ok.witnesses.at("max_d_minus") == doctest::Approx(-3.105));

  const auto bad = check_theorem1(MapSpec::lozi(0.2, 1.0));
  CHECK(bad.verdict == Verdict::Fails);
  CHECK_FALSE(bad.violated.empty());

  RegionSampling one_period;
  one_period.x_lo = -std::numbers::pi;
  one_period.x_hi = std::numbers::pi;
  CHECK(check_theorem1(MapSpec::sine(0.5, 1.0), one_period).verdict == Verdict::Inapplicable);
  CHECK(check_theorem1(MapSpec::standard(1.0), one_period).verdict == Verdict::Inapplicable);
}

TEST_CASE("homoclinic function H") {
  CHECK(lozi_H(0.2, 1.5) == doctest::Approx(1.23062).epsilon(1e-5));
  CHECK(lozi_H(0.2, 1.95) == doctest::Approx(-0.31337).epsilon(1e-4));
  CHECK(lozi_H(0.2, 1.88) * lozi_H(0.2, 1.91) < 0.0);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ul(0.01, 0.99), ua(2.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double l = ul(rng), a = ua(rng);
    CHECK(lozi_H(l, a) == doctest::Approx(H_oracle(l, a)).epsilon(1e-13));
  }
  CHECK(throws_kind([] { lozi_H(0.9, 1.0); }, ErrorKind::ComplexRoot));
}

TEST_CASE("Lozi trapping region") {
  const auto t = lozi_trap(0.2, 1.5);
  CHECK(t.report.holds());
  REQUIRE(t.region.has_value());
  CHECK(t.region->closure_gap() <= 1e-9);
  CHECK(t.report.witnesses.at("interior_escapes") == 0.0);

  const auto c = lozi_construction(0.2, 1.5);
  const double x3 = 1.0 - 1.5 - 1.5 * c.left.alpha1 / (1.5 - 1.2);
  CHECK(c.M3.x == doctest::Approx(x3).epsilon(1e-12));
  CHECK(c.M3.x < 0.0);
  CHECK(c.M1.y == doctest::Approx(c.left.alpha1 / (1.5 - 1.2)).epsilon(1e-14));

  const auto f = lozi_trap(0.2, 1.95);
  CHECK(f.report.verdict == Verdict::Fails);
  CHECK(f.report.witnesses.at("H") < 0.0);
  CHECK(std::find(f.report.violated.begin(), f.report.violated.end(), "H") != f.report.violated.end());
  // M3 lies under the stable line of O1.
  CHECK(lozi_construction(0.2, 1.95).geometric_gap < 0.0);

  const auto none = lozi_trap(0.2, 1.1);
  CHECK(none.report.verdict == Verdict::Fails);
  CHECK_FALSE(none.region.has_value());
}

TEST_CASE("property: Lozi certificate agrees with the sign of H") {
  std::size_t checked = 0;
  for (int i = 0; i < 50; ++i) {
    const double lam = (i + 0.5) / 50.0;
    for (int j = 0; j < 50; ++j) {
      const double a = 1.0 + lam + (2.2 - 1.0 - lam) * (j + 0.5) / 50.0;
      if (a * a < 4.0 * lam || a >= 2.2) continue;
      ++checked;
      const double H = lozi_H(lam, a);
      const auto r = lozi_trap(lam, a, light());
      CHECK_MESSAGE(r.report.holds() == (H >= -1e-12), "lambda=", lam, " a=", a, " H=", H);
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("property: Holds certificates are sound under long sampling") {
  InvarianceSampling s;
  s.boundary = 1000;
  s.interior = 1000;
  s.steps = 1000;
  for (const auto& [lam, a] : {std::pair{0.2, 1.5}, std::pair{0.1, 1.7}, std::pair{0.3, 1.6}}) {
    const auto t = lozi_trap(lam, a, s);
    REQUIRE(t.report.holds());
    const auto inv = check_invariance(MapSpec::lozi(lam, a), *t.region, s);
    CHECK(inv.interior_escapes == 0);
    CHECK(inv.boundary_escapes == 0);
  }
  const auto P = belykh_parallelogram(0.5, 0.5);
  const auto inv = check_invariance(MapSpec::belykh(0.5, 0.5), P, s);
  CHECK(inv.interior_escapes == 0);
  CHECK(inv.boundary_escapes == 0);
}

TEST_CASE("hybrid certificate") {
  const auto henon = hybrid_certify(0.2, 1.5, 0.0);
  CHECK(henon.verdict == Verdict::Inapplicable);
  CHECK(henon.witnesses.at("henon_local_bound") == doctest::Approx(1.2 / 3.0));

  // Some small-lambda pair near l = 1 certifies.
  bool found = false;
  for (double a = 1.3; a < 2.0 && !found; a += 0.05) found = hybrid_certify(0.1, a, 0.95).holds();
  CHECK(found);

  const auto h = hybrid_construction(0.2, 1.6, 0.95);
  CHECK(h.phi1_violations == 0);
  CHECK(h.M1.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((h.M1.y > 0.0 && h.M1.y < h.y1_bound));
}

TEST_CASE("hybrid at l = 1 tracks the Lozi construction") {
  std::size_t hybrid_holds = 0;
  for (int i = 0; i < 20; ++i) {
    const double lam = 0.05 + 0.4 * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double a = 1.0 + lam + 0.02 + (0.9 - lam) * j / 19.0;
      if (a * a < 4.0 * lam) continue;
      const auto lz = lozi_construction(lam, a);
      const auto hy = hybrid_construction(lam, a, 1.0);
      // Shooting from a 1e-8 seed loses digits when the unstable multiplier is close to 1.
      CHECK(hy.M1.y == doctest::Approx(lz.M1.y).epsilon(1e-5));
      CHECK(hy.M3.x == doctest::Approx(lz.M3.x).epsilon(1e-5));
      CHECK(hy.w2_gap == doctest::Approx(lz.geometric_gap).epsilon(1e-6));
      // With x3 > x1 and alpha2 < lambda - 1 the hybrid inequality forces M3 above the
      // stable line, so a hybrid certificate implies a positive geometric gap.
      const auto r = hybrid_certify(lam, a, 1.0);
      if (r.holds()) {
        ++hybrid_holds;
        CHECK(hy.M3.x > hy.O1.location.x);
        CHECK(lz.geometric_gap >= r.witnesses.at("condition27_margin") - 1e-9);
      }
    }
  }
  CHECK(hybrid_holds > 0);
}

TEST_CASE("Belykh parallelogram certificate") {
  const auto r = belykh_certify(0.5, 0.5);
  CHECK(r.holds());
  CHECK(r.zero_margin);
  CHECK(r.witnesses.at("fM1_to_M2") <= 1e-12);

  const auto f = belykh_certify(0.8, 0.6);
  CHECK(f.verdict == Verdict::Fails);
  CHECK(f.witnesses.at("fM1.x") == doctest::Approx(1.0));
  CHECK(f.witnesses.at("fM1.y") == doctest::Approx(0.8));
  CHECK(f.witnesses.at("overshoot") == doctest::Approx(0.5));

  const auto s = belykh_certify(0.9, 0.05);
  CHECK(s.holds());
  CHECK_FALSE(s.zero_margin);
  CHECK(s.witnesses.at("slack") == doctest::Approx(0.05));
}

TEST_CASE("property: Belykh witnesses are odd-symmetric") {
  const MapSpec spec = MapSpec::belykh(0.7, 0.45);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng);
    if (x == 0.0) continue;
    const State p = step(spec, State::at(x, y));
    const State m = step(spec, State::at(-x, -y));
    CHECK(std::abs(p.x + m.x) <= 1e-12);
    CHECK(std::abs(p.y + m.y) <= 1e-12);
  }
  const auto c = belykh_construction(0.7, 0.45);
  for (const auto& [p, q] : {std::pair{c.M1, c.M1bar}, std::pair{c.M2, c.M2bar}, std::pair{c.M3, c.M3bar},
                             std::pair{c.fM1, c.fM1bar}}) {
    CHECK(std::abs(p.x + q.x) <= 1e-12);
    CHECK(std::abs(p.y + q.y) <= 1e-12);
  }
}

TEST_CASE("absorbing annulus") {
  const auto r = annulus_absorbing(0.8, 0.6);
  CHECK(r.witnesses.at("bound") == doctest::Approx(3.0));
  CHECK(r.holds());
  CHECK(annulus_absorbing(0.5, 0.5, {100, 100, 0.0, 1}).witnesses.at("bound") == doctest::Approx(1.0));

  // One-step contraction outside the bound, from the update rule itself.
  const MapSpec spec = MapSpec::belykh_periodic(0.8, 0.6);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(3.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = (i % 2 ? 1.0 : -1.0) * uy(rng);
    const State n = step(spec, State::at(ux(rng), y));
    CHECK(std::abs(n.y) <= 0.8 * (std::abs(y) + 0.6) + 1e-12);
    CHECK(std::abs(n.y) < std::abs(y));
  }
}

TEST_CASE("cylinder gates") {
  const auto g = cylinder_gates(0.8, 0.6);
  const auto c = belykh_construction(0.8, 0.6);
  CHECK(c.M3.x == 0.0);
  CHECK(c.M3.y == doctest::Approx(1.2));
  bool has_fM1 = false;
  for (const Vec2 v : g.delta1.polygon) has_fM1 = has_fM1 || distance(v, {1.0, 0.8}) <= 1e-12;
  CHECK(has_fM1);
  CHECK(g.delta2.polygon.size() == 3);
  CHECK(throws_kind([] { cylinder_gates(0.5, 0.5); }, ErrorKind::EmptyGate));
}

TEST_CASE("certificate reports round-trip through JSON") {
  const auto r = lozi_trap(0.2, 1.95).report;
  const auto back = CertReport::from_json(r.to_json());
  CHECK(back.theorem == r.theorem);
  CHECK(back.verdict == r.verdict);
  CHECK(back.violated == r.violated);
  CHECK(back.witnesses == r.witnesses);
  CHECK(back.to_json() == r.to_json());

  CertReport inf;
  inf.theorem = "t";
  inf.witnesses["big"] = std::numeric_limits<double>::infinity();
  CHECK(std::isinf(CertReport::from_json(inf.to_json()).witnesses.at("big")));
}

TEST_CASE("property: every Fails report names a violated witness") {
  const CertReport reports[] = {lozi_trap(0.2, 1.95).report, lozi_trap(0.2, 1.1).report,
                                belykh_certify(0.8, 0.6, light()), check_theorem1(MapSpec::lozi(0.2, 1.0)),
                                hybrid_certify(0.2, 1.3, 0.95)};
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fails) CHECK_FALSE(r.violated.empty());
  }
}
