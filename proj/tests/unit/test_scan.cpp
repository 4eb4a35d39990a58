#include <doctest.h>

#include <cmath>
#include <cstring>

#include "gpmap/certify.hpp"
#include "gpmap/error.hpp"
#include "gpmap/scan.hpp"

using namespace gpmap;

namespace {

// Label of the first cell of a 2x2 grid centred on (lambda, a).
std::string cell(Classifier c, double lambda, double a) {
  const Axis L{"lambda", lambda - 0.0025, lambda + 0.0075, 2};
  const Axis A{"a", a - 0.0025, a + 0.0075, 2};
  const auto g = grid_scan(c, L, A, {1, 0.95});
  return g.label_name(0, 0);
}

}  // namespace

TEST_CASE("Lozi cell labels") {
  CHECK(cell(Classifier::Lozi, 0.2, 1.5) == "attractor");
  CHECK(cell(Classifier::Lozi, 0.2, 1.95) == "hyperbolic-only");
  CHECK(cell(Classifier::Lozi, 0.2, 1.0) == "neither");
  CHECK(cell(Classifier::Belykh, 0.5, 0.3) == "single-attractor");
  CHECK(cell(Classifier::Belykh, 0.8, 0.6) == "three-component");
}

TEST_CASE("scan preconditions") {
  bool threw = false;
  try {
    grid_scan(Classifier::Lozi, {"lambda", 0.0, 1.0, 1}, {"a", 0.0, 2.5, 10});
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::InvalidArgument;
  }
  CHECK(threw);
  CHECK(parse_classifier("hybrid") == Classifier::Hybrid);
  CHECK_FALSE(parse_classifier("henon").has_value());
}

TEST_CASE("property: scans do not depend on the worker count") {
  const Axis L{"lambda", 0.0, 1.0, 60};
  const Axis A{"a", 0.0, 2.5, 70};
  for (const auto c : {Classifier::Lozi, Classifier::Belykh}) {
    const auto g1 = grid_scan(c, L, A, {1, 0.95});
    const auto g3 = grid_scan(c, L, A, {3, 0.95});
    const auto g8 = grid_scan(c, L, A, {8, 0.95});
    CHECK(g1.labels == g3.labels);
    CHECK(g1.labels == g8.labels);
    CHECK(g1.flags == g8.flags);
    CHECK(std::memcmp(g1.witness.data(), g8.witness.data(), g1.witness.size() * sizeof(double)) == 0);
  }
  const Axis HL{"lambda", 0.05, 0.3, 6};
  const Axis HA{"a", 1.3, 2.0, 6};
  const auto h1 = grid_scan(Classifier::Hybrid, HL, HA, {1, 0.95});
  const auto h4 = grid_scan(Classifier::Hybrid, HL, HA, {4, 0.95});
  CHECK(h1.labels == h4.labels);
}

TEST_CASE("property: Lozi columns change label at most twice for small lambda") {
  const Axis L{"lambda", 0.0, 0.25, 50};
  const Axis A{"a", 0.9, 2.5, 400};
  const auto g = grid_scan(Classifier::Lozi, L, A);
  for (std::size_t i = 0; i < L.n; ++i) {
    const double lam = L.at(i);
    if (A.lo * A.lo < 4.0 * lam) continue;
    int changes = 0;
    for (std::size_t j = 1; j < A.n; ++j) changes += g.label(i, j) != g.label(i, j - 1);
    CHECK(changes <= 2);
  }
}

TEST_CASE("boundary extraction") {
  const Axis L{"lambda", 0.0, 1.0, 100};
  const Axis A{"a", 0.0, 2.5, 100};
  const auto g = grid_scan(Classifier::Lozi, L, A);

  const auto line = boundary_extract(g, "neither", "attractor");
  CHECK(line.scalar == "a-(1+lambda)");
  CHECK(line.max_residual <= 1e-8);
  for (const auto& poly : line.curves)
    for (const Vec2 p : poly) CHECK(std::abs(p.y - (1.0 + p.x)) <= 1e-8);

  const auto H = boundary_extract(g, "attractor", "hyperbolic-only");
  CHECK(H.scalar == "H");
  CHECK(H.max_residual <= 1e-8);
  bool column = false;
  for (const auto& poly : H.curves) {
    for (const Vec2 p : poly) {
      CHECK(std::abs(lozi_H(p.x, p.y)) <= 1e-8);
      if (std::abs(p.x - 0.205) < 1e-12) {
        column = true;
        CHECK((p.y >= 1.88 && p.y <= 1.91));
      }
    }
  }
  CHECK(column);

  const Axis BA{"a", 0.0, 1.0, 100};
  const auto b = grid_scan(Classifier::Belykh, L, BA);
  const auto bl = boundary_extract(b, "single-attractor", "three-component");
  CHECK(bl.max_residual <= 1e-8);
  for (const auto& poly : bl.curves)
    for (const Vec2 p : poly) CHECK(std::abs(p.y - (1.0 - p.x)) <= 1e-8);

  bool empty = false;
  try {
    boundary_extract(b, "single-attractor", "error");
  } catch (const Error& e) {
    empty = e.kind() == ErrorKind::EmptyBoundary;
  }
  CHECK(empty);
}
