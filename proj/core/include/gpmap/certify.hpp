#ifndef GPMAP_CERTIFY_HPP
#define GPMAP_CERTIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpmap/geometry.hpp"
#include "gpmap/map.hpp"
#include "gpmap/report.hpp"
#include "gpmap/spectral.hpp"

namespace gpmap {

struct FixedPointInfo {
  State location;
  Side side = Side::Smooth;  // piece of g the point lives on
  double d = 0.0;
  EigenPair eigen;
  SaddleClass cls = SaddleClass::NonHyperbolic;
  double unstable_slope = 0.0;  // slope of the expanding eigenvector
  double stable_slope = 0.0;
  double unstable_multiplier = 0.0;
  double stable_multiplier = 0.0;
};

/// Closed-form fixed points, ordered by x. Saddle data is filled only where
/// the eigenvalues are real; otherwise cls is NonHyperbolic and the slopes
/// are NaN.
std::vector<FixedPointInfo> fixed_points(const MapSpec& spec);

/// Line-sampling plan for the derivative conditions.
struct RegionSampling {
  double x_lo = -10.0;
  double x_hi = 10.0;
  std::size_t n = 2001;
  double epsilon = 1e-6;
};

/// Conditions d >= eps on G+ and d < -2(1+lambda) on G-. Inapplicable when d
/// changes sign inside one smooth piece of g.
CertReport check_theorem1(const MapSpec& spec, const RegionSampling& plan = {});

/// Densities for the sampled f-invariance checks.
struct InvarianceSampling {
  std::size_t boundary = 1000;  // boundary points whose images must lie inside
  std::size_t interior = 1000;  // random interior starts
  std::size_t steps = 1000;     // iterates per interior start
  double tol = 1e-9;            // slack on membership
  std::uint64_t seed = 20240607;
};

struct BoundaryPiece {
  std::string label;
  Polyline points;  // open, oriented; chained to the next piece
};

/// A closed region assembled from labelled boundary pieces.
class TrapRegion {
 public:
  TrapRegion() = default;
  explicit TrapRegion(std::vector<BoundaryPiece> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  std::map<std::string, Vec2>& witnesses() { return witnesses_; }
  const std::map<std::string, Vec2>& witnesses() const { return witnesses_; }

  /// Polygon through every piece, duplicate junction points removed.
  Polyline outline() const;
  bool inside(Vec2 p, double tol = 0.0) const;
  /// Largest mismatch between the end of one piece and the start of the next.
  double closure_gap() const;

 private:
  std::vector<BoundaryPiece> pieces_;
  std::map<std::string, Vec2> witnesses_;
};

struct TrapCertificate {
  std::optional<TrapRegion> region;
  CertReport report;
};

/// Result of the sampled check f(G) in G.
struct InvarianceResult {
  std::size_t boundary_escapes = 0;
  std::size_t interior_escapes = 0;
  double worst_boundary_excess = 0.0;  // max distance outside, 0 if none
};

InvarianceResult check_invariance(const MapSpec& spec, const TrapRegion& region,
                                  const InvarianceSampling& sampling);

// ---- Lozi -----------------------------------------------------------------

/// a(2 lambda - a + 2) sqrt(a^2 - 4 lambda) + a(2 lambda^2 - 6 lambda - a^2 + 2a) + 4 lambda^2.
/// Throws ComplexRoot when a^2 < 4 lambda.
double lozi_H(double lambda, double a);

struct LoziConstruction {
  Vec2 O1, O2, M1, M2, M3, Q;
  EigenPair left;   // eigenstructure on x < 0
  double x1 = 0.0;
  /// y3 - alpha2 (x3 - x1): height of M3 above the stable line of O1.
  double geometric_gap = 0.0;
};

/// Throws InvalidArgument unless a > 1 + lambda.
LoziConstruction lozi_construction(double lambda, double a);

/// Trapping polygon O1 M1 M2 M3 Q. The verdict requires a > 1 + lambda and
/// H >= 0 and a passing sampled invariance check.
TrapCertificate lozi_trap(double lambda, double a, const InvarianceSampling& sampling = {});

// ---- Hybrid ---------------------------------------------------------------

struct HybridOptions {
  double delta = 1e-8;        // seed offset along the eigenvector
  std::size_t budget = 10000; // iterations for each shooting
  double epsilon = 1e-6;
};

struct HybridConstruction {
  FixedPointInfo O1;
  Vec2 M1, M2, M3;
  double y1_bound = 0.0;  // -lambda x1
  /// Traced points of the unstable separatrix outside 0 < y < lambda (x - x1).
  std::size_t phi1_violations = 0;
  /// y3 minus the height of the traced stable separatrix of O1 at x3.
  double w2_gap = 0.0;
};

/// Traces the unstable separatrix of O1 to {x = 0}. Throws TraceFailure when
/// the trace does not arrive within the budget or O1 is not a positive saddle.
HybridConstruction hybrid_construction(double lambda, double a, double l,
                                       const HybridOptions& options = {});

CertReport hybrid_certify(double lambda, double a, double l, const HybridOptions& options = {});

// ---- Belykh ---------------------------------------------------------------

struct BelykhConstruction {
  EigenPair eigen;
  Vec2 O1, O2, M1, M2, M3, fM1;
  Vec2 M1bar, M2bar, M3bar, fM1bar;
  Polyline P;  // O1 M2 O2 M2bar, counter-clockwise
};

BelykhConstruction belykh_construction(double lambda, double a);

/// Parallelogram P as a trap region (pieces along the four separatrices).
TrapRegion belykh_parallelogram(double lambda, double a);

CertReport belykh_certify(double lambda, double a, const InvarianceSampling& sampling = {});

struct AnnulusSampling {
  std::size_t starts = 1000;
  std::size_t steps = 10000;
  double y_max = 0.0;  // 0 selects ten times the bound
  std::uint64_t seed = 7;
};

/// Absorbing annulus |y| < a / (1 - lambda) of the periodic sawtooth map.
CertReport annulus_absorbing(double lambda, double a, const AnnulusSampling& sampling = {});

struct Gate {
  std::string label;
  Polyline polygon;
  bool inside(Vec2 p, double tol = 0.0) const { return contains(polygon, p, tol); }
};

struct CylinderGates {
  Gate delta1;  // output gate: part of f(P) above P
  Gate delta2;  // input gate: triangle M1 M3 M2
};

/// Throws EmptyGate when a <= 1 - lambda.
CylinderGates cylinder_gates(double lambda, double a);

}  // namespace gpmap

#endif
