#ifndef GPMAP_SCAN_HPP
#define GPMAP_SCAN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpmap/geometry.hpp"

namespace gpmap {

enum class Classifier { Lozi, Hybrid, Belykh };

std::string_view to_string(Classifier c) noexcept;
std::optional<Classifier> parse_classifier(std::string_view name) noexcept;

/// Label names per classifier, indexed by label code.
const std::vector<std::string>& label_names(Classifier c);

/// Sampled parameter axis; values sit at cell centres, so open intervals
/// such as lambda in (0, 1) are never evaluated at their ends.
struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double at(std::size_t i) const { return lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n); }
};

enum CellFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagHUndefined = 1,     // a^2 < 4 lambda: labelled by hyperbolicity alone
  kFlagNoConstruction = 2, // trapping construction unavailable
  kFlagError = 4,
};

struct ScanGrid {
  Classifier classifier = Classifier::Lozi;
  double l = 1.0;  // hybrid weight
  Axis lambda_axis;
  Axis a_axis;
  std::vector<std::uint8_t> labels;  // row-major: lambda index, then a index
  std::vector<double> witness;       // governing trapping scalar (H, condition margin, slack)
  std::vector<std::uint8_t> flags;

  std::size_t index(std::size_t i, std::size_t j) const { return i * a_axis.n + j; }
  std::uint8_t label(std::size_t i, std::size_t j) const { return labels[index(i, j)]; }
  const std::string& label_name(std::size_t i, std::size_t j) const;
};

struct ScanOptions {
  unsigned threads = 0;  // 0: GPMAP_THREADS if set, else hardware concurrency
  double l = 0.95;       // hybrid weight
};

/// Worker count from GPMAP_THREADS (if positive) or the hardware.
unsigned default_threads();

/// Evaluates every cell. The cell function is pure and results land in
/// per-cell slots, so the output does not depend on the worker count.
/// Throws InvalidArgument for fewer than two points on an axis.
ScanGrid grid_scan(Classifier classifier, const Axis& lambda, const Axis& a, const ScanOptions& options = {});

struct BoundaryCurves {
  std::string scalar;           // governing scalar that was bisected
  std::vector<Polyline> curves; // points (lambda, a), ordered by lambda
  double max_residual = 0.0;    // max |scalar| at an emitted point
};

/// Sub-cell boundary between two labels: for every lambda column, each
/// adjacent pair of cells carrying the two labels is refined by bisection in
/// a on the scalar that separates them. Throws EmptyBoundary when the grid
/// lacks either label or no crossing is found.
BoundaryCurves boundary_extract(const ScanGrid& grid, const std::string& label_a, const std::string& label_b,
                                double tol = 1e-8);

}  // namespace gpmap

#endif
