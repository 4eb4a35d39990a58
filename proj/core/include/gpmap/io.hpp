#ifndef GPMAP_IO_HPP
#define GPMAP_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gpmap/dynamics.hpp"
#include "gpmap/geometry.hpp"
#include "gpmap/map.hpp"
#include "gpmap/pll.hpp"
#include "gpmap/scan.hpp"
#include "gpmap/separatrix.hpp"

namespace gpmap {

/// Round-trip formatting with 17 significant digits.
std::string format_double(double v);

// CSV writers. Every file starts with one header row:
//   orbit:  index,x,y,lift,branch,hit
//   trace:  piece,vertex,x,y,branch
//   scan:   cell,i,j,lambda,a,label,witness,flags
//   pll:    t,x,u,V,mode
void write_orbit_csv(std::ostream& os, const OrbitRecord& orbit);
void write_trace_csv(std::ostream& os, const SeparatrixTrace& trace);
void write_scan_csv(std::ostream& os, const ScanGrid& grid);
void write_pll_csv(std::ostream& os, const std::vector<PllSample>& samples);

/// Key-value form of a MapSpec, one "key = value" per line, keys
/// variant, lambda, a, l, k, omega, period, topology, wrap.
std::string to_key_value(const MapSpec& spec);

/// Parses the form above; unknown keys, malformed lines and out-of-range
/// parameters throw InvalidArgument. '#' starts a comment.
MapSpec map_spec_from_key_value(std::string_view text);

/// Minimal SVG writer over a world-coordinate window (y up).
class SvgCanvas {
 public:
  SvgCanvas(Box world, int width = 800, int height = 600, int margin = 50);

  void rect_world(double x0, double y0, double x1, double y1, const std::string& fill);
  void polygon(const Polyline& pts, const std::string& fill, const std::string& stroke, double opacity = 1.0,
               bool dashed = false);
  void polyline(const Polyline& pts, const std::string& stroke, double width = 1.5, bool dashed = false);
  void dots(const Polyline& pts, const std::string& fill, double radius = 0.8);
  void marker(Vec2 p, const std::string& label, const std::string& fill = "black");
  void axes(const std::string& x_label, const std::string& y_label);
  void title(const std::string& text);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  Box world_;
  int width_, height_, margin_;
  std::string body_;
};

std::string render_scan_svg(const ScanGrid& grid, const std::vector<BoundaryCurves>& curves);

}  // namespace gpmap

#endif
