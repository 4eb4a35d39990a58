#include "gpmap/geometry.hpp"

#include <algorithm>
#include <limits>

namespace gpmap {

double Mat2::det() const {
  const double w = a12 * a21;
  const double err = std::fma(a12, a21, -w);
  return std::fma(a11, a22, -w) - err;
}

Mat2 Mat2::inverse() const {
  const double d = det();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

int winding_number(std::span<const Vec2> polygon, Vec2 p) {
  int wn = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double side = cross(b - a, p - a);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else {
      if (b.y <= p.y && side < 0) --wn;
    }
  }
  return wn;
}

double segment_distance(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(a, p);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(lerp(a, b, t), p);
}

double boundary_distance(std::span<const Vec2> polygon, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, segment_distance(polygon[i], polygon[(i + 1) % n], p));
  }
  return best;
}

bool contains(std::span<const Vec2> polygon, Vec2 p, double tol) {
  if (polygon.size() < 3) return false;
  if (winding_number(polygon, p) != 0) return true;
  return tol > 0.0 && boundary_distance(polygon, p) <= tol;
}

double signed_area(std::span<const Vec2> polygon) {
  double s = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * s;
}

double perimeter(std::span<const Vec2> polygon) {
  double s = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) s += distance(polygon[i], polygon[(i + 1) % n]);
  return s;
}

Vec2 point_on_boundary(std::span<const Vec2> polygon, double t) {
  const double total = perimeter(polygon);
  double target = std::clamp(t - std::floor(t), 0.0, 1.0) * total;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double len = distance(a, b);
    if (target <= len && len > 0.0) return lerp(a, b, target / len);
    target -= len;
  }
  return polygon.front();
}

std::vector<Vec2> clip_left(std::span<const Vec2> polygon, Vec2 a, Vec2 b) {
  std::vector<Vec2> out;
  const std::size_t n = polygon.size();
  const Vec2 dir = b - a;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = polygon[i];
    const Vec2 q = polygon[(i + 1) % n];
    const double sp = cross(dir, p - a);
    const double sq = cross(dir, q - a);
    if (sp >= 0) out.push_back(p);
    if ((sp >= 0) != (sq >= 0)) {
      const double t = sp / (sp - sq);
      out.push_back(lerp(p, q, t));
    }
  }
  return out;
}

std::vector<std::vector<Vec2>> convex_difference(std::span<const Vec2> subject,
                                                 std::span<const Vec2> clip) {
  std::vector<std::vector<Vec2>> pieces;
  std::vector<Vec2> remaining(subject.begin(), subject.end());
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && remaining.size() >= 3; ++i) {
    const Vec2 a = clip[i];
    const Vec2 b = clip[(i + 1) % n];
    auto outside = clip_left(remaining, b, a);
    if (outside.size() >= 3 && std::abs(signed_area(outside)) > 0.0) {
      pieces.push_back(std::move(outside));
    }
    remaining = clip_left(remaining, a, b);
  }
  return pieces;
}

bool line_intersection(Vec2 p, Vec2 u, Vec2 q, Vec2 v, Vec2& out) {
  const double den = cross(u, v);
  if (den == 0.0) return false;
  const double s = cross(q - p, v) / den;
  out = p + s * u;
  return true;
}

Box bounding_box(std::span<const Vec2> points) {
  Box box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2 p : points) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  return box;
}

}  // namespace gpmap
