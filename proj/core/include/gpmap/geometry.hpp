#ifndef GPMAP_GEOMETRY_HPP
#define GPMAP_GEOMETRY_HPP

#include <cmath>
#include <span>
#include <vector>

namespace gpmap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Vec2 operator-(Vec2 p) { return {-p.x, -p.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Vec2 operator*(Vec2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
constexpr double cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }
inline double distance(Vec2 p, Vec2 q) { return norm(p - q); }
constexpr Vec2 lerp(Vec2 p, Vec2 q, double t) { return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}; }

/// Row-major 2x2 matrix.
struct Mat2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  /// Determinant with a compensated product, so the only error left is the
  /// rounding already present in the stored entries.
  double det() const;
  double trace() const { return a11 + a22; }
  /// Frobenius norm.
  double norm() const { return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22); }
  Mat2 inverse() const;

  constexpr Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  constexpr Mat2 operator*(const Mat2& m) const {
    return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
            a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
  }
};

/// Closed polygon given by its vertices; the closing edge is implicit.
using Polyline = std::vector<Vec2>;

/// Winding number of the closed polygon around p (0 when outside).
int winding_number(std::span<const Vec2> polygon, Vec2 p);

/// Distance from p to the closed polygon boundary.
double boundary_distance(std::span<const Vec2> polygon, Vec2 p);

double segment_distance(Vec2 a, Vec2 b, Vec2 p);

/// Closed membership: inside by winding number, or within `tol` of the boundary.
bool contains(std::span<const Vec2> polygon, Vec2 p, double tol = 0.0);

double signed_area(std::span<const Vec2> polygon);
double perimeter(std::span<const Vec2> polygon);

/// Point at arclength fraction t in [0, 1) along the closed boundary.
Vec2 point_on_boundary(std::span<const Vec2> polygon, double t);

/// Keeps the part of a convex polygon on the left of the directed line a->b.
std::vector<Vec2> clip_left(std::span<const Vec2> polygon, Vec2 a, Vec2 b);

/// Pieces of convex polygon `subject` lying outside convex polygon `clip`.
/// `clip` must be counter-clockwise.
std::vector<std::vector<Vec2>> convex_difference(std::span<const Vec2> subject,
                                                 std::span<const Vec2> clip);

/// Intersection of the lines p + s*u and q + t*v. Returns false when parallel.
bool line_intersection(Vec2 p, Vec2 u, Vec2 q, Vec2 v, Vec2& out);

struct Box {
  double xmin, xmax, ymin, ymax;
};
Box bounding_box(std::span<const Vec2> points);

}  // namespace gpmap

#endif
