#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "peripack/scalar.hpp"

namespace peripack {

struct Point {
  Scalar x, y;
};

struct Vec {
  Scalar dx, dy;
};

// A direction is a nonzero vector considered up to positive scaling.
struct Direction {
  Scalar dx, dy;
};

struct Segment {
  Point a, b;
};

inline Vec operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator+(const Point& p, const Vec& v) { return {p.x + v.dx, p.y + v.dy}; }
inline Scalar dot(const Vec& u, const Vec& v) { return u.dx * v.dx + u.dy * v.dy; }
inline Scalar cross(const Vec& u, const Vec& v) { return u.dx * v.dy - u.dy * v.dx; }

// True when the two directions are positive multiples of each other.
bool same_direction(const Direction& a, const Direction& b);

struct Disk {
  Point center;
  Scalar radius;  // > 0
};

// Closed convex polygon, vertices in counterclockwise order, strictly convex
// (no repeated or collinear consecutive vertices, single winding). The
// constructor rejects anything degenerate.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  size_t size() const { return verts_.size(); }
  const Point& vertex(size_t i) const { return verts_[i]; }
  Segment edge(size_t i) const {
    return {verts_[i], verts_[(i + 1) % verts_.size()]};
  }

 private:
  std::vector<Point> verts_;
};

using Body = std::variant<Disk, ConvexPolygon>;

using SupportSide = std::variant<Point, Segment>;

Mode mode_of(const Body& b);

// Boundary length. Disks give 2*pi*r as a Float scalar; polygons stay exact
// when every edge length is rational (axis-parallel edges always are).
Scalar perimeter(const Body& b);
// For a disk, the exact multiplier c with perimeter = c*pi (i.e. 2r);
// nullopt for polygons.
std::optional<Scalar> perimeter_pi_coefficient(const Body& b);

// Enclosed area; disks give pi*r^2 as Float, with r^2 available exactly.
Scalar area(const Body& b);
std::optional<Scalar> area_pi_coefficient(const Body& b);

// The face of b touched by the supporting line with direction d and b on its
// left (outward normal = d rotated -90 degrees): an edge when one is parallel
// to d, otherwise a single point.
SupportSide support_side(const Body& b, const Direction& d);

// p -> mu*p + t with mu > 0.
Body apply_homothety(const Body& b, const Scalar& mu, const Vec& t);

Scalar edge_length(const Segment& e);

// Distance from a point to the line through e (unsigned).
Scalar point_line_distance(const Point& p, const Segment& e);

// Signed distance from p to the line through e, positive on the left of a->b.
// Exact whenever the edge length is rational.
Scalar signed_line_distance(const Point& p, const Segment& e);

// Squared distance from a point to a segment (exact in Exact mode).
Scalar point_segment_distance_sq(const Point& p, const Segment& e);

// True when p lies in the closed polygon (tolerance-aware in Float mode).
bool polygon_contains_point(const ConvexPolygon& poly, const Point& p);

// Distance from body b (inside the container) to the supporting line of
// container edge e. Throws if b is not inside the container.
Scalar body_edge_distance(const Body& b, const Segment& e,
                          const ConvexPolygon& container);

// Axis-aligned bounding box as {min, max} corners.
struct Box {
  Point lo, hi;
};
Box bounding_box(const Body& b);

}  // namespace peripack
