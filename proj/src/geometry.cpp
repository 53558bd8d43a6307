#include "peripack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace peripack {

bool same_direction(const Direction& a, const Direction& b) {
  const Scalar cr = a.dx * b.dy - a.dy * b.dx;
  const Scalar dp = a.dx * b.dx + a.dy * b.dy;
  return cr.is_zero() && dp.sign() > 0;
}

namespace {

// Quadrant index of a nonzero vector, counting boundary rays with the lower
// quadrant: (+,0)->0, (+,+)->0, (0,+)->1, (-,+)->1, (-,0)->2, (-,-)->2,
// (0,-)->3, (+,-)->3.
int quadrant(const Scalar& dx, const Scalar& dy) {
  const int sx = Scalar::compare_value(dx, Scalar::zero(dx.mode()));
  const int sy = Scalar::compare_value(dy, Scalar::zero(dy.mode()));
  if (sx > 0 && sy >= 0) return 0;
  if (sx <= 0 && sy > 0) return 1;
  if (sx < 0 && sy <= 0) return 2;
  return 3;
}

Mode mode_of_point(const Point& p) {
  if (p.x.mode() != p.y.mode()) throw Error("geometry: point mixes scalar modes");
  return p.x.mode();
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
  const size_t n = verts_.size();
  if (n < 3) throw Error("polygon: fewer than 3 vertices");
  const Mode m = mode_of_point(verts_[0]);
  for (const Point& p : verts_)
    if (mode_of_point(p) != m) throw Error("polygon: mixed scalar modes");
  // Strict left turns everywhere rule out repeats, collinear runs and
  // reflex vertices; the quadrant walk of edge directions rules out polygons
  // that wind more than once.
  int wraps = 0;
  int prev_quad = -1;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = verts_[i];
    const Point& b = verts_[(i + 1) % n];
    const Point& c = verts_[(i + 2) % n];
    const Scalar turn = cross(b - a, c - b);
    if (Scalar::compare_value(turn, Scalar::zero(m)) <= 0)
      throw Error("polygon: not strictly convex counterclockwise");
    const Vec e = b - a;
    const int q = quadrant(e.dx, e.dy);
    if (prev_quad >= 0 && q != prev_quad) {
      int step = (q - prev_quad + 4) % 4;
      wraps += step;
    }
    prev_quad = q;
  }
  // Close the cycle from last edge back to first.
  {
    const Vec e0 = verts_[1] - verts_[0];
    const int q0 = quadrant(e0.dx, e0.dy);
    wraps += (q0 - prev_quad + 4) % 4;
  }
  if (wraps != 4) throw Error("polygon: edge directions wind more than once");
}

Mode mode_of(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    const Mode m = mode_of_point(d->center);
    if (d->radius.mode() != m) throw Error("geometry: disk mixes scalar modes");
    if (d->radius.sign() <= 0) throw Error("geometry: disk radius must be positive");
    return m;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  return mode_of_point(poly.vertex(0));
}

Scalar edge_length(const Segment& e) {
  const Vec v = e.b - e.a;
  const Scalar len2 = dot(v, v);
  if (len2.is_exact()) {
    if (auto r = len2.try_exact_sqrt()) return *r;
  }
  return len2.sqrt_float();
}

Scalar perimeter(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b))
    return Scalar::real(2.0 * std::numbers::pi * d->radius.to_double());
  const auto& poly = std::get<ConvexPolygon>(b);
  // Stay exact only when every edge length is rational.
  std::vector<Scalar> lens;
  lens.reserve(poly.size());
  bool all_exact = true;
  for (size_t i = 0; i < poly.size(); ++i) {
    lens.push_back(edge_length(poly.edge(i)));
    all_exact = all_exact && lens.back().is_exact();
  }
  if (all_exact && mode_of(b) == Mode::Exact) {
    Scalar total = Scalar::exact(0);
    for (const Scalar& l : lens) total += l;
    return total;
  }
  double total = 0;
  for (const Scalar& l : lens) total += l.to_double();
  return Scalar::real(total);
}

std::optional<Scalar> perimeter_pi_coefficient(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b)) return d->radius.mul_int(2);
  return std::nullopt;
}

Scalar area(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b))
    return Scalar::real(std::numbers::pi * d->radius.to_double() * d->radius.to_double());
  const auto& poly = std::get<ConvexPolygon>(b);
  Scalar twice = Scalar::zero(mode_of(b));
  for (size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    twice += cross({e.a.x, e.a.y}, {e.b.x, e.b.y});
  }
  return twice.div_int(2);
}

std::optional<Scalar> area_pi_coefficient(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b)) return d->radius * d->radius;
  return std::nullopt;
}

SupportSide support_side(const Body& b, const Direction& d) {
  if (d.dx.is_zero() && d.dy.is_zero()) throw Error("support_side: zero direction");
  // Outward normal: d rotated -90 degrees.
  const Vec n{d.dy, -d.dx};
  if (const Disk* disk = std::get_if<Disk>(&b)) {
    const Scalar nn = dot(n, n);
    if (auto exact_len = nn.try_exact_sqrt()) {
      const Scalar s = disk->radius / *exact_len;
      return Point{disk->center.x + n.dx * s, disk->center.y + n.dy * s};
    }
    const double len = std::sqrt(nn.to_double());
    const double r = disk->radius.to_double();
    return Point{Scalar::real(disk->center.x.to_double() + n.dx.to_double() / len * r),
                 Scalar::real(disk->center.y.to_double() + n.dy.to_double() / len * r)};
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  size_t best = 0;
  Scalar best_dot = dot({poly.vertex(0).x, poly.vertex(0).y}, n);
  for (size_t i = 1; i < poly.size(); ++i) {
    const Scalar v = dot({poly.vertex(i).x, poly.vertex(i).y}, n);
    if (Scalar::compare_value(v, best_dot) > 0) {
      best = i;
      best_dot = v;
    }
  }
  // With strict convexity at most one neighbour of the extreme vertex ties;
  // that neighbour is along the edge parallel to d.
  const size_t n_verts = poly.size();
  const size_t next = (best + 1) % n_verts;
  const size_t prev = (best + n_verts - 1) % n_verts;
  const Scalar dot_next = dot({poly.vertex(next).x, poly.vertex(next).y}, n);
  const Scalar dot_prev = dot({poly.vertex(prev).x, poly.vertex(prev).y}, n);
  if (Scalar::compare_value(dot_next, best_dot) == 0)
    return Segment{poly.vertex(best), poly.vertex(next)};
  if (Scalar::compare_value(dot_prev, best_dot) == 0)
    return Segment{poly.vertex(prev), poly.vertex(best)};
  return poly.vertex(best);
}

Body apply_homothety(const Body& b, const Scalar& mu, const Vec& t) {
  if (mu.sign() <= 0) throw Error("homothety: factor must be positive");
  if (const Disk* d = std::get_if<Disk>(&b)) {
    return Disk{{d->center.x * mu + t.dx, d->center.y * mu + t.dy}, d->radius * mu};
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  std::vector<Point> verts;
  verts.reserve(poly.size());
  for (const Point& p : poly.vertices())
    verts.push_back({p.x * mu + t.dx, p.y * mu + t.dy});
  return ConvexPolygon(std::move(verts));
}

Scalar signed_line_distance(const Point& p, const Segment& e) {
  const Scalar cr = cross(e.b - e.a, p - e.a);
  const Scalar len = edge_length(e);
  if (cr.is_exact() && len.is_exact()) return cr / len;
  return Scalar::real(cr.to_double() / len.to_double());
}

Scalar point_line_distance(const Point& p, const Segment& e) {
  return signed_line_distance(p, e).abs();
}

Scalar point_segment_distance_sq(const Point& p, const Segment& e) {
  const Vec v = e.b - e.a;
  const Vec w = p - e.a;
  const Scalar len2 = dot(v, v);
  const Scalar proj = dot(w, v);
  const Scalar zero = Scalar::zero(len2.mode());
  if (Scalar::compare_value(proj, zero) <= 0) return dot(w, w);
  if (Scalar::compare_value(proj, len2) >= 0) {
    const Vec u = p - e.b;
    return dot(u, u);
  }
  const Scalar cr = cross(v, w);
  return cr * cr / len2;
}

bool polygon_contains_point(const ConvexPolygon& poly, const Point& p) {
  for (size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    const Scalar cr = cross(e.b - e.a, p - e.a);
    if (cr.sign() < 0) return false;
  }
  return true;
}

namespace {

bool body_inside(const Body& b, const ConvexPolygon& container) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    for (size_t i = 0; i < container.size(); ++i) {
      const Scalar sd = signed_line_distance(d->center, container.edge(i));
      if (sd.lt(d->radius)) return false;
    }
    return true;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  for (const Point& v : poly.vertices())
    if (!polygon_contains_point(container, v)) return false;
  return true;
}

}  // namespace

Scalar body_edge_distance(const Body& b, const Segment& e,
                          const ConvexPolygon& container) {
  if (!body_inside(b, container)) throw Error("body_edge_distance: body not inside container");
  if (const Disk* d = std::get_if<Disk>(&b)) {
    const Scalar sd = signed_line_distance(d->center, e);
    Scalar gap = sd - (sd.is_exact() ? d->radius : d->radius.as_float());
    return gap.sign() < 0 ? Scalar::zero(gap.mode()) : gap;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  std::optional<Scalar> best;
  for (const Point& v : poly.vertices()) {
    Scalar sd = signed_line_distance(v, e);
    if (sd.sign() < 0) sd = Scalar::zero(sd.mode());
    if (!best || Scalar::compare_value(sd, *best) < 0) best = sd;
  }
  return *best;
}

Box bounding_box(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    return {{d->center.x - d->radius, d->center.y - d->radius},
            {d->center.x + d->radius, d->center.y + d->radius}};
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  Scalar xmin = poly.vertex(0).x, xmax = xmin;
  Scalar ymin = poly.vertex(0).y, ymax = ymin;
  for (const Point& p : poly.vertices()) {
    if (Scalar::compare_value(p.x, xmin) < 0) xmin = p.x;
    if (Scalar::compare_value(p.x, xmax) > 0) xmax = p.x;
    if (Scalar::compare_value(p.y, ymin) < 0) ymin = p.y;
    if (Scalar::compare_value(p.y, ymax) > 0) ymax = p.y;
  }
  return {{xmin, ymin}, {xmax, ymax}};
}

}  // namespace peripack
