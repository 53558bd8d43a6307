#include "peripack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "peripack/json_io.hpp"

namespace peripack {

namespace {

double doc_eps(const PackingDoc& doc) {
  if (doc.mode() == Mode::Exact) return 0.0;
  return doc.container().vertex(0).x.eps();
}

double body_size(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b)) return d->radius.to_double();
  const Box box = bounding_box(b);
  return std::max(box.hi.x.to_double() - box.lo.x.to_double(),
                  box.hi.y.to_double() - box.lo.y.to_double());
}

struct ContainerEdge {
  Segment seg;
  Vec ev;        // b - a
  double ax, ay, dx, dy, len;
};

std::vector<ContainerEdge> container_edges(const ConvexPolygon& D) {
  std::vector<ContainerEdge> edges;
  edges.reserve(D.size());
  for (size_t i = 0; i < D.size(); ++i) {
    const Segment s = D.edge(i);
    const Vec v = s.b - s.a;
    const double dx = v.dx.to_double(), dy = v.dy.to_double();
    edges.push_back({s, v, s.a.x.to_double(), s.a.y.to_double(), dx, dy,
                     std::hypot(dx, dy)});
  }
  return edges;
}

// Signed distance of p from the edge line in doubles, positive on the inside.
double inside_distance(const ContainerEdge& e, double px, double py) {
  return (e.dx * (py - e.ay) - e.dy * (px - e.ax)) / e.len;
}

struct ContainmentIssue {
  size_t edge;
  double depth;
};

std::optional<ContainmentIssue> containment_issue(const Body& b,
                                                  const std::vector<ContainerEdge>& edges,
                                                  bool exact, double eps) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    const double r = d->radius.to_double();
    const double cx = d->center.x.to_double(), cy = d->center.y.to_double();
    for (size_t i = 0; i < edges.size(); ++i) {
      if (exact) {
        const Scalar cr = cross(edges[i].ev, d->center - edges[i].seg.a);
        bool ok = cr.sign() >= 0;
        if (ok) {
          const Scalar len2 = dot(edges[i].ev, edges[i].ev);
          ok = Scalar::compare_value(cr * cr, d->radius * d->radius * len2) >= 0;
        }
        if (!ok) return ContainmentIssue{i, r - inside_distance(edges[i], cx, cy)};
      } else {
        const double depth = r - inside_distance(edges[i], cx, cy);
        if (depth > eps * std::max(1.0, r)) return ContainmentIssue{i, depth};
      }
    }
    return std::nullopt;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  for (size_t i = 0; i < edges.size(); ++i) {
    for (const Point& v : poly.vertices()) {
      if (exact) {
        const Scalar cr = cross(edges[i].ev, v - edges[i].seg.a);
        if (cr.sign() < 0)
          return ContainmentIssue{i, -inside_distance(edges[i], v.x.to_double(),
                                                      v.y.to_double())};
      } else {
        const double sd = inside_distance(edges[i], v.x.to_double(), v.y.to_double());
        if (-sd > eps * std::max(1.0, std::abs(sd))) return ContainmentIssue{i, -sd};
      }
    }
  }
  return std::nullopt;
}

// Largest violation of one polygon against the other's edge half-planes:
// <= 0 means some edge of `a` separates. Returns the most separating axis gap
// in distance units (positive = overlap depth on every axis of `a`).
std::optional<double> sat_overlap(const ConvexPolygon& a, const ConvexPolygon& b,
                                  bool exact) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.size(); ++i) {
    const Segment e = a.edge(i);
    const Vec ev = e.b - e.a;
    if (exact) {
      std::optional<Scalar> maxcr;
      for (const Point& v : b.vertices()) {
        Scalar cr = cross(ev, v - e.a);
        if (!maxcr || Scalar::compare_value(cr, *maxcr) > 0) maxcr = std::move(cr);
      }
      if (maxcr->sign() <= 0) return std::nullopt;  // separated by this edge
      const double len = std::hypot(ev.dx.to_double(), ev.dy.to_double());
      best = std::min(best, maxcr->to_double() / len);
    } else {
      const double ax = e.a.x.to_double(), ay = e.a.y.to_double();
      const double dx = ev.dx.to_double(), dy = ev.dy.to_double();
      double maxcr = -std::numeric_limits<double>::infinity();
      for (const Point& v : b.vertices())
        maxcr = std::max(maxcr, dx * (v.y.to_double() - ay) - dy * (v.x.to_double() - ax));
      best = std::min(best, maxcr / std::hypot(dx, dy));
    }
  }
  return best;
}

// Penetration depth (> 0) when interiors overlap beyond tolerance, nullopt
// when the pair is acceptably disjoint.
std::optional<double> pair_penetration(const Body& A, const Body& B, bool exact,
                                       double tol) {
  const Disk* da = std::get_if<Disk>(&A);
  const Disk* db = std::get_if<Disk>(&B);
  if (da && db) {
    const Vec d = db->center - da->center;
    const Scalar d2 = dot(d, d);
    const Scalar s = da->radius + db->radius;
    if (exact) {
      if (Scalar::compare_value(d2, s * s) >= 0) return std::nullopt;
      return s.to_double() - std::sqrt(d2.to_double());
    }
    const double pen = s.to_double() - std::sqrt(d2.to_double());
    if (pen <= tol) return std::nullopt;
    return pen;
  }
  if (da || db) {
    const Disk& disk = da ? *da : *db;
    const auto& poly = std::get<ConvexPolygon>(da ? B : A);
    const double r = disk.radius.to_double();
    bool center_inside = true;
    double min_sd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.size() && center_inside; ++i) {
      const Segment e = poly.edge(i);
      const Vec ev = e.b - e.a;
      const Scalar cr = cross(ev, disk.center - e.a);
      if (cr.sign() <= 0) center_inside = false;
      min_sd = std::min(min_sd, cr.to_double() /
                                    std::hypot(ev.dx.to_double(), ev.dy.to_double()));
    }
    if (center_inside) return r + std::max(0.0, min_sd);
    std::optional<Scalar> d2min;
    for (size_t i = 0; i < poly.size(); ++i) {
      Scalar d2 = point_segment_distance_sq(disk.center, poly.edge(i));
      if (!d2min || Scalar::compare_value(d2, *d2min) < 0) d2min = std::move(d2);
    }
    if (exact) {
      if (Scalar::compare_value(*d2min, disk.radius * disk.radius) >= 0)
        return std::nullopt;
      return r - std::sqrt(d2min->to_double());
    }
    const double pen = r - std::sqrt(d2min->to_double());
    if (pen <= tol) return std::nullopt;
    return pen;
  }
  const auto& pa = std::get<ConvexPolygon>(A);
  const auto& pb = std::get<ConvexPolygon>(B);
  const auto o1 = sat_overlap(pa, pb, exact);
  if (!o1) return std::nullopt;
  const auto o2 = sat_overlap(pb, pa, exact);
  if (!o2) return std::nullopt;
  const double pen = std::min(*o1, *o2);
  if (pen <= tol) return std::nullopt;
  return pen;
}

// Distance from the body to the line of a container edge, clamped at 0; the
// body is assumed inside, so no validity check here.
Scalar edge_gap(const Body& b, const Segment& e) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    const Scalar sd = signed_line_distance(d->center, e);
    Scalar gap = sd - (sd.is_exact() ? d->radius : d->radius.as_float());
    if (Scalar::compare_value(gap, Scalar::zero(gap.mode())) < 0)
      return Scalar::zero(gap.mode());
    return gap;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  std::optional<Scalar> best;
  for (const Point& v : poly.vertices()) {
    Scalar sd = signed_line_distance(v, e);
    if (Scalar::compare_value(sd, Scalar::zero(sd.mode())) < 0)
      sd = Scalar::zero(sd.mode());
    if (!best || Scalar::compare_value(sd, *best) < 0) best = std::move(sd);
  }
  return *best;
}

bool inside_container(const Body& b, const ConvexPolygon& D) {
  if (const Disk* d = std::get_if<Disk>(&b)) {
    for (size_t i = 0; i < D.size(); ++i) {
      const Scalar sd = signed_line_distance(d->center, D.edge(i));
      if (sd.lt(sd.is_exact() ? d->radius : d->radius.as_float())) return false;
    }
    return true;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  for (const Point& v : poly.vertices())
    if (!polygon_contains_point(D, v)) return false;
  return true;
}

}  // namespace

OrderedJson VerificationReport::to_json() const {
  OrderedJson j;
  j["pass"] = summary;
  OrderedJson arr = OrderedJson::array();
  for (const CheckResult& c : checks) {
    OrderedJson cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["witness"] = c.witness.is_null() ? OrderedJson() : c.witness;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j;
}

VerificationReport verify_packing(const PackingDoc& doc,
                                  bool require_boundary_contact) {
  const bool exact = doc.mode() == Mode::Exact;
  const double eps = doc_eps(doc);
  const auto edges = container_edges(doc.container());
  const size_t n = doc.size();

  VerificationReport report;

  CheckResult containment{"containment", true, OrderedJson()};
  size_t containment_failures = 0;
  std::vector<char> contained(n, 1);
  for (size_t i = 0; i < n; ++i) {
    if (auto issue = containment_issue(doc.bodies()[i], edges, exact, eps)) {
      contained[i] = 0;
      ++containment_failures;
      if (containment.pass) {
        containment.pass = false;
        containment.witness = {{"body", i},
                               {"container_edge", issue->edge},
                               {"depth", issue->depth}};
      }
    }
  }
  if (!containment.pass) containment.witness["violations"] = containment_failures;
  report.checks.push_back(std::move(containment));

  // Sweep over bounding boxes sorted by xmin; only x-overlapping pairs are
  // tested, with a small pad so borderline boxes are never skipped.
  CheckResult disjoint{"interior_disjoint", true, OrderedJson()};
  {
    struct Aux {
      double xmin, xmax, ymin, ymax, size;
    };
    std::vector<Aux> aux(n);
    double scale = 1.0;
    for (size_t i = 0; i < n; ++i) {
      const Box b = bounding_box(doc.bodies()[i]);
      aux[i] = {b.lo.x.to_double(), b.hi.x.to_double(), b.lo.y.to_double(),
                b.hi.y.to_double(), body_size(doc.bodies()[i])};
      scale = std::max({scale, std::abs(aux[i].xmin), std::abs(aux[i].xmax),
                        std::abs(aux[i].ymin), std::abs(aux[i].ymax)});
    }
    const double pad = std::max(eps * 4.0, 1e-12) * scale;

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (aux[a].xmin != aux[b].xmin) return aux[a].xmin < aux[b].xmin;
      return a < b;
    });

    size_t violations = 0;
    std::pair<size_t, size_t> first_pair{0, 0};
    double first_pen = 0;
    std::vector<size_t> active;
    for (size_t oi = 0; oi < n; ++oi) {
      const size_t i = order[oi];
      std::erase_if(active, [&](size_t j) { return aux[j].xmax < aux[i].xmin - pad; });
      for (size_t j : active) {
        if (aux[j].ymin > aux[i].ymax + pad || aux[j].ymax < aux[i].ymin - pad)
          continue;
        // Floored at a few ulps of the document scale: tangencies between
        // tiny bodies still carry rounding noise of the full coordinates.
        const double tol = std::max(eps * std::min(aux[i].size, aux[j].size),
                                    16 * std::numeric_limits<double>::epsilon() * scale);
        if (auto pen = pair_penetration(doc.bodies()[i], doc.bodies()[j], exact, tol)) {
          ++violations;
          const std::pair<size_t, size_t> key{std::min(i, j), std::max(i, j)};
          if (violations == 1 || key < first_pair) {
            first_pair = key;
            first_pen = *pen;
          }
        }
      }
      active.push_back(i);
    }
    if (violations > 0) {
      disjoint.pass = false;
      disjoint.witness = {{"body_a", first_pair.first},
                          {"body_b", first_pair.second},
                          {"penetration", first_pen},
                          {"violations", violations}};
    }
  }
  report.checks.push_back(std::move(disjoint));

  if (require_boundary_contact) {
    CheckResult contact{"boundary_contact", true, OrderedJson()};
    size_t violations = 0;
    for (size_t i = 0; i < n; ++i) {
      if (!contained[i]) continue;  // already reported above
      std::optional<Scalar> esc;
      for (const ContainerEdge& e : edges) {
        Scalar g = edge_gap(doc.bodies()[i], e.seg);
        if (!esc || Scalar::compare_value(g, *esc) < 0) esc = std::move(g);
      }
      if (!esc->is_zero()) {
        ++violations;
        if (contact.pass) {
          contact.pass = false;
          contact.witness = {{"body", i}, {"escape", scalar_to_json(*esc)}};
        }
      }
    }
    if (!contact.pass) contact.witness["violations"] = violations;
    report.checks.push_back(std::move(contact));
  }

  report.summary = std::all_of(report.checks.begin(), report.checks.end(),
                               [](const CheckResult& c) { return c.pass; });
  return report;
}

bool is_parallel(const ConvexPolygon& D, const Body& C) {
  if (std::holds_alternative<Disk>(C)) return false;
  const auto& poly = std::get<ConvexPolygon>(C);
  const bool exact = D.vertex(0).x.is_exact() && poly.vertex(0).x.is_exact();
  const double eps = exact ? 0.0
                           : std::max(D.vertex(0).x.is_exact() ? 0.0 : D.vertex(0).x.eps(),
                                      poly.vertex(0).x.is_exact() ? 0.0 : poly.vertex(0).x.eps());
  for (size_t i = 0; i < D.size(); ++i) {
    const Segment de = D.edge(i);
    const Vec dv = de.b - de.a;
    bool found = false;
    for (size_t j = 0; j < poly.size() && !found; ++j) {
      const Segment ce = poly.edge(j);
      const Vec cv = ce.b - ce.a;
      if (exact) {
        found = cross(dv, cv).is_zero() && dot(dv, cv).sign() > 0;
      } else {
        const double ddx = dv.dx.to_double(), ddy = dv.dy.to_double();
        const double cdx = cv.dx.to_double(), cdy = cv.dy.to_double();
        const double cr = ddx * cdy - ddy * cdx;
        const double dp = ddx * cdx + ddy * cdy;
        found = std::abs(cr) <= eps * std::hypot(ddx, ddy) * std::hypot(cdx, cdy) &&
                dp > 0;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Scalar> container_edge_gaps(const Body& b, const ConvexPolygon& container) {
  if (!inside_container(b, container))
    throw Error("escape_distance: body not inside container");
  std::vector<Scalar> gaps;
  gaps.reserve(container.size());
  for (size_t i = 0; i < container.size(); ++i)
    gaps.push_back(edge_gap(b, container.edge(i)));
  return gaps;
}

Scalar escape_distance(const Body& b, const ConvexPolygon& container) {
  std::vector<Scalar> gaps = container_edge_gaps(b, container);
  size_t best = 0;
  for (size_t i = 1; i < gaps.size(); ++i)
    if (Scalar::compare_value(gaps[i], gaps[best]) < 0) best = i;
  return std::move(gaps[best]);
}

OrderedJson Metrics::to_json() const {
  OrderedJson j;
  j["n"] = n;
  j["total_perimeter"] = scalar_to_json(total_perimeter);
  if (perimeter_pi_coefficient)
    j["perimeter_pi_coefficient"] = scalar_to_json(*perimeter_pi_coefficient);
  j["total_escape"] = scalar_to_json(total_escape);
  OrderedJson arr = OrderedJson::array();
  for (const BodyMeasure& m : per_body) {
    OrderedJson mj;
    mj["perimeter"] = scalar_to_json(m.perimeter);
    mj["escape"] = scalar_to_json(m.escape);
    arr.push_back(std::move(mj));
  }
  j["per_body"] = std::move(arr);
  return j;
}

Metrics packing_metrics(const PackingDoc& doc) {
  Metrics m;
  m.n = doc.size();
  m.per_body.reserve(m.n);
  bool all_disks = !doc.bodies().empty();
  for (const Body& b : doc.bodies()) {
    if (!std::holds_alternative<Disk>(b)) all_disks = false;
    Scalar per = perimeter(b);
    Scalar esc = escape_distance(b, doc.container());
    m.per_body.push_back({std::move(per), std::move(esc)});
  }

  auto total = [&](auto&& field) {
    bool exact_sum = true;
    for (const BodyMeasure& bm : m.per_body) exact_sum = exact_sum && field(bm).is_exact();
    if (exact_sum && doc.mode() == Mode::Exact) {
      Scalar t = Scalar::exact(0);
      for (const BodyMeasure& bm : m.per_body) t += field(bm);
      return t;
    }
    double t = 0;
    for (const BodyMeasure& bm : m.per_body) t += field(bm).to_double();
    return Scalar::real(t);
  };
  m.total_perimeter = total([](const BodyMeasure& bm) -> const Scalar& { return bm.perimeter; });
  m.total_escape = total([](const BodyMeasure& bm) -> const Scalar& { return bm.escape; });

  if (all_disks) {
    Scalar coeff = Scalar::zero(doc.mode());
    for (const Body& b : doc.bodies()) coeff += *perimeter_pi_coefficient(b);
    m.perimeter_pi_coefficient = std::move(coeff);
  }
  return m;
}

OrderedJson DyadicCertificate::to_json() const {
  OrderedJson j;
  j["per_container"] = per_container;
  OrderedJson arr = OrderedJson::array();
  for (const CertificateRow& r : rows) {
    OrderedJson rj;
    rj["k"] = r.k;
    rj["count"] = r.count;
    rj["bound"] = r.bound;
    rj["class_perimeter"] = r.class_perimeter;
    arr.push_back(std::move(rj));
  }
  j["rows"] = std::move(arr);
  j["leftover_count"] = leftover_count;
  return j;
}

DyadicCertificate dyadic_certificate(const PackingDoc& doc) {
  if (!doc.reference())
    throw Error("dyadic_certificate: document has no reference body");
  if (doc.size() == 0) throw Error("dyadic_certificate: empty packing");

  const double per_c = perimeter(*doc.reference()).to_double();
  const double area_c = area(*doc.reference()).to_double();
  const double shape_ratio = per_c * per_c / area_c;

  DyadicCertificate cert;
  const Scalar per_d = perimeter(Body(doc.container()));
  cert.per_container = per_d.to_double();
  const int levels = ceil_log2(doc.size());
  cert.rows.resize(levels);
  for (int k = 1; k <= levels; ++k) {
    cert.rows[k - 1].k = k;
    cert.rows[k - 1].bound = shape_ratio * std::pow(2.0, k);
  }

  for (const Body& b : doc.bodies()) {
    const Scalar per_b = perimeter(b);
    int k;
    if (per_b.is_exact() && per_d.is_exact()) {
      // per(D)/2^k < per_b <= per(D)/2^(k-1), decided in rational arithmetic.
      Rational scaled = per_b.rational();
      k = 1;
      while (k <= levels && scaled * 2 <= per_d.rational()) {
        scaled *= 2;
        ++k;
      }
    } else {
      const double t = cert.per_container / per_b.to_double();
      k = t < 1.0 ? 1 : static_cast<int>(std::floor(std::log2(t))) + 1;
    }
    if (k > levels) {
      ++cert.leftover_count;
    } else {
      ++cert.rows[k - 1].count;
      cert.rows[k - 1].class_perimeter += per_b.to_double();
    }
  }
  return cert;
}

Segment middle_half(const Segment& s) {
  const Vec v = s.b - s.a;
  return {s.a + Vec{v.dx.div_int(4), v.dy.div_int(4)},
          s.a + Vec{v.dx.mul_int(3).div_int(4), v.dy.mul_int(3).div_int(4)}};
}

}  // namespace peripack
