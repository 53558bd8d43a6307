#include "peripack/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace peripack {

namespace {

ConvexPolygon rect(Scalar x0, Scalar y0, Scalar x1, Scalar y1) {
  Point a{x0, y0}, b{x1, y0}, c{x1, y1}, d{x0, y1};
  return ConvexPolygon({std::move(a), std::move(b), std::move(c), std::move(d)});
}

ConvexPolygon poly_as_float(const ConvexPolygon& p) {
  std::vector<Point> vs;
  vs.reserve(p.size());
  for (const Point& v : p.vertices()) vs.push_back({v.x.as_float(), v.y.as_float()});
  return ConvexPolygon(std::move(vs));
}

Body body_as_float(const Body& b) {
  if (const Disk* d = std::get_if<Disk>(&b))
    return Disk{{d->center.x.as_float(), d->center.y.as_float()}, d->radius.as_float()};
  return poly_as_float(std::get<ConvexPolygon>(b));
}

bool axis_aligned_rectangle(const ConvexPolygon& D) {
  if (D.size() != 4) return false;
  for (size_t i = 0; i < 4; ++i) {
    const Vec e = D.edge(i).b - D.edge(i).a;
    if (!e.dx.is_zero() && !e.dy.is_zero()) return false;
  }
  return true;
}

}  // namespace

AllocationStep allocation_step(const std::pair<Scalar, Scalar>& J, const Scalar& xp) {
  const Scalar& lo = J.first;
  const Scalar& hi = J.second;
  const Scalar len = hi - lo;
  if (len.sign() <= 0) throw Error("allocation: empty interval");
  const Scalar eighth = len.div_int(8);
  const Scalar q1 = lo + eighth.mul_int(3);
  const Scalar q2 = lo + eighth.mul_int(5);
  AllocationStep step;
  if (Scalar::compare_value(xp, q1) >= 0 && Scalar::compare_value(xp, q2) <= 0) {
    const Scalar quarter = len.div_int(4);
    step.allocated.push_back({lo, lo + quarter});
    step.allocated.push_back({hi - quarter, hi});
    step.next = {lo + quarter, hi - quarter};
  } else if (Scalar::compare_value(xp, q1) < 0) {
    const Scalar mid = lo + len.div_int(2);
    step.allocated.push_back({mid, hi});
    step.next = {lo, mid};
  } else {
    const Scalar mid = lo + len.div_int(2);
    step.allocated.push_back({lo, mid});
    step.next = {mid, hi};
  }
  return step;
}

namespace {

// Feasible bottom-left corners for an axis-aligned square of side s inside D:
// the container clipped by each edge's worst-corner offset. Returns a point
// of the region (its vertex centroid) when nonempty.
std::optional<std::pair<double, double>> square_position(const ConvexPolygon& D,
                                                         double s) {
  const Box bb = bounding_box(Body(D));
  std::vector<std::pair<double, double>> poly = {
      {bb.lo.x.to_double(), bb.lo.y.to_double()},
      {bb.hi.x.to_double(), bb.lo.y.to_double()},
      {bb.hi.x.to_double(), bb.hi.y.to_double()},
      {bb.lo.x.to_double(), bb.hi.y.to_double()}};
  for (size_t i = 0; i < D.size(); ++i) {
    const Segment e = D.edge(i);
    const Vec ev = e.b - e.a;
    const double nx = -ev.dy.to_double(), ny = ev.dx.to_double();
    const double ax = e.a.x.to_double(), ay = e.a.y.to_double();
    const double off = s * (std::min(nx, 0.0) + std::min(ny, 0.0));
    auto val = [&](const std::pair<double, double>& p) {
      return nx * (p.first - ax) + ny * (p.second - ay) + off;
    };
    std::vector<std::pair<double, double>> out;
    for (size_t j = 0; j < poly.size(); ++j) {
      const auto& P = poly[j];
      const auto& Q = poly[(j + 1) % poly.size()];
      const double vp = val(P), vq = val(Q);
      if (vp >= 0) out.push_back(P);
      if ((vp >= 0) != (vq >= 0)) {
        const double t = vp / (vp - vq);
        out.push_back({P.first + t * (Q.first - P.first),
                       P.second + t * (Q.second - P.second)});
      }
    }
    poly = std::move(out);
    if (poly.empty()) return std::nullopt;
  }
  double cx = 0, cy = 0;
  for (const auto& p : poly) {
    cx += p.first;
    cy += p.second;
  }
  const double m = static_cast<double>(poly.size());
  return std::make_pair(cx / m, cy / m);
}

}  // namespace

PackingDoc gen_grid_translates(const Body& C, const ConvexPolygon& D, size_t n) {
  if (n < 1) throw Error("grid: n must be >= 1");
  Mode m = mode_of(C);
  if (D.vertex(0).x.mode() != m)
    throw Error("grid: body and container must share a scalar mode");
  size_t k = 1;
  while (k * k < n) ++k;

  Body Cw = C;
  ConvexPolygon Dw = D;
  Scalar side = Scalar::zero(m), ux = Scalar::zero(m), uy = Scalar::zero(m);
  if (m == Mode::Exact && axis_aligned_rectangle(D)) {
    const Box bb = bounding_box(Body(D));
    const Scalar w = bb.hi.x - bb.lo.x;
    const Scalar h = bb.hi.y - bb.lo.y;
    side = Scalar::compare_value(w, h) <= 0 ? w : h;
    ux = bb.lo.x + (w - side).div_int(2);
    uy = bb.lo.y + (h - side).div_int(2);
  } else {
    if (m == Mode::Exact) {
      Cw = body_as_float(C);
      Dw = poly_as_float(D);
      m = Mode::Float;
    }
    const Box bb = bounding_box(Body(Dw));
    double hi = std::min(bb.hi.x.to_double() - bb.lo.x.to_double(),
                         bb.hi.y.to_double() - bb.lo.y.to_double());
    double lo = 0;
    double best_s = 0;
    std::pair<double, double> best_pos{0, 0};
    for (int it = 0; it < 60; ++it) {
      const double mid = (lo + hi) / 2;
      if (auto pos = square_position(Dw, mid)) {
        best_s = mid;
        best_pos = *pos;
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (best_s <= 0) throw Error("grid: container admits no square");
    side = Scalar::real(best_s);
    ux = Scalar::real(best_pos.first);
    uy = Scalar::real(best_pos.second);
  }

  const Scalar cell = side.div_int(static_cast<long long>(k));
  const Box cb = bounding_box(Cw);
  const Scalar cw = cb.hi.x - cb.lo.x;
  const Scalar ch = cb.hi.y - cb.lo.y;
  const Scalar span = Scalar::compare_value(cw, ch) >= 0 ? cw : ch;
  const Scalar mu = cell / span;

  std::vector<Body> bodies;
  bodies.reserve(n);
  for (size_t idx = 0; idx < n; ++idx) {
    const long long col = static_cast<long long>(idx % k);
    const long long row = static_cast<long long>(idx / k);
    const Scalar cx = ux + cell.mul_int(col);
    const Scalar cy = uy + cell.mul_int(row);
    const Vec t{cx + (cell - mu * cw).div_int(2) - mu * cb.lo.x,
                cy + (cell - mu * ch).div_int(2) - mu * cb.lo.y};
    bodies.push_back(apply_homothety(Cw, mu, t));
  }
  DocMetadata meta;
  meta.generator = "grid";
  meta.params["n"] = n;
  return PackingDoc(std::move(Dw), std::move(bodies), std::move(Cw), std::move(meta));
}

namespace {

// Disks with denominator q, cached across calls: sweeps regenerate every
// prefix Q and the rational construction dominates otherwise. Copies are
// cheap because scalars share their payloads.
const std::vector<Disk>& ford_block(size_t q) {
  static thread_local std::vector<std::vector<Disk>> cache;
  while (cache.size() < q) {
    const long long qq = static_cast<long long>(cache.size()) + 1;
    std::vector<Disk> block;
    const Scalar r = Scalar::exact_ratio(1, 2 * qq * qq);
    for (long long p = 1; p <= qq; ++p) {
      if (std::gcd(p, qq) != 1) continue;
      block.push_back(Disk{{Scalar::exact_ratio(p, qq), r}, r});
    }
    cache.push_back(std::move(block));
  }
  return cache[q - 1];
}

}  // namespace

PackingDoc gen_ford(unsigned long long Q) {
  if (Q < 1) throw Error("ford: Q must be >= 1");
  if (Q > 100000) throw Error("ford: Q too large");
  std::vector<Body> bodies;
  bodies.reserve(static_cast<size_t>(0.305 * static_cast<double>(Q) * static_cast<double>(Q)) + 16);
  bodies.push_back(Disk{{Scalar::exact(0), Scalar::exact_ratio(1, 2)},
                        Scalar::exact_ratio(1, 2)});
  for (size_t q = 1; q <= Q; ++q)
    for (const Disk& d : ford_block(q)) bodies.emplace_back(d);
  ConvexPolygon container = rect(Scalar::exact_ratio(-1, 2), Scalar::exact(0),
                                 Scalar::exact_ratio(3, 2), Scalar::exact(1));
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "ford";
  meta.params["Q"] = Q;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

PackingDoc gen_apollonian_chain(double r1, double r2, size_t n) {
  if (!(r1 > 0) || !(r2 > 0)) throw Error("apollonian: radii must be positive");
  if (n < 2) throw Error("apollonian: n must be >= 2");

  struct Rec {
    double x, r;
  };
  std::vector<Rec> disks;
  disks.reserve(n);
  disks.push_back({0.0, r1});
  disks.push_back({2.0 * std::sqrt(r1 * r2), r2});

  // Gap between two tangent disks; the candidate radius comes from the
  // additive curvature roots 1/sqrt(r).
  struct Gap {
    double xl, rl, rr, rn;
  };
  auto candidate = [](double rl, double rr) {
    const double s = 1.0 / std::sqrt(rl) + 1.0 / std::sqrt(rr);
    return 1.0 / (s * s);
  };
  auto lower_priority = [](const Gap& a, const Gap& b) {
    if (a.rn != b.rn) return a.rn < b.rn;
    return a.xl > b.xl;  // ties: leftmost gap first
  };
  std::priority_queue<Gap, std::vector<Gap>, decltype(lower_priority)> gaps(lower_priority);
  gaps.push({0.0, r1, r2, candidate(r1, r2)});

  while (disks.size() < n) {
    const Gap g = gaps.top();
    gaps.pop();
    const double x = g.xl + 2.0 * std::sqrt(g.rl * g.rn);
    disks.push_back({x, g.rn});
    gaps.push({g.xl, g.rl, g.rn, candidate(g.rl, g.rn)});
    gaps.push({x, g.rn, g.rr, candidate(g.rn, g.rr)});
  }

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double top = 0;
  for (const Rec& d : disks) {
    xmin = std::min(xmin, d.x - d.r);
    xmax = std::max(xmax, d.x + d.r);
    top = std::max(top, 2.0 * d.r);
  }

  std::vector<Body> bodies;
  bodies.reserve(n);
  for (const Rec& d : disks)
    bodies.push_back(Disk{{Scalar::real(d.x), Scalar::real(d.r)}, Scalar::real(d.r)});
  ConvexPolygon container = rect(Scalar::real(xmin), Scalar::real(0.0),
                                 Scalar::real(xmax), Scalar::real(top));
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "apollonian";
  meta.params["r1"] = r1;
  meta.params["r2"] = r2;
  meta.params["n"] = n;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

namespace {

struct GDisk {
  double x, y, r;
};

// Frames mapping each unit-square side to "v = distance from the side,
// u = coordinate along it".
constexpr int kSides = 4;

std::pair<double, double> side_to_frame(int side, double x, double y) {
  switch (side) {
    case 0: return {x, y};          // bottom
    case 1: return {x, 1.0 - y};    // top
    case 2: return {y, x};          // left
    default: return {y, 1.0 - x};   // right
  }
}

std::pair<double, double> side_from_frame(int side, double u, double v) {
  switch (side) {
    case 0: return {u, v};
    case 1: return {u, 1.0 - v};
    case 2: return {v, u};
    default: return {1.0 - v, u};
  }
}

}  // namespace

PackingDoc gen_greedy_square(size_t n) {
  if (n < 1 || n > 500) throw Error("greedy: n out of range");
  const double kCorner[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

  std::vector<GDisk> placed;
  placed.reserve(n);
  double r_prev = 1.0;

  auto feasible = [&](const GDisk& c) {
    const double pad = 1e-10;
    if (!(c.r > 1e-9)) return false;
    if (c.x < c.r - pad || c.x > 1.0 - c.r + pad) return false;
    if (c.y < c.r - pad || c.y > 1.0 - c.r + pad) return false;
    for (const GDisk& o : placed) {
      const double dx = c.x - o.x, dy = c.y - o.y;
      const double rr = c.r + o.r - pad;
      if (dx * dx + dy * dy < rr * rr) return false;
    }
    return true;
  };

  for (size_t step = 0; step < n; ++step) {
    std::vector<GDisk> cands;

    // Corner disks: center on the corner diagonal, radius capped by the
    // container and by tangency with each obstacle.
    for (const auto& corner : kCorner) {
      double cap = 0.5;
      for (const GDisk& o : placed) {
        const double a = std::abs(o.x - corner[0]);
        const double b = std::abs(o.y - corner[1]);
        const double K = a * a + b * b - o.r * o.r;
        if (K <= 0) {
          cap = 0;
          break;
        }
        const double S = a + b + o.r;
        cap = std::min(cap, S - std::sqrt(S * S - K));
      }
      if (cap > 1e-9) {
        const double sx = corner[0] == 0 ? 1.0 : -1.0;
        const double sy = corner[1] == 0 ? 1.0 : -1.0;
        cands.push_back({corner[0] + sx * cap, corner[1] + sy * cap, cap});
      }
    }

    for (int side = 0; side < kSides; ++side) {
      std::vector<GDisk> near;  // obstacles in frame coordinates
      for (const GDisk& o : placed) {
        const auto [u, v] = side_to_frame(side, o.x, o.y);
        if (v <= 2.0 * r_prev + o.r + 1e-9) near.push_back({u, v, o.r});
      }

      // Tangent to the side, directly under one obstacle.
      for (const GDisk& o : near) {
        const double r = (o.y - o.r) / 2.0;
        if (r > 1e-9) {
          const auto [x, y] = side_from_frame(side, o.x, r);
          cands.push_back({x, y, r});
        }
      }

      // Tangent to the side and to a pair of obstacles.
      for (size_t i = 0; i < near.size(); ++i) {
        for (size_t j = i + 1; j < near.size(); ++j) {
          const GDisk& o1 = near[i];
          const GDisk& o2 = near[j];
          const double du = o1.x - o2.x, dv = o1.y - o2.y;
          const double reach = o1.r + o2.r + 2.0 * r_prev + 1e-9;
          if (du * du + dv * dv > reach * reach) continue;
          const double K1 = o1.x * o1.x + o1.y * o1.y - o1.r * o1.r;
          const double K2 = o2.x * o2.x + o2.y * o2.y - o2.r * o2.r;
          const double B1 = o1.y + o1.r, B2 = o2.y + o2.r;
          auto push = [&](double r, double u) {
            if (r > 1e-9 && r <= r_prev + 1e-9) {
              const auto [x, y] = side_from_frame(side, u, r);
              cands.push_back({x, y, r});
            }
          };
          if (std::abs(o1.x - o2.x) > 1e-13) {
            const double alpha = (K2 - K1) / (2.0 * (o2.x - o1.x));
            const double beta = (B1 - B2) / (o2.x - o1.x);
            const double A = beta * beta;
            const double Bq = 2.0 * beta * (alpha - o1.x) - 2.0 * B1;
            const double Cq = alpha * alpha - 2.0 * o1.x * alpha + K1;
            if (std::abs(A) < 1e-18) {
              if (std::abs(Bq) > 1e-18) push(-Cq / Bq, alpha + beta * (-Cq / Bq));
            } else {
              const double disc = Bq * Bq - 4.0 * A * Cq;
              if (disc >= 0) {
                const double sq = std::sqrt(disc);
                for (const double r : {(-Bq - sq) / (2.0 * A), (-Bq + sq) / (2.0 * A)})
                  push(r, alpha + beta * r);
              }
            }
          } else if (std::abs(B1 - B2) > 1e-15) {
            const double r = (K1 - K2) / (2.0 * (B1 - B2));
            const double disc = o1.x * o1.x - K1 + 2.0 * B1 * r;
            if (disc >= 0) {
              const double sq = std::sqrt(disc);
              push(r, o1.x - sq);
              push(r, o1.x + sq);
            }
          }
        }
      }
    }

    // Tangent to three placed disks (the externally tangent Apollonius
    // solutions). Only triples whose pairwise gaps a disk of the current
    // radius bound could bridge can host a candidate.
    {
      const size_t m = placed.size();
      std::vector<std::vector<size_t>> adj(m);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
          const double dx = placed[i].x - placed[j].x;
          const double dy = placed[i].y - placed[j].y;
          const double reach = placed[i].r + placed[j].r + 2.0 * r_prev + 1e-9;
          if (dx * dx + dy * dy <= reach * reach) adj[i].push_back(j);
        }
      }
      for (size_t i = 0; i < m; ++i) {
        for (size_t ji = 0; ji < adj[i].size(); ++ji) {
          for (size_t ki = ji + 1; ki < adj[i].size(); ++ki) {
            const size_t j = adj[i][ji], k = adj[i][ki];
            if (!std::binary_search(adj[j].begin(), adj[j].end(), k)) continue;
            const GDisk& d1 = placed[i];
            const GDisk& d2 = placed[j];
            const GDisk& d3 = placed[k];
            const double m11 = 2.0 * (d2.x - d1.x), m12 = 2.0 * (d2.y - d1.y);
            const double m21 = 2.0 * (d3.x - d1.x), m22 = 2.0 * (d3.y - d1.y);
            const double det = m11 * m22 - m12 * m21;
            if (std::abs(det) < 1e-12) continue;
            const double u1 = d1.r * d1.r - d2.r * d2.r + d2.x * d2.x +
                              d2.y * d2.y - d1.x * d1.x - d1.y * d1.y;
            const double u2 = d1.r * d1.r - d3.r * d3.r + d3.x * d3.x +
                              d3.y * d3.y - d1.x * d1.x - d1.y * d1.y;
            const double v1 = 2.0 * (d1.r - d2.r);
            const double v2 = 2.0 * (d1.r - d3.r);
            // center = A + B*r
            const double Ax = (u1 * m22 - u2 * m12) / det;
            const double Ay = (m11 * u2 - m21 * u1) / det;
            const double Bx = (v1 * m22 - v2 * m12) / det;
            const double By = (m11 * v2 - m21 * v1) / det;
            const double wx = Ax - d1.x, wy = Ay - d1.y;
            const double qa = Bx * Bx + By * By - 1.0;
            const double qb = 2.0 * (wx * Bx + wy * By) - 2.0 * d1.r;
            const double qc = wx * wx + wy * wy - d1.r * d1.r;
            auto push = [&](double r) {
              if (r > 1e-9 && r <= r_prev + 1e-9)
                cands.push_back({Ax + Bx * r, Ay + By * r, r});
            };
            if (std::abs(qa) < 1e-14) {
              if (std::abs(qb) > 1e-14) push(-qc / qb);
            } else {
              const double disc = qb * qb - 4.0 * qa * qc;
              if (disc >= 0) {
                const double sq = std::sqrt(disc);
                push((-qb - sq) / (2.0 * qa));
                push((-qb + sq) / (2.0 * qa));
              }
            }
          }
        }
      }
    }

    std::sort(cands.begin(), cands.end(), [](const GDisk& a, const GDisk& b) {
      if (a.r != b.r) return a.r > b.r;
      if (a.x != b.x) return a.x < b.x;
      return a.y < b.y;
    });
    const GDisk* chosen = nullptr;
    for (const GDisk& c : cands) {
      if (feasible(c)) {
        chosen = &c;
        break;
      }
    }
    if (!chosen) throw Error("greedy: no feasible disk found");
    placed.push_back(*chosen);
    r_prev = chosen->r;
  }

  std::vector<Body> bodies;
  bodies.reserve(n);
  for (const GDisk& d : placed)
    bodies.push_back(Disk{{Scalar::real(d.x), Scalar::real(d.y)}, Scalar::real(d.r)});
  ConvexPolygon container = rect(Scalar::real(0.0), Scalar::real(0.0),
                                 Scalar::real(1.0), Scalar::real(1.0));
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "greedy";
  meta.params["n"] = n;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

PackingDoc gen_explicit_disks(int K) {
  if (K < 0 || K > 6) throw Error("explicit-disks: K out of range");

  std::vector<Body> bodies;
  {
    size_t total = 1;
    for (int k = 1; k <= K; ++k) total += (1ull << (4 * k)) / 2;
    bodies.reserve(total);
  }
  bodies.push_back(Disk{{Scalar::exact(0), Scalar::exact_ratio(1, 2)},
                        Scalar::exact_ratio(1, 2)});

  std::vector<std::vector<std::pair<Scalar, Scalar>>> pieces(K + 1);
  auto allocate_from = [&](std::pair<Scalar, Scalar> interval, const Scalar& xp,
                           int cls) {
    std::pair<Scalar, Scalar> J = std::move(interval);
    for (int m = 1; cls + m <= K; ++m) {
      AllocationStep step = allocation_step(J, xp);
      for (auto& piece : step.allocated)
        pieces[cls + m].push_back(std::move(piece));
      J = std::move(step.next);
    }
  };
  allocate_from({Scalar::exact_ratio(-1, 2), Scalar::exact_ratio(1, 2)},
                Scalar::exact(0), 0);

  for (int k = 1; k <= K; ++k) {
    std::sort(pieces[k].begin(), pieces[k].end(),
              [](const auto& a, const auto& b) {
                return Scalar::compare_value(a.first, b.first) < 0;
              });
    const long long den = 1ll << (4 * k);  // 16^k
    const Scalar diam = Scalar::exact_ratio(1, den);
    const Scalar rad = Scalar::exact_ratio(1, 2 * den);
    for (const auto& piece : pieces[k]) {
      const Rational count_r = (piece.second - piece.first).rational() * den;
      if (boost::multiprecision::denominator(count_r) != 1)
        throw Error("explicit-disks: interval not tileable");
      const long long count =
          boost::multiprecision::numerator(count_r).convert_to<long long>();
      for (long long i = 0; i < count; ++i) {
        const Scalar lo = piece.first + diam.mul_int(i);
        const Scalar cx = lo + rad;
        bodies.push_back(Disk{{cx, rad}, rad});
        allocate_from({lo, lo + diam}, cx, k);
      }
    }
    pieces[k].clear();
    pieces[k].shrink_to_fit();
  }

  ConvexPolygon container = rect(Scalar::exact_ratio(-1, 2), Scalar::exact(0),
                                 Scalar::exact_ratio(1, 2), Scalar::exact(1));
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "explicit-disks";
  meta.params["K"] = K;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

PackingDoc gen_square_layers(int lambda) {
  if (lambda < 1 || lambda > 6) throw Error("square-layers: lambda out of range");

  // The container grows past the unit square only when the first layer would
  // otherwise sit closer to a lateral side than to the bottom.
  const Rational W = std::max(Rational(1), Rational(1, 4) + Rational(2, lambda));
  const Scalar Ws = Scalar::exact(W);
  const Scalar span_lo = Ws.div_int(2) - Scalar::exact_ratio(1, 8);

  std::vector<Body> bodies;
  long long layer_count = 1;
  for (int j = 1; j <= lambda; ++j) {
    const BigInt pw = layer_count;                      // (2*lambda)^(j-1)
    const Scalar side = Scalar::exact(Rational(1, pw * 4));
    BigInt hden = 1;
    for (int i = 0; i < j - 1; ++i) hden *= 2;
    for (int i = 0; i < j; ++i) hden *= lambda;
    const Scalar h = Scalar::exact(Rational(1, hden));  // 1/(2^(j-1)*lambda^j)
    for (long long i = 0; i < layer_count; ++i) {
      const Scalar x = span_lo + side.mul_int(i);
      bodies.push_back(ConvexPolygon({{x, h},
                                      {x + side, h},
                                      {x + side, h + side},
                                      {x, h + side}}));
    }
    layer_count *= 2 * lambda;
  }

  ConvexPolygon container = rect(Scalar::exact(0), Scalar::exact(0), Ws, Ws);
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "square-layers";
  meta.params["lambda"] = lambda;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

PackingDoc gen_layers_general(const ConvexPolygon& C, const ConvexPolygon& D,
                              size_t a_index, int lambda) {
  if (a_index >= D.size()) throw Error("layers-general: invalid edge index");
  if (lambda < 1 || lambda > 6) throw Error("layers-general: lambda out of range");
  Mode m = D.vertex(0).x.mode();
  if (mode_of(Body(C)) != m)
    throw Error("layers-general: body and container must share a scalar mode");

  ConvexPolygon Cw = C;
  ConvexPolygon Dw = D;
  {
    const Vec av = D.edge(a_index).b - D.edge(a_index).a;
    const bool axis = av.dx.is_zero() || av.dy.is_zero();
    const bool exact_path = m == Mode::Exact && axis && axis_aligned_rectangle(D);
    if (m == Mode::Exact && !exact_path) {
      Cw = poly_as_float(C);
      Dw = poly_as_float(D);
      m = Mode::Float;
    }
  }

  const Segment ae = Dw.edge(a_index);
  const Vec aev = ae.b - ae.a;
  const Scalar alen = edge_length(ae);
  const Scalar ux = m == Mode::Exact ? aev.dx / alen
                                     : Scalar::real(aev.dx.to_double() / alen.to_double());
  const Scalar uy = m == Mode::Exact ? aev.dy / alen
                                     : Scalar::real(aev.dy.to_double() / alen.to_double());
  auto to_frame = [&](const Point& p) -> Point {
    const Vec w = p - ae.a;
    return {w.dx * ux + w.dy * uy, ux * w.dy - uy * w.dx};
  };
  auto from_frame = [&](const Scalar& fx, const Scalar& fy) -> Point {
    return {ae.a.x + ux * fx - uy * fy, ae.a.y + uy * fx + ux * fy};
  };

  std::vector<Point> frame_verts;
  frame_verts.reserve(Dw.size());
  for (const Point& v : Dw.vertices()) frame_verts.push_back(to_frame(v));
  const ConvexPolygon Df(std::move(frame_verts));

  // U(a): maximal square with its bottom side on a.
  Scalar u_side = Scalar::zero(m), u_left = Scalar::zero(m);
  if (m == Mode::Exact) {
    const Box bb = bounding_box(Body(Df));
    const Scalar w = bb.hi.x - bb.lo.x;
    const Scalar h = bb.hi.y - bb.lo.y;
    u_side = Scalar::compare_value(w, h) <= 0 ? w : h;
    u_left = bb.lo.x + (w - u_side).div_int(2);
  } else {
    // one-dimensional feasibility in the offset t of the square's left edge
    auto t_range = [&](double s) -> std::optional<std::pair<double, double>> {
      double tlo = -std::numeric_limits<double>::infinity();
      double thi = std::numeric_limits<double>::infinity();
      const double corners[4][2] = {{0, 0}, {s, 0}, {s, s}, {0, s}};
      for (size_t i = 0; i < Df.size(); ++i) {
        const Segment e = Df.edge(i);
        const double ex = e.a.x.to_double(), ey = e.a.y.to_double();
        const double vx = (e.b.x - e.a.x).to_double(), vy = (e.b.y - e.a.y).to_double();
        for (const auto& c : corners) {
          // vx*(cy - ey) - vy*(t + cx - ex) >= 0, linear in t
          const double c0 = vx * (c[1] - ey) - vy * (c[0] - ex);
          if (vy > 0) thi = std::min(thi, c0 / vy);
          else if (vy < 0) tlo = std::max(tlo, c0 / vy);
          else if (c0 < 0) return std::nullopt;
        }
      }
      if (tlo > thi) return std::nullopt;
      return std::make_pair(tlo, thi);
    };
    const Box bb = bounding_box(Body(Df));
    double shi = std::min(alen.to_double(), bb.hi.y.to_double());
    double slo = 0, best_s = 0, best_t = 0;
    for (int it = 0; it < 60; ++it) {
      const double mid = (slo + shi) / 2;
      if (auto range = t_range(mid)) {
        best_s = mid;
        best_t = (range->first + range->second) / 2;
        slo = mid;
      } else {
        shi = mid;
      }
    }
    if (best_s <= 0) throw Error("layers-general: edge admits no square");
    u_side = Scalar::real(best_s);
    u_left = Scalar::real(best_t);
  }

  const PackingDoc layers = gen_square_layers(lambda);
  const Box layer_bb = bounding_box(Body(layers.container()));
  const Scalar W = layer_bb.hi.x - layer_bb.lo.x;
  const Scalar mu_map = m == Mode::Exact ? u_side / W
                                         : u_side / Scalar::real(W.to_double());

  std::vector<Point> c_frame_verts;
  c_frame_verts.reserve(Cw.size());
  for (const Point& v : Cw.vertices()) c_frame_verts.push_back(to_frame(v));
  const ConvexPolygon Cf(std::move(c_frame_verts));
  const Box cb = bounding_box(Body(Cf));
  const Scalar cw = cb.hi.x - cb.lo.x;
  const Scalar ch = cb.hi.y - cb.lo.y;
  const Scalar sigma = Scalar::compare_value(cw, ch) >= 0 ? cw : ch;

  std::vector<Body> bodies;
  bodies.reserve(layers.size());
  for (const Body& sq : layers.bodies()) {
    Box sb = bounding_box(sq);
    Scalar sx = sb.lo.x, sy = sb.lo.y, st = sb.hi.x - sb.lo.x;
    if (m == Mode::Float) {
      sx = sx.as_float();
      sy = sy.as_float();
      st = st.as_float();
    }
    const Scalar fx = u_left + sx * mu_map;  // frame bottom-left of U_i
    const Scalar fy = sy * mu_map;
    const Scalar fs = st * mu_map;           // side of U_i
    const Scalar mu = fs / sigma;
    const Scalar tx = fx + (fs - mu * cw).div_int(2) - mu * cb.lo.x;
    const Scalar ty = fy - mu * cb.lo.y;
    std::vector<Point> verts;
    verts.reserve(Cf.size());
    for (const Point& v : Cf.vertices())
      verts.push_back(from_frame(v.x * mu + tx, v.y * mu + ty));
    bodies.push_back(ConvexPolygon(std::move(verts)));
  }

  Body ref = Cw;
  DocMetadata meta;
  meta.generator = "layers-general";
  meta.params["a_index"] = a_index;
  meta.params["lambda"] = lambda;
  return PackingDoc(std::move(Dw), std::move(bodies), std::move(ref), std::move(meta));
}

PackingDoc gen_sloped_squares(double s, int depth) {
  if (!(s > 0) || s > 1) throw Error("sloped-squares: slope must be in (0, 1]");
  if (depth < 0 || depth > 12) throw Error("sloped-squares: depth out of range");
  const long long tiles = static_cast<long long>(std::ceil(1.0 / s - 1e-12));
  if (std::pow(static_cast<double>(tiles + 1), depth) > 1.0e6)
    throw Error("sloped-squares: body count cap exceeded");

  // A square is stored by its projection [x, xr]; it touches the hypotenuse
  // y = s*x at its top-left corner.
  struct Sq {
    double x, xr;
  };
  std::vector<std::vector<Sq>> classes(static_cast<size_t>(depth) + 1);
  classes[0].push_back({1.0 / (1.0 + s), 1.0});

  for (int w = 0; w <= depth; ++w) {
    for (size_t qi = 0; qi < classes[w].size(); ++qi) {
      const Sq q = classes[w][qi];
      const double len = q.xr - q.x;
      const double parent_top = s * q.x;
      double e_prev = q.xr;  // right endpoint of the current class interval
      for (int k = 1; w + k <= depth; ++k) {
        const double ek = q.x + std::ldexp(len, -k);
        const double wt = (e_prev - ek) / static_cast<double>(tiles);
        for (long long i = 0; i < tiles; ++i) {
          const double xl = i == 0 ? ek : ek + static_cast<double>(i) * wt;
          double xr = i == tiles - 1 ? e_prev : ek + static_cast<double>(i + 1) * wt;
          // By construction the tile's bottom clears the parent's top; shrink
          // defensively if floating error ever says otherwise.
          int retries = 0;
          while (retries < 3 && s * xl - (xr - xl) < parent_top - 1e-9 * (xr - xl))
            xr = xl + (xr - xl) / 2, ++retries;
          if (s * xl - (xr - xl) < parent_top - 1e-9 * (xr - xl)) continue;
          classes[w + k].push_back({xl, xr});
        }
        e_prev = ek;
      }
    }
  }

  std::vector<Body> bodies;
  std::vector<size_t> class_count;
  std::vector<double> class_perimeter;
  for (const auto& cls : classes) {
    class_count.push_back(cls.size());
    double per = 0;
    for (const Sq& q : cls) {
      const double side = q.xr - q.x;
      const double top = s * q.x;
      per += 4.0 * side;
      bodies.push_back(ConvexPolygon({{Scalar::real(q.x), Scalar::real(top - side)},
                                      {Scalar::real(q.xr), Scalar::real(top - side)},
                                      {Scalar::real(q.xr), Scalar::real(top)},
                                      {Scalar::real(q.x), Scalar::real(top)}}));
    }
    class_perimeter.push_back(per);
  }

  ConvexPolygon container({{Scalar::real(0.0), Scalar::real(0.0)},
                           {Scalar::real(1.0), Scalar::real(0.0)},
                           {Scalar::real(1.0), Scalar::real(s)}});
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "sloped-squares";
  meta.params["s"] = s;
  meta.params["depth"] = depth;
  meta.params["class_count"] = class_count;
  meta.params["class_perimeter"] = class_perimeter;
  return PackingDoc(std::move(container), std::move(bodies), std::move(ref),
                    std::move(meta));
}

}  // namespace peripack
