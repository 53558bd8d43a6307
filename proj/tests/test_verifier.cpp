#include <doctest.h>

#include <peripack/generators.hpp>
#include <peripack/verifier.hpp>

#include <cmath>
#include <random>

using namespace peripack;

namespace {

Point ep(long long xn, long long xd, long long yn, long long yd) {
  return {Scalar::exact_ratio(xn, xd), Scalar::exact_ratio(yn, yd)};
}

Point fp(double x, double y) { return {Scalar::real(x), Scalar::real(y)}; }

ConvexPolygon square(long long lo, long long hi) {
  return ConvexPolygon({ep(lo, 1, lo, 1), ep(hi, 1, lo, 1), ep(hi, 1, hi, 1),
                        ep(lo, 1, hi, 1)});
}

PackingDoc float_disks(std::vector<Disk> disks, double side) {
  ConvexPolygon box({fp(0, 0), fp(side, 0), fp(side, side), fp(0, side)});
  std::vector<Body> bodies(disks.begin(), disks.end());
  return PackingDoc(box, std::move(bodies), std::nullopt,
                    {"manual", OrderedJson::object()});
}

}  // namespace

TEST_CASE("separated disks pass, near-tangent disks pass, overlap fails") {
  // two unit disks one unit apart (gap between boundaries: none - they overlap)
  PackingDoc overlap = float_disks({{fp(3, 3), Scalar::real(1)}, {fp(4, 3), Scalar::real(1)}}, 10);
  VerificationReport rep = verify_packing(overlap);
  CHECK(!rep.summary);
  bool found_witness = false;
  for (auto& c : rep.checks)
    if (c.name == "interior_disjoint" && !c.pass) {
      found_witness = true;
      CHECK(c.witness["penetration"].get<double>() == doctest::Approx(1.0));
    }
  CHECK(found_witness);

  // centers 3 apart: disjoint with unit gap
  PackingDoc apart = float_disks({{fp(3, 3), Scalar::real(1)}, {fp(6, 3), Scalar::real(1)}}, 10);
  CHECK(verify_packing(apart).summary);

  // exact tangency passes (interiors disjoint)
  PackingDoc tangent = float_disks({{fp(3, 3), Scalar::real(1)}, {fp(5, 3), Scalar::real(1)}}, 10);
  CHECK(verify_packing(tangent).summary);
}

TEST_CASE("containment violations are caught with a witness") {
  PackingDoc poking = float_disks({{fp(0.5, 0.5), Scalar::real(1)}}, 1);
  VerificationReport rep = verify_packing(poking);
  CHECK(!rep.summary);
  bool saw = false;
  for (auto& c : rep.checks)
    if (c.name == "containment" && !c.pass) saw = true;
  CHECK(saw);
}

TEST_CASE("exact mode decides tangency with zero tolerance") {
  // tangent disks, then pushed together by 1/10^12: exact mode must fail it
  ConvexPolygon box = square(0, 10);
  Scalar r = Scalar::exact(1);
  Body a(Disk{ep(3, 1, 3, 1), r});
  Body b(Disk{ep(5, 1, 3, 1), r});
  PackingDoc tangent(box, {a, b}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK(verify_packing(tangent).summary);

  Scalar nudged_x = Scalar::exact(5) - Scalar::exact_ratio(1, 1000000000000LL);
  Body b2(Disk{{nudged_x, Scalar::exact(3)}, r});
  PackingDoc nudged(box, {a, b2}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK(!verify_packing(nudged).summary);
}

TEST_CASE("float mode forgives penetration below eps and flags above") {
  PackingDoc small_pen = float_disks(
      {{fp(3, 3), Scalar::real(1)}, {fp(5 - 1e-12, 3), Scalar::real(1)}}, 10);
  CHECK(verify_packing(small_pen).summary);

  PackingDoc big_pen = float_disks(
      {{fp(3, 3), Scalar::real(1)}, {fp(5 - 1e-6, 3), Scalar::real(1)}}, 10);
  CHECK(!verify_packing(big_pen).summary);
}

TEST_CASE("polygon pairs use separating axes") {
  ConvexPolygon box = square(0, 10);
  Body s1(square(1, 3));
  Body s2(square(3, 5));   // shares a corner: interiors disjoint
  Body s3(ConvexPolygon({ep(2, 1, 2, 1), ep(4, 1, 2, 1), ep(4, 1, 4, 1), ep(2, 1, 4, 1)}));
  PackingDoc touch(box, {s1, s2}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK(verify_packing(touch).summary);
  PackingDoc cross(box, {s1, s3}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK(!verify_packing(cross).summary);
}

TEST_CASE("disk against polygon") {
  ConvexPolygon box = square(0, 10);
  Body sq(square(4, 6));
  Body far_disk(Disk{ep(2, 1, 2, 1), Scalar::exact(1)});
  Body tangent_disk(Disk{ep(3, 1, 5, 1), Scalar::exact(1)});
  Body deep_disk(Disk{ep(4, 1, 5, 1), Scalar::exact(1)});
  CHECK(verify_packing(PackingDoc(box, {sq, far_disk}, std::nullopt,
                                  {"manual", OrderedJson::object()})).summary);
  CHECK(verify_packing(PackingDoc(box, {sq, tangent_disk}, std::nullopt,
                                  {"manual", OrderedJson::object()})).summary);
  CHECK(!verify_packing(PackingDoc(box, {sq, deep_disk}, std::nullopt,
                                   {"manual", OrderedJson::object()})).summary);
}

TEST_CASE("boundary contact requirement") {
  ConvexPolygon box = square(0, 6);
  Body touching(Disk{ep(1, 1, 1, 1), Scalar::exact(1)});
  Body floating(Disk{ep(4, 1, 3, 1), Scalar::exact(1)});
  PackingDoc doc(box, {touching, floating}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK(verify_packing(doc, false).summary);
  VerificationReport rep = verify_packing(doc, true);
  CHECK(!rep.summary);
  bool saw = false;
  for (auto& c : rep.checks)
    if (c.name == "boundary_contact" && !c.pass) {
      saw = true;
      CHECK(c.witness["body"].get<int>() == 1);
    }
  CHECK(saw);
}

TEST_CASE("is_parallel") {
  ConvexPolygon D = square(0, 1);
  Body small(ConvexPolygon({ep(0, 1, 0, 1), ep(1, 4, 0, 1), ep(1, 4, 1, 4), ep(0, 1, 1, 4)}));
  CHECK(is_parallel(D, small));

  // any polygon vs a scaled translate of itself
  ConvexPolygon P({ep(0, 1, 0, 1), ep(3, 1, 1, 1), ep(2, 1, 3, 1), ep(-1, 1, 2, 1)});
  Body PP(P);
  Body P2 = apply_homothety(PP, Scalar::exact(2), {Scalar::exact(10), Scalar::exact(0)});
  CHECK(is_parallel(P, P2));

  ConvexPolygon tri({ep(0, 1, 0, 1), ep(1, 1, 0, 1), ep(0, 1, 1, 1)});
  CHECK(!is_parallel(tri, Body(square(0, 1))));

  // disks never admit a parallel polygon container
  CHECK(!is_parallel(D, Body(Disk{ep(1, 2, 1, 2), Scalar::exact_ratio(1, 4)})));
}

TEST_CASE("escape_distance") {
  ConvexPolygon box = square(0, 1);
  CHECK(escape_distance(Body(Disk{ep(1, 2, 1, 2), Scalar::exact_ratio(1, 4)}), box).str() ==
        "1/4");
  CHECK(escape_distance(Body(Disk{ep(1, 2, 1, 4), Scalar::exact_ratio(1, 4)}), box).is_zero());

  // escape is the min over the per-edge gaps
  Body b(Disk{ep(1, 4, 1, 2), Scalar::exact_ratio(1, 8)});
  auto gaps = container_edge_gaps(b, box);
  REQUIRE(gaps.size() == 4);
  Scalar lo = gaps[0];
  for (auto& g : gaps)
    if (g.lt(lo)) lo = g;
  CHECK(escape_distance(b, box).eq(lo));
  CHECK(lo.str() == "1/8");

  CHECK_THROWS_AS(escape_distance(Body(Disk{ep(5, 1, 5, 1), Scalar::exact(1)}), box), Error);
}

TEST_CASE("layer docs have the designed escapes") {
  PackingDoc doc = gen_square_layers(2);
  // layer-1 square: side 1/4 at height 1/2
  Scalar esc = escape_distance(doc.bodies()[0], doc.container());
  CHECK(esc.str() == "1/2");
}

TEST_CASE("packing_metrics") {
  PackingDoc ford = gen_ford(2);
  Metrics m = packing_metrics(ford);
  CHECK(m.n == 3);
  REQUIRE(m.perimeter_pi_coefficient.has_value());
  CHECK(m.perimeter_pi_coefficient->str() == "9/4");
  CHECK(m.total_perimeter.to_double() == doctest::Approx(9.0 * M_PI / 4));
  CHECK(m.total_escape.is_zero());

  Metrics layers = packing_metrics(gen_square_layers(2));
  CHECK(layers.total_escape.str() == "1");
  CHECK(!layers.perimeter_pi_coefficient.has_value());

  ConvexPolygon box = square(0, 1);
  Metrics empty = packing_metrics(
      PackingDoc(box, {}, std::nullopt, {"manual", OrderedJson::object()}));
  CHECK(empty.n == 0);
  CHECK(empty.total_perimeter.is_zero());
  CHECK(empty.total_escape.is_zero());

  // totals match the per-body sums
  Metrics g = packing_metrics(gen_greedy_square(8));
  Scalar per = Scalar::real(0), esc = Scalar::real(0);
  for (auto& row : g.per_body) {
    per += row.perimeter;
    esc += row.escape;
  }
  CHECK(g.total_perimeter.eq(per));
  CHECK(g.total_escape.eq(esc));
}

TEST_CASE("dyadic certificate partitions the bodies") {
  PackingDoc doc = gen_explicit_disks(1);
  DyadicCertificate cert = dyadic_certificate(doc);
  size_t total = cert.leftover_count;
  for (auto& row : cert.rows) total += row.count;
  CHECK(total == doc.size());
  // the eight diameter-1/16 disks have perimeter pi/16 < per(D)/2^ceil(log 9),
  // which is the residual class; the base disk lands in the first band
  CHECK(cert.leftover_count == 8);
  REQUIRE(!cert.rows.empty());
  CHECK(cert.rows[0].count == 1);

  // single body: exactly one nonempty class (here the residual one), size 1
  ConvexPolygon box = square(0, 1);
  PackingDoc one(box, {Body(Disk{ep(1, 2, 1, 2), Scalar::exact_ratio(1, 4)})},
                 Body(Disk{ep(1, 2, 1, 2), Scalar::exact_ratio(1, 4)}),
                 {"manual", OrderedJson::object()});
  DyadicCertificate c1 = dyadic_certificate(one);
  size_t nonempty = c1.leftover_count > 0 ? 1 : 0, sz = c1.leftover_count;
  for (auto& row : c1.rows)
    if (row.count) {
      ++nonempty;
      sz = row.count;
    }
  CHECK(nonempty == 1);
  CHECK(sz == 1);

  PackingDoc no_ref(box, {}, std::nullopt, {"manual", OrderedJson::object()});
  CHECK_THROWS_AS(dyadic_certificate(no_ref), Error);
}

TEST_CASE("dyadic certificate inequalities hold on a greedy packing") {
  PackingDoc doc = gen_greedy_square(50);
  DyadicCertificate cert = dyadic_certificate(doc);
  size_t total = cert.leftover_count;
  for (auto& row : cert.rows) {
    total += row.count;
    // class size against the shape-ratio bound, and the per-class perimeter
    // against count * per(D) / 2^(k-1)
    CHECK(static_cast<double>(row.count) <= row.bound + 1e-9);
    const double band_top = cert.per_container / std::pow(2.0, row.k - 1);
    CHECK(row.class_perimeter <= static_cast<double>(row.count) * band_top + 1e-9);
  }
  CHECK(total == doc.size());
}

TEST_CASE("middle_half halves the length and keeps the midpoint") {
  Segment s{ep(0, 1, 0, 1), ep(1, 1, 0, 1)};
  Segment m = middle_half(s);
  CHECK(m.a.x.str() == "1/4");
  CHECK(m.b.x.str() == "3/4");
  CHECK(edge_length(m).str() == "1/2");
}

TEST_CASE("property: verification is order independent") {
  std::mt19937_64 rng(3);
  PackingDoc doc = gen_greedy_square(20);
  std::vector<Body> shuffled = doc.bodies();
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  PackingDoc redoc(doc.container(), shuffled, doc.reference(), doc.metadata());
  CHECK(verify_packing(doc).summary == verify_packing(redoc).summary);
  CHECK(verify_packing(redoc).summary);
}

TEST_CASE("property: rescaling a valid packing keeps it valid") {
  PackingDoc doc = gen_greedy_square(12);
  for (double s : {1e-3, 1.0, 1e3}) {
    Scalar mu = Scalar::real(s);
    Vec t{Scalar::real(7.0), Scalar::real(-5.0)};
    std::vector<Point> cv;
    for (auto& p : doc.container().vertices())
      cv.push_back({mu * p.x.as_float() + t.dx, mu * p.y.as_float() + t.dy});
    std::vector<Body> bodies;
    for (auto& b : doc.bodies()) {
      auto& d = std::get<Disk>(b);
      bodies.push_back(Disk{{mu * d.center.x.as_float() + t.dx,
                             mu * d.center.y.as_float() + t.dy},
                            mu * d.radius.as_float()});
    }
    PackingDoc scaled(ConvexPolygon(cv), std::move(bodies), std::nullopt,
                      {"manual", OrderedJson::object()});
    CHECK(verify_packing(scaled).summary);
  }
}

TEST_CASE("property: random perturbation that forces overlap is detected") {
  std::mt19937_64 rng(17);
  PackingDoc doc = gen_greedy_square(15);
  // Pick tangent-ish pairs by moving one disk toward its nearest neighbor by
  // more than the gap; the verifier must notice.
  std::uniform_int_distribution<size_t> pick(0, doc.size() - 1);
  int detected = 0, trials = 0;
  for (int t = 0; t < 20; ++t) {
    size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    auto di = std::get<Disk>(doc.bodies()[i]);
    auto dj = std::get<Disk>(doc.bodies()[j]);
    double cx = dj.center.x.to_double() - di.center.x.to_double();
    double cy = dj.center.y.to_double() - di.center.y.to_double();
    double dist = std::hypot(cx, cy);
    double want = 0.5 * (di.radius.to_double() + dj.radius.to_double());
    // move disk i so the centers are closer than r_i + r_j
    double shift = dist - want;
    Disk moved{{Scalar::real(di.center.x.to_double() + shift * cx / dist),
                Scalar::real(di.center.y.to_double() + shift * cy / dist)},
               Scalar::real(di.radius.to_double())};
    std::vector<Body> bodies;
    for (size_t k = 0; k < doc.size(); ++k)
      bodies.push_back(k == i ? Body(moved) : doc.bodies()[k]);
    ConvexPolygon big({fp(-100, -100), fp(100, -100), fp(100, 100), fp(-100, 100)});
    PackingDoc bad(big, std::move(bodies), std::nullopt, {"manual", OrderedJson::object()});
    ++trials;
    if (!verify_packing(bad).summary) ++detected;
  }
  CHECK(detected == trials);
}
