// Acceptance checks for the packing toolkit. Each criterion prints exactly
// one line: [PASS]/[FAIL], its index, and a short measurement summary.
// The process exit code is the number of failed criteria.

#include <peripack/bounds.hpp>
#include <peripack/generators.hpp>
#include <peripack/json_io.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace peripack;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << index << ": " << name
            << " (" << detail << ")" << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned long long brute_phi(unsigned long long q) {
  unsigned long long c = 0;
  for (unsigned long long p = 1; p <= q; ++p)
    if (std::gcd(p, q) == 1) ++c;
  return c;
}

std::vector<double> sorted_radii_desc(const PackingDoc& doc) {
  std::vector<double> rs;
  rs.reserve(doc.size());
  for (const Body& b : doc.bodies()) rs.push_back(std::get<Disk>(b).radius.to_double());
  std::sort(rs.begin(), rs.end(), std::greater<>());
  return rs;
}

double measured_per(const PackingDoc& doc) {
  return packing_metrics(doc).total_perimeter.to_double();
}

Point ep(long long xn, long long xd, long long yn, long long yd) {
  return {Scalar::exact_ratio(xn, xd), Scalar::exact_ratio(yn, yd)};
}

ConvexPolygon unit_square() {
  return ConvexPolygon({ep(0, 1, 0, 1), ep(1, 1, 0, 1), ep(1, 1, 1, 1), ep(0, 1, 1, 1)});
}

// A row of touching squares along the container bottom: the simplest document
// that is parallel to its container and has full boundary contact.
PackingDoc bottom_row_doc() {
  std::vector<Body> bodies;
  for (long long i = 0; i < 8; ++i)
    bodies.push_back(ConvexPolygon({ep(i, 8, 0, 1), ep(i + 1, 8, 0, 1),
                                    ep(i + 1, 8, 1, 8), ep(i, 8, 1, 8)}));
  Body ref = bodies.front();
  DocMetadata meta;
  meta.generator = "manual-row";
  return PackingDoc(unit_square(), std::move(bodies), std::move(ref), std::move(meta));
}

const double kCornerRadius = (3.0 - 2.0 * std::sqrt(2.0)) / 2.0;

void criterion_1_ford_counts() {
  const auto t0 = Clock::now();
  bool pass = true;
  unsigned long long mismatch_q = 0;
  unsigned long long brute_sum = 0;
  for (unsigned long long Q = 1; Q <= 500; ++Q) {
    brute_sum += brute_phi(Q);
    if (gen_ford(Q).size() != 1 + brute_sum) {
      pass = false;
      mismatch_q = Q;
      break;
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 5.0) pass = false;
  std::ostringstream detail;
  detail << "all Q <= 500 vs gcd oracle, " << dt << " s";
  if (mismatch_q) detail << ", first mismatch at Q=" << mismatch_q;
  report(1, "Ford counts", pass, detail.str());
}

void criterion_2_ford_perimeter() {
  bool pass = true;
  std::string note;

  // gcd-based oracle for sum phi(q)/q^2
  std::vector<Rational> oracle(1001, Rational(0));
  for (unsigned long long q = 1; q <= 1000; ++q)
    oracle[q] = oracle[q - 1] + Rational(brute_phi(q)) / Rational(q * q);

  // direct metrics on every small doc
  for (unsigned long long Q = 1; Q <= 60 && pass; ++Q) {
    const Metrics m = packing_metrics(gen_ford(Q));
    if (!m.perimeter_pi_coefficient ||
        m.perimeter_pi_coefficient->rational() != 1 + oracle[Q]) {
      pass = false;
      note = "metrics mismatch at Q=" + std::to_string(Q);
    }
  }

  // the Q=1000 body list, split into per-q radius groups, must reproduce the
  // oracle prefix for every Q up to 1000
  const PackingDoc big = gen_ford(1000);
  std::map<Rational, unsigned long long, std::greater<Rational>> groups;
  for (const Body& b : big.bodies()) ++groups[std::get<Disk>(b).radius.rational()];
  if (pass) {
    Rational prefix = 0;
    auto it = groups.begin();
    for (unsigned long long q = 1; q <= 1000 && pass; ++q, ++it) {
      const Rational want_r = Rational(1, 2 * q * q);
      unsigned long long count = it == groups.end() || it->first != want_r ? 0 : it->second;
      if (q == 1) count -= 1;  // the disk at 0/1 shares the q=1 radius
      if (count != brute_phi(q)) {
        pass = false;
        note = "radius group mismatch at q=" + std::to_string(q);
        break;
      }
      prefix += Rational(count) * want_r * 2;
      if (prefix != oracle[q]) {
        pass = false;
        note = "prefix mismatch at Q=" + std::to_string(q);
      }
    }
  }

  // metrics anchors on larger docs
  for (unsigned long long Q : {100, 250, 500, 1000}) {
    if (!pass) break;
    const Metrics m = packing_metrics(gen_ford(Q));
    if (!m.perimeter_pi_coefficient ||
        m.perimeter_pi_coefficient->rational() != 1 + oracle[Q]) {
      pass = false;
      note = "metrics mismatch at Q=" + std::to_string(Q);
    }
  }

  const double coeff = (1 + oracle[1000]).convert_to<double>();
  const double target = 6.0 / (M_PI * M_PI) * std::log(1000.0) + 1.0;
  const double rel = std::abs(coeff - target) / target;
  if (rel > 0.05) pass = false;

  std::ostringstream detail;
  detail << "exact for all Q <= 1000; coeff(1000) = " << coeff << " vs (6/pi^2)ln Q + 1 = "
         << target << ", rel diff " << rel * 100 << "%";
  if (!note.empty()) detail << "; " << note;
  report(2, "Ford perimeter identity", pass, detail.str());
}

void criterion_3_apollonian_equals_ford() {
  const auto ford = sorted_radii_desc(gen_ford(20));
  const auto apo = sorted_radii_desc(gen_apollonian_chain(0.5, 0.5, 100));
  bool pass = apo.size() == 100 && ford.size() >= 100;
  double worst = 0;
  for (size_t i = 0; pass && i < 100; ++i) {
    worst = std::max(worst, std::abs(apo[i] - ford[i]));
    if (worst > 1e-9) pass = false;
  }
  std::ostringstream detail;
  detail << "100 radii, max |diff| = " << worst;
  report(3, "Ford/Apollonian equivalence", pass, detail.str());
}

void criterion_4_log_growth() {
  std::vector<std::pair<double, double>> samples;
  for (unsigned long long Q : {10, 32, 100, 316, 1000}) {
    const PackingDoc doc = gen_ford(Q);
    samples.push_back({static_cast<double>(doc.size()), measured_per(doc)});
  }
  const FitResult fit = fit_scaling(samples, FitModel::Log);
  const double slope_ln = fit.a / std::log(2.0);  // per vs ln n
  const double target = 3.0 / M_PI;
  const bool pass = std::abs(slope_ln - target) <= 0.10 * target;
  std::ostringstream detail;
  detail << "slope vs ln n = " << slope_ln << ", target 3/pi = " << target << ", R^2 = "
         << fit.r_squared;
  report(4, "Ford growth rate is logarithmic", pass, detail.str());
}

void criterion_5_eq8_monotonicity() {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> base(0.05, 0.95);
  std::uniform_real_distribution<double> bump(0.0, 0.5);
  bool pass = true;
  double worst = -1e300;
  for (int t = 0; t < 50; ++t) {
    const double r1 = base(rng), r2 = base(rng);
    const double r1p = r1 + bump(rng), r2p = r2 + bump(rng);
    const double small = measured_per(gen_apollonian_chain(r1, r2, 200));
    const double large = measured_per(gen_apollonian_chain(r1p, r2p, 200));
    worst = std::max(worst, small - large);
    if (small > large + 1e-9) pass = false;
  }
  std::ostringstream detail;
  detail << "50 random pairs, n=200, max per(small)-per(large) = " << worst;
  report(5, "Apollonian perimeter monotone in seed radii", pass, detail.str());
}

void criterion_6_greedy() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string note;

  const PackingDoc doc = gen_greedy_square(50);
  const auto& first = std::get<Disk>(doc.bodies()[0]);
  if (std::abs(first.radius.to_double() - 0.5) > 1e-12) {
    pass = false;
    note = "first radius " + std::to_string(first.radius.to_double());
  }
  for (int i = 1; i <= 4 && pass; ++i) {
    const double r = std::get<Disk>(doc.bodies()[i]).radius.to_double();
    if (std::abs(r - kCornerRadius) > 1e-9) {
      pass = false;
      note = "corner radius " + std::to_string(r);
    }
  }
  for (size_t n : {10, 25, 50}) {
    if (!pass) break;
    std::vector<Body> prefix(doc.bodies().begin(), doc.bodies().begin() + n);
    const PackingDoc pd(doc.container(), std::move(prefix), doc.reference(), doc.metadata());
    const double chain = measured_per(gen_apollonian_chain(0.5, kCornerRadius, n));
    if (measured_per(pd) < chain - 1e-9) {
      pass = false;
      note = "perimeter below the corner chain at n=" + std::to_string(n);
    }
  }
  for (size_t k = 1; k <= doc.size() && pass; ++k) {
    std::vector<Body> prefix(doc.bodies().begin(), doc.bodies().begin() + k);
    const PackingDoc pd(doc.container(), std::move(prefix), doc.reference(), doc.metadata());
    if (!verify_packing(pd).summary) {
      pass = false;
      note = "prefix " + std::to_string(k) + " fails verification";
    }
  }

  const double dt = seconds_since(t0);
  if (dt >= 60.0) pass = false;
  std::ostringstream detail;
  detail << "n=50, every prefix verified, " << dt << " s";
  if (!note.empty()) detail << ", " << note;
  report(6, "Greedy square packing", pass, detail.str());
}

void criterion_7_explicit_disks() {
  bool pass = true;
  std::string note;
  for (int K = 0; K <= 4 && pass; ++K) {
    const PackingDoc doc = gen_explicit_disks(K);
    if (doc.mode() != Mode::Exact) {
      pass = false;
      note = "not exact";
      break;
    }
    std::map<Rational, std::pair<unsigned long long, Rational>> classes;  // r -> (count, diam sum)
    for (const Body& b : doc.bodies()) {
      const Rational r = std::get<Disk>(b).radius.rational();
      auto& slot = classes[r];
      slot.first += 1;
      slot.second += 2 * r;
    }
    for (int k = 1; k <= K; ++k) {
      const Rational want_r = Rational(1, 2) / Rational(1ll << (4 * k));
      auto it = classes.find(want_r);
      const unsigned long long want_count = (1ull << (4 * k)) / 2;  // 16^k / 2
      if (it == classes.end() || it->second.first != want_count ||
          it->second.second != Rational(1, 2)) {
        pass = false;
        note = "class " + std::to_string(k) + " wrong at K=" + std::to_string(K);
      }
    }
    Rational total = 0;
    for (const auto& [r, slot] : classes) total += slot.second;
    if (total != Rational(2 + K, 2)) {
      pass = false;
      note = "total diameter sum at K=" + std::to_string(K);
    }
    if (pass && !verify_packing(doc, true).summary) {
      pass = false;
      note = "verification failed at K=" + std::to_string(K);
    }
  }
  std::ostringstream detail;
  detail << "K <= 4, exact class sums and full verification";
  if (!note.empty()) detail << ", " << note;
  report(7, "Explicit disk hierarchy", pass, detail.str());
}

void criterion_8_square_layers() {
  bool pass = true;
  std::string note;
  for (int lambda = 1; lambda <= 5 && pass; ++lambda) {
    const PackingDoc doc = gen_square_layers(lambda);
    size_t want = 0, layer = 1;
    for (int j = 1; j <= lambda; ++j) {
      want += layer;
      layer *= 2 * lambda;
    }
    const Metrics m = packing_metrics(doc);
    if (doc.size() != want) {
      pass = false;
      note = "count at lambda=" + std::to_string(lambda);
    } else if (!m.total_escape.eq(Scalar::exact(1)) ||
               !m.total_perimeter.eq(Scalar::exact(lambda))) {
      pass = false;
      note = "totals at lambda=" + std::to_string(lambda);
    } else if (!verify_packing(doc).summary) {
      pass = false;
      note = "verification at lambda=" + std::to_string(lambda);
    } else {
      const Thm6Constants c = thm6_constants(std::get<ConvexPolygon>(*doc.reference()),
                                             {Scalar::exact(1), Scalar::exact(0)});
      for (const Scalar& rho2 : {c.rho2, Scalar::exact(1000000)}) {
        const DepthProfile prof = depth_profile(doc, 0, Scalar::exact(lambda), rho2);
        const Eq12Report rep =
            check_eq12(prof, edge_length(doc.container().edge(0)), lambda);
        if (!rep.pass) {
          pass = false;
          note = "eq12 at lambda=" + std::to_string(lambda);
        }
      }
    }
  }
  std::ostringstream detail;
  detail << "lambda 1..5: esc = 1, per = lambda, counts, eq12";
  if (!note.empty()) detail << ", " << note;
  report(8, "Square layer family", pass, detail.str());
}

std::vector<std::pair<std::string, PackingDoc>> doc_matrix() {
  std::vector<std::pair<std::string, PackingDoc>> docs;
  docs.emplace_back("ford Q=2", gen_ford(2));
  docs.emplace_back("ford Q=10", gen_ford(10));
  docs.emplace_back("ford Q=100", gen_ford(100));
  docs.emplace_back("apollonian (1/2,1/2,50)", gen_apollonian_chain(0.5, 0.5, 50));
  docs.emplace_back("apollonian (1,1/4,50)", gen_apollonian_chain(1.0, 0.25, 50));
  docs.emplace_back("greedy n=10", gen_greedy_square(10));
  docs.emplace_back("greedy n=50", gen_greedy_square(50));
  docs.emplace_back("grid squares n=7",
                    gen_grid_translates(Body(unit_square()), unit_square(), 7));
  docs.emplace_back("grid disks n=9",
                    gen_grid_translates(Body(Disk{ep(0, 1, 0, 1), Scalar::exact(1)}),
                                        unit_square(), 9));
  docs.emplace_back(
      "grid in triangle n=5",
      gen_grid_translates(Body(unit_square()),
                          ConvexPolygon({ep(0, 1, 0, 1), ep(4, 1, 0, 1), ep(0, 1, 4, 1)}),
                          5));
  docs.emplace_back("explicit K=1", gen_explicit_disks(1));
  docs.emplace_back("explicit K=3", gen_explicit_disks(3));
  docs.emplace_back("square-layers lambda=2", gen_square_layers(2));
  docs.emplace_back("square-layers lambda=4", gen_square_layers(4));
  docs.emplace_back("layers-general squares",
                    gen_layers_general(unit_square(),
                                       ConvexPolygon({ep(0, 1, 0, 1), ep(2, 1, 0, 1),
                                                      ep(2, 1, 2, 1), ep(0, 1, 2, 1)}),
                                       0, 2));
  docs.emplace_back(
      "layers-general triangle",
      gen_layers_general(ConvexPolygon({ep(0, 1, 0, 1), ep(1, 1, 0, 1), ep(0, 1, 1, 1)}),
                         unit_square(), 0, 1));
  docs.emplace_back(
      "layers-general slanted",
      gen_layers_general(unit_square(),
                         ConvexPolygon({ep(0, 1, 0, 1), ep(4, 1, 0, 1), ep(0, 1, 4, 1)}),
                         1, 2));
  docs.emplace_back("sloped s=1 depth=3", gen_sloped_squares(1.0, 3));
  docs.emplace_back("sloped s=1/2 depth=6", gen_sloped_squares(0.5, 6));
  docs.emplace_back("sloped s=1/4 depth=5", gen_sloped_squares(0.25, 5));
  docs.emplace_back("manual bottom row", bottom_row_doc());
  return docs;
}

void criterion_9_bound_soundness(const std::vector<std::pair<std::string, PackingDoc>>& docs) {
  bool pass = true;
  std::string note;
  std::map<std::string, int> applied;
  for (const auto& [name, doc] : docs) {
    const bool contact = verify_packing(doc, true).summary;
    const bool parallel =
        std::holds_alternative<ConvexPolygon>(*doc.reference()) &&
        is_parallel(doc.container(), *doc.reference());
    std::vector<std::string> which{"prop1", "prop5"};
    if (contact) which.push_back("prop2");
    if (contact && parallel) which.push_back("prop4");
    if (parallel && doc.size() >= 4) which.push_back("thm6");
    for (const std::string& w : which) {
      const BoundReport rep = evaluate_bound(doc, w);
      ++applied[w];
      if (rep.slack < 0) {
        pass = false;
        note = w + " unsound on " + name + " (slack " + std::to_string(rep.slack) + ")";
      }
    }
  }
  for (const std::string& w : {"prop1", "prop2", "prop4", "prop5", "thm6"})
    if (!applied[w]) {
      pass = false;
      note = w + " never applied";
    }
  std::ostringstream detail;
  int evaluations = 0;
  for (const auto& [w, k] : applied) evaluations += k;
  detail << evaluations << " evaluations over " << docs.size() << " docs, all slack >= 0";
  if (!note.empty()) detail << ", " << note;
  report(9, "Bound soundness", pass, detail.str());
}

void criterion_10_sloped_squares() {
  bool pass = true;
  std::string note;
  std::ostringstream stats;
  for (double s : {0.25, 0.5, 1.0}) {
    const PackingDoc doc = gen_sloped_squares(s, 8);
    if (!verify_packing(doc, true).summary) {
      pass = false;
      note = "verification failed at s=" + std::to_string(s);
      break;
    }
    const auto pers =
        doc.metadata().params.at("class_perimeter").get<std::vector<double>>();
    const auto counts =
        doc.metadata().params.at("class_count").get<std::vector<size_t>>();

    // a window of >= 6 consecutive classes where no class drops below half
    // the window median
    size_t best_window = 0;
    for (size_t lo = 0; lo < pers.size(); ++lo) {
      for (size_t hi = lo + 6; hi <= pers.size(); ++hi) {
        std::vector<double> window(pers.begin() + lo, pers.begin() + hi);
        std::sort(window.begin(), window.end());
        const double median = window[window.size() / 2];
        bool ok = true;
        for (size_t i = lo; i < hi; ++i)
          if (pers[i] < 0.5 * median) ok = false;
        if (ok) best_window = std::max(best_window, hi - lo);
      }
    }
    if (best_window < 6) {
      pass = false;
      note = "no stable 6-class window at s=" + std::to_string(s);
    }

    std::vector<std::pair<double, double>> samples;
    double cum_n = 0, cum_per = 0;
    for (size_t k = 0; k < counts.size(); ++k) {
      cum_n += static_cast<double>(counts[k]);
      cum_per += pers[k];
      samples.push_back({cum_n, cum_per});
    }
    const FitResult fit = fit_scaling(samples, FitModel::Log);
    if (!(fit.a > 0) || fit.r_squared < 0.9) {
      pass = false;
      note = "log fit at s=" + std::to_string(s) + " (a=" + std::to_string(fit.a) +
             ", R2=" + std::to_string(fit.r_squared) + ")";
    }
    stats << " s=" << s << ": n=" << doc.size() << ", window=" << best_window
          << ", slope=" << fit.a << ", R2=" << fit.r_squared << ";";
  }
  std::ostringstream detail;
  detail << "depth 8," << stats.str();
  if (!note.empty()) detail << " " << note;
  report(10, "Sloped square hierarchy", pass, detail.str());
}

void criterion_11_verifier_performance() {
  // 10^4 disjoint disks on a jittered grid, float mode
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> radius(0.10, 0.45);
  std::uniform_real_distribution<double> jitter(-0.04, 0.04);
  std::vector<Body> bodies;
  bodies.reserve(10000);
  for (int gy = 0; gy < 100; ++gy)
    for (int gx = 0; gx < 100; ++gx)
      bodies.push_back(Disk{{Scalar::real(gx + 0.5 + jitter(rng)),
                             Scalar::real(gy + 0.5 + jitter(rng))},
                            Scalar::real(radius(rng))});
  ConvexPolygon box({{Scalar::real(0), Scalar::real(0)},
                     {Scalar::real(100), Scalar::real(0)},
                     {Scalar::real(100), Scalar::real(100)},
                     {Scalar::real(0), Scalar::real(100)}});
  const PackingDoc doc(box, std::move(bodies), std::nullopt, {"manual", OrderedJson::object()});

  const auto t0 = Clock::now();
  const VerificationReport rep = verify_packing(doc);
  const double dt = seconds_since(t0);
  const bool pass = rep.summary && dt < 10.0;
  std::ostringstream detail;
  detail << "10000 disks verified in " << dt << " s";
  report(11, "Verifier performance", pass, detail.str());
}

void criterion_12_round_trip(const std::vector<std::pair<std::string, PackingDoc>>& docs) {
  bool pass = true;
  std::string note;
  for (const auto& [name, doc] : docs) {
    const std::string once = save_doc(doc);
    const std::string twice = save_doc(load_doc(once));
    if (once != twice) {
      pass = false;
      note = "unstable for " + name;
      break;
    }
  }
  std::ostringstream detail;
  detail << docs.size() << " docs byte-stable";
  if (!note.empty()) detail << ", " << note;
  report(12, "Save/load round-trip stability", pass, detail.str());
}

}  // namespace

int main() {
  criterion_1_ford_counts();
  criterion_2_ford_perimeter();
  criterion_3_apollonian_equals_ford();
  criterion_4_log_growth();
  criterion_5_eq8_monotonicity();
  criterion_6_greedy();
  criterion_7_explicit_disks();
  criterion_8_square_layers();
  const auto docs = doc_matrix();
  criterion_9_bound_soundness(docs);
  criterion_10_sloped_squares();
  criterion_11_verifier_performance();
  criterion_12_round_trip(docs);
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << std::endl;
  return failures;
}
