#include "peripack/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "peripack/json_io.hpp"

namespace peripack {

unsigned long long totient(unsigned long long q) {
  if (q == 0) throw Error("totient: q must be >= 1");
  unsigned long long result = q;
  unsigned long long m = q;
  for (unsigned long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned long long totient_sum(unsigned long long Q) {
  unsigned long long s = 0;
  for (unsigned long long q = 1; q <= Q; ++q) s += totient(q);
  return s;
}

Rational totient_sq_sum(unsigned long long Q) {
  Rational s = 0;
  for (unsigned long long q = 1; q <= Q; ++q)
    s += Rational(BigInt(totient(q)), BigInt(q) * q);
  return s;
}

double bound_prop1(const Body& C, const ConvexPolygon& D, size_t n) {
  if (n < 1) throw Error("bound_prop1: n must be >= 1");
  const double per_c = perimeter(C).to_double();
  const double area_c = area(C).to_double();
  const double area_d = area(Body(D)).to_double();
  return per_c * std::sqrt(area_d / area_c) * std::sqrt(static_cast<double>(n));
}

double bound_prop2(const Body& C, const ConvexPolygon& D, size_t n) {
  if (n < 1) throw Error("bound_prop2: n must be >= 1");
  const double per_c = perimeter(C).to_double();
  const double area_c = area(C).to_double();
  const double per_d = perimeter(Body(D)).to_double();
  return (1.0 + 2.0 * per_c * per_c / area_c * ceil_log2(n)) * per_d;
}

double bound_prop4(const ConvexPolygon& C, const ConvexPolygon& D) {
  double shortest = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < C.size(); ++i)
    shortest = std::min(shortest, edge_length(C.edge(i)).to_double());
  const double per_c = perimeter(Body(C)).to_double();
  const double per_d = perimeter(Body(D)).to_double();
  return per_c / shortest * per_d;
}

double bound_prop5(const Body& C, const ConvexPolygon& D, size_t n, double esc) {
  if (n < 1) throw Error("bound_prop5: n must be >= 1");
  if (esc < 0) throw Error("bound_prop5: esc must be >= 0");
  const double per_c = perimeter(C).to_double();
  const double area_c = area(C).to_double();
  const double per_d = perimeter(Body(D)).to_double();
  return esc + (1.0 + 6.0 * per_c * per_c / area_c * ceil_log2(n)) * per_d;
}

namespace {

// Chord of C along p + t*dir, returned as the parameter span (t_hi - t_lo);
// the chord length is that span times |dir|.
Scalar chord_span(const ConvexPolygon& C, const Point& p, const Vec& dir) {
  std::optional<Scalar> tlo, thi;
  for (size_t i = 0; i < C.size(); ++i) {
    const Segment e = C.edge(i);
    const Vec ev = e.b - e.a;
    const Scalar a0 = cross(ev, p - e.a);
    const Scalar b0 = cross(ev, dir);
    const int sb = Scalar::compare_value(b0, Scalar::zero(b0.mode()));
    if (sb == 0) {
      if (a0.sign() < 0) return Scalar::zero(a0.mode());  // line misses C
      continue;
    }
    const Scalar t = -a0 / b0;
    if (sb > 0) {
      if (!tlo || Scalar::compare_value(t, *tlo) > 0) tlo = t;
    } else {
      if (!thi || Scalar::compare_value(t, *thi) < 0) thi = t;
    }
  }
  if (!tlo || !thi) throw Error("thm6: unbounded chord");
  Scalar span = *thi - *tlo;
  return span.sign() < 0 ? Scalar::zero(span.mode()) : span;
}

}  // namespace

Thm6Constants thm6_constants(const ConvexPolygon& C, const Direction& a_direction) {
  const SupportSide side = support_side(Body(C), a_direction);
  const Segment* c = std::get_if<Segment>(&side);
  if (!c) throw Error("thm6: no side parallel to the given direction");

  const Scalar c_len = edge_length(*c);
  Scalar per_c = perimeter(Body(C));
  Scalar rho1 = (per_c.is_exact() && c_len.is_exact())
                    ? per_c / c_len
                    : Scalar::real(per_c.to_double() / c_len.to_double());

  // Chords perpendicular to c through the middle-half endpoints, measured in
  // units of |c| via the unnormalized perpendicular (-cv.dy, cv.dx); the
  // ratio to |b| = |c|/2 is then 2*span, which stays rational.
  const Vec cv = c->b - c->a;
  const Vec inward{-cv.dy, cv.dx};
  const Segment b = middle_half(*c);
  const Scalar s1 = chord_span(C, b.a, inward);
  const Scalar s2 = chord_span(C, b.b, inward);
  const Scalar smin = Scalar::compare_value(s1, s2) <= 0 ? s1 : s2;
  return {std::move(rho1), smin.mul_int(2)};
}

int thm6_lambda(size_t n) {
  if (n < 4) throw Error("thm6: n must be >= 4");
  const double l = std::log2(static_cast<double>(n));
  return 2 * static_cast<int>(std::ceil(l / std::log2(l)));
}

double bound_thm6(const ConvexPolygon& C, const ConvexPolygon& D, size_t n,
                  double esc) {
  if (!is_parallel(D, Body(C))) throw Error("thm6: container not parallel to body");
  const int lambda = thm6_lambda(n);
  const double per_d = perimeter(Body(D)).to_double();
  double best = 0;
  for (size_t i = 0; i < D.size(); ++i) {
    const Segment e = D.edge(i);
    const Vec ev = e.b - e.a;
    const Thm6Constants k = thm6_constants(C, Direction{ev.dx, ev.dy});
    const double rho = 2.0 * k.rho1.to_double() *
                       std::max(2.0, 1.0 / k.rho2.to_double());
    best = std::max(best, rho * (per_d + esc) * lambda);
  }
  return best;
}

OrderedJson Eq12Report::to_json() const {
  OrderedJson j;
  j["pass"] = pass;
  OrderedJson arr = OrderedJson::array();
  for (const Eq12Row& r : rows) {
    OrderedJson rj;
    rj["k"] = r.k;
    rj["measure"] = r.measure;
    rj["bound"] = r.bound;
    rj["slack"] = r.slack;
    rj["pass"] = r.pass;
    arr.push_back(std::move(rj));
  }
  j["rows"] = std::move(arr);
  return j;
}

Eq12Report check_eq12(const DepthProfile& profile, const Scalar& edge_len,
                      int lambda) {
  if (lambda < 1) throw Error("check_eq12: lambda must be >= 1");
  Eq12Report report;
  for (int k = lambda + 1; k <= static_cast<int>(profile.measures.size()); ++k) {
    const Scalar& measure = profile.measures[k - 1];
    Eq12Row row;
    row.k = k;
    row.measure = measure.to_double();
    if (measure.is_exact() && edge_len.is_exact()) {
      Rational bound = edge_len.rational();
      for (int i = 0; i < k - lambda; ++i) bound /= lambda;
      row.bound = bound.convert_to<double>();
      row.pass = measure.rational() <= bound;
    } else {
      row.bound = edge_len.to_double() *
                  std::pow(static_cast<double>(lambda), lambda - k);
      row.pass = row.measure <= row.bound * (1.0 + kDefaultEps) + kDefaultEps;
    }
    row.slack = row.bound - row.measure;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

std::string fit_model_name(FitModel m) {
  switch (m) {
    case FitModel::Sqrt: return "sqrt";
    case FitModel::Log: return "log";
    case FitModel::LogLog: return "loglog";
  }
  throw Error("fit: unknown model");
}

FitModel fit_model_from_name(const std::string& name) {
  if (name == "sqrt") return FitModel::Sqrt;
  if (name == "log") return FitModel::Log;
  if (name == "loglog") return FitModel::LogLog;
  throw Error("fit: unknown model '" + name + "'");
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& samples,
                      FitModel model) {
  if (samples.size() < 3) throw Error("fit: need at least 3 samples");
  auto g = [&](double n) {
    switch (model) {
      case FitModel::Sqrt: return std::sqrt(n);
      case FitModel::Log: return std::log2(n);
      case FitModel::LogLog: {
        if (n < 4) throw Error("fit: loglog model needs n >= 4");
        const double l = std::log2(n);
        return l / std::log2(l);
      }
    }
    throw Error("fit: unknown model");
  };

  const double m = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, per] : samples) {
    const double x = g(n);
    sx += x;
    sy += per;
    sxx += x * x;
    sxy += x * per;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0) throw Error("fit: degenerate sample set");
  FitResult fit;
  fit.model = model;
  fit.a = (m * sxy - sx * sy) / denom;
  fit.b = (sy - fit.a * sx) / m;
  fit.samples = samples;

  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / m;
  for (const auto& [n, per] : samples) {
    const double r = per - (fit.a * g(n) + fit.b);
    ss_res += r * r;
    ss_tot += (per - mean_y) * (per - mean_y);
  }
  fit.residual_rms = std::sqrt(ss_res / m);
  fit.r_squared = ss_tot == 0 ? (ss_res == 0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  return fit;
}

OrderedJson FitResult::to_json() const {
  OrderedJson j;
  j["model"] = fit_model_name(model);
  j["a"] = a;
  j["b"] = b;
  j["residual_rms"] = residual_rms;
  j["r_squared"] = r_squared;
  OrderedJson arr = OrderedJson::array();
  for (const auto& [n, per] : samples) arr.push_back(OrderedJson::array({n, per}));
  j["samples"] = std::move(arr);
  return j;
}

OrderedJson BoundReport::to_json() const {
  OrderedJson j;
  j["name"] = name;
  j["inputs"] = inputs;
  j["value"] = value;
  j["measured"] = measured;
  j["slack"] = slack;
  return j;
}

BoundReport evaluate_bound(const PackingDoc& doc, const std::string& which,
                           std::optional<double> esc_override) {
  if (!doc.reference())
    throw Error("bounds: document has no reference body");
  const Body& C = *doc.reference();
  const ConvexPolygon& D = doc.container();
  const size_t n = doc.size();
  const Metrics metrics = packing_metrics(doc);
  const double esc = esc_override.value_or(metrics.total_escape.to_double());

  BoundReport report;
  report.name = which;
  report.measured = metrics.total_perimeter.to_double();
  report.inputs["n"] = n;
  report.inputs["per_C"] = perimeter(C).to_double();
  report.inputs["area_C"] = area(C).to_double();
  report.inputs["per_D"] = perimeter(Body(D)).to_double();
  report.inputs["esc"] = esc;

  if (which == "prop1") {
    report.value = bound_prop1(C, D, n);
  } else if (which == "prop2") {
    report.value = bound_prop2(C, D, n);
  } else if (which == "prop4") {
    const ConvexPolygon* poly = std::get_if<ConvexPolygon>(&C);
    if (!poly) throw Error("bounds: prop4 needs a polygon reference body");
    report.value = bound_prop4(*poly, D);
  } else if (which == "prop5") {
    report.value = bound_prop5(C, D, n, esc);
  } else if (which == "thm6") {
    const ConvexPolygon* poly = std::get_if<ConvexPolygon>(&C);
    if (!poly) throw Error("bounds: thm6 needs a polygon reference body");
    report.value = bound_thm6(*poly, D, n, esc);
    report.inputs["lambda"] = thm6_lambda(n);
  } else {
    throw Error("bounds: unknown bound '" + which + "'");
  }
  report.slack = report.value - report.measured;
  return report;
}

}  // namespace peripack
