#pragma once

#include "peripack/verifier.hpp"

namespace peripack {

// Euler totient by trial-division factorization, plus the two sums the
// perimeter analysis needs: sum of phi(q) and the exact rational
// sum of phi(q)/q^2.
unsigned long long totient(unsigned long long q);
unsigned long long totient_sum(unsigned long long Q);
Rational totient_sq_sum(unsigned long long Q);

// per(C) * sqrt(area(D)/area(C)) * sqrt(n)
double bound_prop1(const Body& C, const ConvexPolygon& D, size_t n);

// (1 + 2*per(C)^2/area(C) * ceil(log2 n)) * per(D)
double bound_prop2(const Body& C, const ConvexPolygon& D, size_t n);

// rho'(C) * per(D) with rho' = per(C) / shortest side of C
double bound_prop4(const ConvexPolygon& C, const ConvexPolygon& D);

// esc + (1 + 6*per(C)^2/area(C) * ceil(log2 n)) * per(D)
double bound_prop5(const Body& C, const ConvexPolygon& D, size_t n, double esc);

// rho1 = per(C)/|c| for the side c of C facing direction a; rho2 =
// min(|h1|,|h2|)/|b| with b the middle half of c and h1,h2 the chords of C
// perpendicular to c through b's endpoints. rho2 stays exact for exact C.
struct Thm6Constants {
  Scalar rho1;
  Scalar rho2;
};
Thm6Constants thm6_constants(const ConvexPolygon& C, const Direction& a_direction);

// 2 * ceil(log2(n) / log2(log2(n))), n >= 4
int thm6_lambda(size_t n);

// max over sides a of D of 2*rho1*max(2, 1/rho2) * (per(D) + esc) * lambda
double bound_thm6(const ConvexPolygon& C, const ConvexPolygon& D, size_t n,
                  double esc);

// Row-by-row check of |I_k| <= |a| * lambda^(lambda-k) for k >= lambda+1.
struct Eq12Row {
  int k = 0;
  double measure = 0;
  double bound = 0;
  double slack = 0;
  bool pass = true;
};
struct Eq12Report {
  bool pass = true;
  std::vector<Eq12Row> rows;
  OrderedJson to_json() const;
};
Eq12Report check_eq12(const DepthProfile& profile, const Scalar& edge_len,
                      int lambda);

enum class FitModel { Sqrt, Log, LogLog };

// Ordinary least squares of per against g(n) for
// g in {sqrt(n), log2(n), log2(n)/log2(log2(n))}.
struct FitResult {
  FitModel model = FitModel::Sqrt;
  double a = 0;
  double b = 0;
  double residual_rms = 0;
  double r_squared = 0;
  std::vector<std::pair<double, double>> samples;
  OrderedJson to_json() const;
};
FitResult fit_scaling(const std::vector<std::pair<double, double>>& samples,
                      FitModel model);

std::string fit_model_name(FitModel m);
FitModel fit_model_from_name(const std::string& name);

// Convenience used by the CLI and bindings: evaluates one named bound against
// the measured total perimeter of the doc. C is the reference body; esc
// defaults to the measured total escape.
struct BoundReport {
  std::string name;
  OrderedJson inputs;
  double value = 0;
  double measured = 0;
  double slack = 0;
  OrderedJson to_json() const;
};
BoundReport evaluate_bound(const PackingDoc& doc, const std::string& which,
                           std::optional<double> esc_override = std::nullopt);

}  // namespace peripack
