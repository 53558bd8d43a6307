#pragma once

#include "peripack/doc.hpp"

namespace peripack {

struct CheckResult {
  std::string name;
  bool pass = true;
  OrderedJson witness;  // first offender, null when passing
};

struct VerificationReport {
  bool summary = true;
  std::vector<CheckResult> checks;
  OrderedJson to_json() const;
};

// Checks containment in the closed container, pairwise interior-disjointness
// (with a bounding-box sweep prefilter) and, on request, boundary contact of
// every body. Exact mode decides exactly; float mode accepts penetrations up
// to eps * min(size of the pair).
VerificationReport verify_packing(const PackingDoc& doc,
                                  bool require_boundary_contact = false);

// Every edge direction of D supported by C along a full side (never true for
// disks).
bool is_parallel(const ConvexPolygon& D, const Body& C);

// Distance from a contained body to the nearest container side's line;
// zero exactly when the body touches the boundary.
Scalar escape_distance(const Body& b, const ConvexPolygon& container);

// Distance from a contained body to every container side's line, indexed by
// edge. escape_distance is the minimum of these.
std::vector<Scalar> container_edge_gaps(const Body& b, const ConvexPolygon& container);

struct BodyMeasure {
  Scalar perimeter;
  Scalar escape;
};

struct Metrics {
  size_t n = 0;
  Scalar total_perimeter;
  std::optional<Scalar> perimeter_pi_coefficient;  // exact all-disk docs
  Scalar total_escape;
  std::vector<BodyMeasure> per_body;
  OrderedJson to_json() const;
};

Metrics packing_metrics(const PackingDoc& doc);

// Size classes by perimeter halving: row k holds bodies with
// per(D)/2^k < per(C_i) <= per(D)/2^(k-1), k = 1..ceil(log2 n); smaller
// bodies are counted as leftovers. The row bound is the packing-theoretic
// class capacity (per(C)^2/area(C)) * 2^k.
struct CertificateRow {
  int k = 0;
  size_t count = 0;
  double bound = 0;
  double class_perimeter = 0;
};

struct DyadicCertificate {
  double per_container = 0;
  size_t leftover_count = 0;
  std::vector<CertificateRow> rows;
  OrderedJson to_json() const;
};

DyadicCertificate dyadic_certificate(const PackingDoc& doc);

// Coverage depth of the container edge `edge_index` by the projections of the
// bodies' middle half-sides, restricted to bodies whose nearest side is that
// edge (ties to the lowest edge index) and whose escape is below
// rho2 * |b_i| / lambda.
struct DepthProfile {
  size_t edge_index = 0;
  Scalar edge_length;
  size_t close_count = 0;               // bodies that entered the profile
  Scalar projection_total;              // sum of projected middle-half lengths
  std::vector<Scalar> breakpoints;      // sorted; depth[i] holds on [bp[i], bp[i+1]]
  std::vector<int> depth;
  std::vector<Scalar> measures;         // measures[k-1] = |{depth >= k}|
  OrderedJson to_json() const;
};

DepthProfile depth_profile(const PackingDoc& doc, size_t edge_index,
                           const Scalar& lambda, const Scalar& rho2);

// Middle half of a segment (same direction, half the length, centered).
Segment middle_half(const Segment& s);

}  // namespace peripack
