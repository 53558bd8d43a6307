#pragma once

#include "peripack/doc.hpp"

namespace peripack {

// One step of the quarter/half interval refinement: J is the residual
// interval containing the touch abscissa xp. If xp falls in the closed
// central quarter, both outer quarters are allocated and the central half
// remains; otherwise the far half is allocated and the near half remains.
struct AllocationStep {
  std::vector<std::pair<Scalar, Scalar>> allocated;
  std::pair<Scalar, Scalar> next;
};
AllocationStep allocation_step(const std::pair<Scalar, Scalar>& J, const Scalar& xp);

// n translates of the largest homothet of C inscribed in a grid cell of the
// maximal axis-aligned square inside D.
PackingDoc gen_grid_translates(const Body& C, const ConvexPolygon& D, size_t n);

// Ford disks: the disk at 0/1 plus C_{p,q} for all q <= Q, p coprime to q,
// 1 <= p <= q. Exact.
PackingDoc gen_ford(unsigned long long Q);

// Apollonian chain F_n(r1, r2) of disks tangent to the x-axis, grown by
// always filling the gap admitting the largest new disk.
PackingDoc gen_apollonian_chain(double r1, double r2, size_t n);

// Greedy packing of the unit square: each step adds the maximum-radius disk
// that avoids all previous disks and touches the container boundary.
PackingDoc gen_greedy_square(size_t n);

// The explicit hierarchy of disks with diameters 16^-k tangent to the bottom
// edge, driven by the quarter/half interval allocation. Exact.
PackingDoc gen_explicit_disks(int K);

// lambda layers of axis-aligned squares with nested projections; layer j has
// (2*lambda)^(j-1) squares of side 1/(4*(2*lambda)^(j-1)) at escape height
// 1/(2^(j-1)*lambda^j). Exact.
PackingDoc gen_square_layers(int lambda);

// The square-layer family rescaled into U(a), the maximal axis-aligned square
// (in the frame where edge a of D is horizontal) with its bottom on a, each
// square replaced by a homothet of C.
PackingDoc gen_layers_general(const ConvexPolygon& C, const ConvexPolygon& D,
                              size_t a_index, int lambda);

// Squares under the hypotenuse y = s*x of a right triangle, each touching the
// hypotenuse at its top-left corner; every square recursively spawns tiled
// children over its allocated sub-intervals.
PackingDoc gen_sloped_squares(double s, int depth);

}  // namespace peripack
