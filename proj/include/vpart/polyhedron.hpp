#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vpart/matrix.hpp"

namespace vpart::polyhedra {

using linalg::IntMatrix;

// Rational polyhedron with integer data: {x : eq_a x = eq_b, ineq_c x <= ineq_b}.
struct Polyhedron {
  int dim = 0;
  IntMatrix eq_a{0, 0};
  IntVec eq_b;
  IntMatrix ineq_c{0, 0};
  IntVec ineq_b;
};

// {x : a x = b, x >= 0}.
Polyhedron fiber_polytope(const IntMatrix& a, const IntVec& b);

// Affine change of coordinates from a full-dimensional polytope q in lambda
// space back to the fiber: x = x0 + generators * lambda.
struct ReducedPolytope {
  Polyhedron q;
  IntVec x0;
  IntMatrix generators;

  IntVec map_point(const IntVec& lambda) const;
};

// Eliminates the equalities of the fiber {a x = b, x >= 0} through a particular
// integer solution and a saturated kernel basis. The lattice points of q are in
// bijection with the lattice points of the fiber. Returns nullopt when b is not
// in the column lattice of a (empty fiber over the integers); throws on
// rank-deficient a.
std::optional<ReducedPolytope> reduce_to_full_dim(const IntMatrix& a, const IntVec& b);

// All lattice points, sorted lexicographically. Throws Error("unbounded") when
// the polyhedron is rationally feasible but unbounded in some coordinate;
// an empty result means a verified empty intersection with the lattice.
std::vector<IntVec> enumerate_lattice_points(const Polyhedron& p);
std::vector<IntVec> enumerate_lattice_points_serial(const Polyhedron& p);

// Lattice-point count via the same projection recursion, with the innermost
// integer interval summed instead of materialized.
Int count_lattice_points(const Polyhedron& p);

// Exact rational feasibility via full Fourier-Motzkin elimination.
bool rational_feasible(const Polyhedron& p);

// Lattice-point count of a simple lattice polygon from its area and boundary
// (vertices in order, either orientation). Throws on self-intersecting or
// zero-area input.
Int pick_count(const std::vector<std::array<Int, 2>>& vertices);

}  // namespace vpart::polyhedra
