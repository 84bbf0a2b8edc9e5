#pragma once

#include <map>
#include <vector>

#include "vpart/matrix.hpp"
#include "vpart/numeric.hpp"

namespace vpart::genfun {

using linalg::IntMatrix;

// sign * (sum over numerator of x^p) / prod over rays r of (1 - x^r).
struct ConeTerm {
  int sign = 1;
  std::vector<IntVec> numerator;
  std::vector<IntVec> denominator_rays;
};

struct RationalGenFun {
  int dim = 0;
  std::vector<ConeTerm> terms;
};

// Closed coordinate box lo <= x <= hi.
struct Box {
  IntVec lo, hi;
};

// Exact coefficients of a formal series restricted to a box; zeros omitted.
struct TruncatedSeries {
  Box box;
  std::map<IntVec, Int> coeffs;
};

struct VertexCone {
  RatVec apex;
  std::vector<IntVec> rays;  // primitive, linearly independent
};

// Tangent cones of a polytope given by its vertices: a single point, a
// segment, or a cyclically ordered convex polygon. Polygon cones carry rays
// [toward previous vertex, toward next vertex] in input order.
std::vector<VertexCone> vertex_cones(const std::vector<RatVec>& vertices);

// Generating function of apex + cone(rays) as a single term: numerator is the
// lattice part of the half-open fundamental parallelepiped, sorted lex.
RationalGenFun simplicial_cone_genfun(const RatVec& apex, const std::vector<IntVec>& rays);

// Sum of the vertex-cone generating functions of the polytope.
RationalGenFun brion_sum(const std::vector<RatVec>& vertices);

// Exact expansion of g restricted to the box. All terms are expanded with one
// common direction on which every denominator ray is nonzero, flipping
// negative rays via 1/(1-x^r) = -x^{-r}/(1-x^{-r}).
TruncatedSeries truncate(const RationalGenFun& g, const Box& box);

// True iff the vertex-cone sum expands to the indicator series of the
// polytope's lattice points over the box.
bool brion_check(const std::vector<RatVec>& vertices, const Box& box);

}  // namespace vpart::genfun
