#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "vpart/monomial.hpp"

namespace vpart::betti {

using monomial::Expo;
using monomial::MonomialIdeal;

// Abstract simplicial complex on vertices 0..nverts-1; faces are derived as
// subsets of the facet bitsets. An empty facet list is the void complex (all
// homology zero); a facet list containing only the empty set is the complex
// whose sole face is empty (reduced homology 1 in dimension -1).
struct SimplicialComplexQ {
  int nverts = 0;
  std::vector<std::uint32_t> facets;
};

// dims[j+1] = dim of the j-th reduced homology over the rationals, for
// j = -1 .. top dimension; empty for the void complex. Exact ranks throughout.
std::vector<long> reduced_homology_dims(const SimplicialComplexQ& k, int max_verts = 20);

// (homological degree i, multidegree alpha) -> Betti number of the ideal.
using MultigradedBetti = std::map<std::pair<int, Expo>, long>;

// Betti numbers from upper-Koszul complexes: beta_{i,alpha}(I) is the reduced
// homology of {squarefree sigma <= alpha : x^(alpha-sigma) in I} in dimension
// i-1, scanned over the join closure of the generators.
MultigradedBetti multigraded_betti(const MonomialIdeal& i, std::size_t lcm_bound = 4096);
MultigradedBetti multigraded_betti_serial(const MonomialIdeal& i, std::size_t lcm_bound = 4096);

// Independent oracle: strand homology of the Taylor complex on generator
// subsets, boundary entries +-1 exactly where dropping a generator keeps the
// subset lcm; shifted by one homological degree from the quotient's numbers.
MultigradedBetti taylor_betti_oracle(const MonomialIdeal& i, int max_gens = 12);

// (homological degree i, total degree mu) -> Betti number.
struct BettiTable {
  int nvars = 0;
  std::map<std::pair<int, long>, long> entries;
};

BettiTable graded_betti(const MonomialIdeal& i, std::size_t lcm_bound = 4096);

struct BettiFamily {
  long t_lo = 0, t_hi = 0;
  std::map<long, BettiTable> tables;
};

// One Betti table per filtration term.
BettiFamily betti_family(const monomial::Filtration& f, std::size_t lcm_bound = 4096);

}  // namespace vpart::betti
