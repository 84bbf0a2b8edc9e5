#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vpart/betti.hpp"
#include "vpart/numeric.hpp"
#include "vpart/partition.hpp"

namespace vpart::asymptotics {

using partition::Poly2;
using partition::TRange;
using partition::WeightSystem;

// Integer linear boundary L(t) = a*t + b.
struct LineFunc {
  Int a, b;

  Int at(const Int& t) const { return a * t + b; }
  bool operator==(const LineFunc& o) const { return a == o.a && b == o.b; }
};

// Eventual shape of one homological row of a Betti family: boundary lines
// with slopes among the generator degrees, a period D, and one exact
// polynomial per (band, residue class). Bands are closed: band p covers
// L_p(t) <= mu <= L_{p+1}(t), and the residue class of (mu, t) inside it is
// (a_{p+1} t - mu) mod D, taken with the slope of the upper boundary. A
// single line is its own degenerate band of index 0.
struct RegionDescription {
  int i = 0;
  long t0 = 0;     // least materialized t from which every check holds onward
  long period = 1; // D
  std::vector<LineFunc> lines;                 // sorted by (slope, intercept)
  std::map<std::pair<int, long>, Poly2> polys; // (band, residue) -> Q
};

// Fits boundary lines and band polynomials from the rows of `fam` inside
// fit_range, certifies exact agreement on validate_range, and reports the
// least t0 from which ordering, vanishing, and agreement hold across the
// whole materialized family. degree_cap < 0 selects r - rank(matrix) of the
// weight system. The period starts at det of the global degree lattice and
// doubles on fit failure, at most max_period_doublings times.
RegionDescription detect_regions(const betti::BettiFamily& fam, int i, const WeightSystem& w,
                                 TRange fit_range, TRange validate_range, int degree_cap = -1,
                                 int max_period_doublings = 4);

// Evaluates the description at (mu, t): zero outside the outer band, the
// band/residue polynomial inside. Requires t >= t0; the value must come out
// a nonnegative integer.
Int predict(const RegionDescription& r, const Int& mu, const Int& t);

// One free summand B(-a, -b)^multiplicity of a bigraded resolution.
struct Twist {
  Int a, b;
  long multiplicity = 1;
};

// Free bigraded resolution data over the weighted polynomial ring B;
// twists[p] lists the summands in homological degree p.
struct BigradedTwists {
  WeightSystem weights;
  std::vector<std::vector<Twist>> twists;
};

// Alternating Hilbert function of the resolution:
// sum_p (-1)^p sum_twists multiplicity * phi(mu - a, t - b).
Int hilbert_from_twists(const BigradedTwists& tw, const Int& mu, const Int& t);

// Outcome of comparing beta_{0,mu} of powers of (x_1^{d_1}, ..., x_r^{d_r})
// with the weighted count phi(mu, t) for every mu and every t <= t_max.
struct CiBridgeReport {
  bool ok = false;
  long t_max = 0;
  long checks = 0;
  std::optional<std::pair<long, long>> first_discrepancy; // (mu, t)
};

CiBridgeReport certify_ci_bridge(const std::vector<long>& degrees, long t_max);

}  // namespace vpart::asymptotics
