#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vpart/matrix.hpp"
#include "vpart/numeric.hpp"

namespace vpart::partition {

using linalg::IntMatrix;
using linalg::Lattice;

// Weighted counting problem for degrees d_1 <= ... <= d_r: the weight of a
// tuple x in N^r is (sum x_i d_i, sum x_i).
struct WeightSystem {
  IntVec degrees;    // sorted ascending, all positive
  IntMatrix matrix;  // [[d_1 ... d_r], [1 ... 1]]
  int rank = 0;      // rank of the matrix: 1 when all degrees coincide, else 2

  explicit WeightSystem(IntVec degs);
  int count() const { return int(degrees.size()); }
};

// Exact number of x in N^r with sum x_i d_i = mu and sum x_i = t.
Int evaluate(const WeightSystem& w, const Int& mu, const Int& t);

// Graded dimension of the free weighted polynomial ring; same count.
Int hilbert_function_weighted(const WeightSystem& w, const Int& mu, const Int& t);

// Batch evaluation; the default entry point splits the batch across threads.
std::vector<Int> evaluate_many(const WeightSystem& w, const std::vector<std::pair<Int, Int>>& points);
std::vector<Int> evaluate_many_serial(const WeightSystem& w,
                                      const std::vector<std::pair<Int, Int>>& points);

// Closed cone between two consecutive distinct degree rays, with its period
// lattices. All distinct degrees equal collapses to a single-ray chamber.
struct Chamber {
  IntVec low_ray, high_ray;  // primitive (d, 1)
  Lattice lattice;           // intersection of pair lattices separated by this chamber
  Lattice global_lattice;    // intersection over all nonsingular pairs

  bool degenerate() const { return low_ray == high_ray; }
};

std::vector<Chamber> chamber_complex(const WeightSystem& w);

// Bivariate polynomial in (mu, t) with exact rational coefficients, keyed by
// (exp_mu, exp_t).
struct Poly2 {
  std::map<std::pair<int, int>, Rat> coeffs;

  Rat eval(const Int& mu, const Int& t) const;
  int total_degree() const;
  bool operator==(const Poly2& o) const { return coeffs == o.coeffs; }
};

// One polynomial per coset of the period lattice, valid on a chamber closure.
struct QuasiPolynomial {
  Lattice lattice;
  std::map<IntVec, Poly2> coset_polys;

  Rat value_at(const Int& mu, const Int& t) const;
};

// Inclusive row range: all integer t with lo <= t <= hi.
struct TRange {
  long lo = 0;
  long hi = 0;
};

// Monomial exponents (exp_mu, exp_t) of total degree <= cap; with t_only set,
// only pure t powers (for data living on a single ray, where mu is a function
// of t).
std::vector<std::pair<int, int>> monomial_basis(int cap, bool t_only);

// Exact solve of an overdetermined consistent system: rows of `a` times the
// coefficient vector equal `b`. Throws on rank deficiency or inconsistency,
// tagging the message with `what`.
RatVec solve_fit(std::vector<RatVec> a, RatVec b, const std::string& what);

// Interpolates one polynomial of total degree <= r - rank per coset from
// chamber points in the fit rows, then certifies exact agreement with
// evaluate() on every closed-chamber point of the validation rows.
QuasiPolynomial fit_quasi_polynomial(const WeightSystem& w, const Chamber& c, TRange fit_rows,
                                     TRange validate_rows);

// Default fit rows: deep enough in the cone and wide enough to fill every coset.
TRange default_fit_rows(const WeightSystem& w, const Chamber& c);

}  // namespace vpart::partition
