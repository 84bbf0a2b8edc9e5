#include "vpart/partition.hpp"

#include <algorithm>

#include "vpart/error.hpp"
#include "vpart/parallel.hpp"
#include "vpart/polyhedron.hpp"

namespace vpart::partition {

WeightSystem::WeightSystem(IntVec degs) : degrees(std::move(degs)) {
  if (degrees.empty()) throw Error("invalid-degrees", "at least one degree required");
  for (const auto& d : degrees)
    if (d <= 0) throw Error("invalid-degrees", "degrees must be positive");
  std::sort(degrees.begin(), degrees.end());
  matrix = IntMatrix(2, int(degrees.size()));
  for (int j = 0; j < int(degrees.size()); ++j) {
    matrix.at(0, j) = degrees[size_t(j)];
    matrix.at(1, j) = 1;
  }
  rank = linalg::rank(matrix);
}

Int evaluate(const WeightSystem& w, const Int& mu, const Int& t) {
  if (t < 0 || mu < 0) return 0;
  // Counting on the reduced full-dimensional polytope drops two variables.
  if (w.rank < 2)
    return polyhedra::count_lattice_points(polyhedra::fiber_polytope(w.matrix, {mu, t}));
  auto red = polyhedra::reduce_to_full_dim(w.matrix, {mu, t});
  if (!red) return 0;
  if (red->q.dim == 0) {
    for (const auto& c : red->x0)
      if (c < 0) return 0;
    return 1;
  }
  return polyhedra::count_lattice_points(red->q);
}

Int hilbert_function_weighted(const WeightSystem& w, const Int& mu, const Int& t) {
  return evaluate(w, mu, t);
}

std::vector<Int> evaluate_many_serial(const WeightSystem& w,
                                      const std::vector<std::pair<Int, Int>>& points) {
  std::vector<Int> out(points.size());
  for (size_t i = 0; i < points.size(); ++i) out[i] = evaluate(w, points[i].first, points[i].second);
  return out;
}

std::vector<Int> evaluate_many(const WeightSystem& w, const std::vector<std::pair<Int, Int>>& points) {
  const int threads = parallel::max_threads();
  if (threads <= 1 || points.size() < 2) return evaluate_many_serial(w, points);
  std::vector<Int> out(points.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long i = 0; i < long(points.size()); ++i)
    out[size_t(i)] = evaluate(w, points[size_t(i)].first, points[size_t(i)].second);
  return out;
}

namespace {

Lattice pair_lattice(const Int& di, const Int& dj) {
  IntMatrix g(2, 2);
  g.at(0, 0) = di;
  g.at(0, 1) = dj;
  g.at(1, 0) = 1;
  g.at(1, 1) = 1;
  return Lattice(2, g);
}

}  // namespace

std::vector<Chamber> chamber_complex(const WeightSystem& w) {
  IntVec distinct = w.degrees;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int s = int(distinct.size());

  Lattice global(2, IntMatrix::identity(2));
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      global = linalg::lattice_intersection(global, pair_lattice(distinct[i], distinct[j]));

  std::vector<Chamber> chambers;
  if (s == 1) {
    IntVec ray = {distinct[0], Int(1)};
    chambers.push_back(Chamber{ray, ray, global, global});
    return chambers;
  }
  for (int l = 0; l + 1 < s; ++l) {
    Lattice lat(2, IntMatrix::identity(2));
    for (int i = 0; i <= l; ++i)
      for (int j = l + 1; j < s; ++j)
        lat = linalg::lattice_intersection(lat, pair_lattice(distinct[i], distinct[j]));
    chambers.push_back(Chamber{{distinct[l], Int(1)}, {distinct[l + 1], Int(1)}, lat, global});
  }
  return chambers;
}

Rat Poly2::eval(const Int& mu, const Int& t) const {
  Rat acc(0);
  for (const auto& [e, c] : coeffs) {
    Rat m = c;
    for (int i = 0; i < e.first; ++i) m *= Rat(mu);
    for (int i = 0; i < e.second; ++i) m *= Rat(t);
    acc += m;
  }
  return acc;
}

int Poly2::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : coeffs)
    if (c != 0) d = std::max(d, e.first + e.second);
  return d;
}

Rat QuasiPolynomial::value_at(const Int& mu, const Int& t) const {
  IntVec rep = lattice.coset_rep({mu, t});
  auto it = coset_polys.find(rep);
  if (it == coset_polys.end())
    throw Error("unknown-coset", "no polynomial fitted for this residue class",
                "(" + to_string(mu) + "," + to_string(t) + ")");
  return it->second.eval(mu, t);
}

// Monomial exponents (exp_mu, exp_t) of total degree <= cap; for single-ray
// chambers points are functions of t alone, so only pure t powers are used.
std::vector<std::pair<int, int>> monomial_basis(int cap, bool t_only) {
  std::vector<std::pair<int, int>> out;
  for (int d = 0; d <= cap; ++d)
    for (int i = 0; i <= d; ++i) {
      if (t_only && i > 0) continue;
      out.emplace_back(i, d - i);
    }
  return out;
}

// Exact solve of an overdetermined consistent system: rows of `a` times the
// coefficient vector equal `b`. Throws on rank deficiency or inconsistency.
RatVec solve_fit(std::vector<RatVec> a, RatVec b, const std::string& what) {
  const size_t m = a.size();
  const size_t n = m == 0 ? 0 : a[0].size();
  size_t row = 0;
  std::vector<size_t> pivot_of_col(n, SIZE_MAX);
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t p = SIZE_MAX;
    for (size_t i = row; i < m; ++i)
      if (a[i][col] != 0) {
        p = i;
        break;
      }
    if (p == SIZE_MAX) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[row][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (size_t col = 0; col < n; ++col)
    if (pivot_of_col[col] == SIZE_MAX)
      throw Error("singular-fit", "interpolation system is rank deficient: " + what);
  for (size_t i = row; i < m; ++i)
    if (b[i] != 0) throw Error("fit-inconsistent", "points do not lie on one polynomial: " + what);
  RatVec x(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pr = pivot_of_col[col];
    x[col] = b[pr] / a[pr][col];
  }
  return x;
}

namespace {

struct FitPoint {
  Int mu, t;
};

}  // namespace

TRange default_fit_rows(const WeightSystem& w, const Chamber& c) {
  long r = w.count();
  Int det = c.global_lattice.determinant();
  long d = det.fits_slong_p() ? det.get_si() : 1000;
  return TRange{10 * r, 10 * r + 4 * d};
}

QuasiPolynomial fit_quasi_polynomial(const WeightSystem& w, const Chamber& c, TRange fit_rows,
                                     TRange validate_rows) {
  const Lattice& lat = c.global_lattice;
  const int cap = w.count() - linalg::rank(w.matrix);
  const bool degenerate = c.degenerate();
  const auto basis = monomial_basis(cap, degenerate);
  const size_t nmono = basis.size();
  const size_t quota = nmono + 3;
  const size_t row_cap = degenerate ? quota : size_t(cap) + 1;

  // Lazy scan of the fit rows: points join their coset's bucket until the
  // quota is met, at most row_cap from any one row so rows stay independent.
  std::map<IntVec, std::vector<FitPoint>> buckets;
  for (const auto& rep : lat.coset_reps()) buckets[rep] = {};
  size_t unfilled = buckets.size();
  for (long tl = fit_rows.lo; tl <= fit_rows.hi && unfilled > 0; ++tl) {
    Int t(tl);
    Int mu_lo = c.low_ray[0] * t;
    Int mu_hi = c.high_ray[0] * t;
    if (!degenerate) {
      mu_lo += 1;  // interior points keep clear of both rays
      mu_hi -= 1;
    }
    std::map<IntVec, size_t> taken_this_row;
    for (Int mu = mu_lo; mu <= mu_hi; ++mu) {
      IntVec rep = lat.coset_rep({mu, t});
      auto& bucket = buckets[rep];
      if (bucket.size() >= quota) continue;
      size_t& taken = taken_this_row[rep];
      if (taken >= row_cap) continue;
      bucket.push_back(FitPoint{mu, t});
      ++taken;
      if (bucket.size() == quota) --unfilled;
    }
  }

  for (const auto& [rep, bucket] : buckets)
    if (bucket.empty())
      throw Error("insufficient-points", "fit rows never reach residue class",
                  "(" + to_string(rep[0]) + "," + to_string(rep[1]) + ")");

  // One exact interpolation per coset, counts evaluated as one batch.
  std::vector<std::pair<Int, Int>> all_points;
  for (const auto& [rep, bucket] : buckets)
    for (const auto& p : bucket) all_points.emplace_back(p.mu, p.t);
  std::vector<Int> counts = evaluate_many(w, all_points);

  QuasiPolynomial qp{lat, {}};
  size_t at = 0;
  for (const auto& [rep, bucket] : buckets) {
    std::vector<RatVec> a;
    RatVec b;
    for (const auto& p : bucket) {
      RatVec row(nmono);
      for (size_t j = 0; j < nmono; ++j) {
        Rat m(1);
        for (int i = 0; i < basis[j].first; ++i) m *= Rat(p.mu);
        for (int i = 0; i < basis[j].second; ++i) m *= Rat(p.t);
        row[j] = m;
      }
      a.push_back(std::move(row));
      b.push_back(Rat(counts[at++]));
    }
    RatVec coeff = solve_fit(std::move(a), std::move(b),
                             "residue (" + to_string(rep[0]) + "," + to_string(rep[1]) + ")");
    Poly2 poly;
    for (size_t j = 0; j < nmono; ++j)
      if (coeff[j] != 0) poly.coeffs[basis[j]] = coeff[j];
    qp.coset_polys.emplace(rep, std::move(poly));
  }

  // Certification: exact agreement on every closed-chamber point of the
  // validation rows.
  std::vector<std::pair<Int, Int>> vpoints;
  for (long tl = validate_rows.lo; tl <= validate_rows.hi; ++tl) {
    Int t(tl);
    for (Int mu = c.low_ray[0] * t; mu <= c.high_ray[0] * t; ++mu) vpoints.emplace_back(mu, t);
  }
  std::vector<Int> vcounts = evaluate_many(w, vpoints);
  for (size_t i = 0; i < vpoints.size(); ++i) {
    Rat predicted = qp.value_at(vpoints[i].first, vpoints[i].second);
    if (predicted != Rat(vcounts[i]))
      throw Error("validation-mismatch", "fitted polynomial disagrees with the exact count",
                  "(" + to_string(vpoints[i].first) + "," + to_string(vpoints[i].second) + ")");
  }
  return qp;
}

}  // namespace vpart::partition
