#include "vpart/polyhedron.hpp"

#include <algorithm>
#include <map>

#include "vpart/error.hpp"
#include "vpart/parallel.hpp"

namespace vpart::polyhedra {

namespace {

// Inequality system sum(a_j x_j) <= b with exact dedup: equal coefficient
// vectors keep the tightest bound. A row with zero coefficients and negative
// bound marks the system infeasible.
struct System {
  int nvars = 0;
  std::map<IntVec, Int> rows;
  bool infeasible = false;

  void add(IntVec a, Int b) {
    bool all_zero = true;
    Int g(0);
    for (const auto& c : a) {
      if (c != 0) all_zero = false;
      g = gcd_int(g, c);
    }
    if (all_zero) {
      if (b < 0) infeasible = true;
      return;
    }
    g = gcd_int(g, b);
    if (g > 1) {
      for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    }
    auto it = rows.find(a);
    if (it == rows.end())
      rows.emplace(std::move(a), std::move(b));
    else if (b < it->second)
      it->second = std::move(b);
  }
};

System build_system(const Polyhedron& p) {
  System s;
  s.nvars = p.dim;
  for (int i = 0; i < p.ineq_c.rows(); ++i) s.add(p.ineq_c.row(i), p.ineq_b[i]);
  for (int i = 0; i < p.eq_a.rows(); ++i) {
    IntVec r = p.eq_a.row(i);
    s.add(r, p.eq_b[i]);
    for (auto& c : r) c = -c;
    s.add(std::move(r), -p.eq_b[i]);
  }
  return s;
}

System eliminate_last(const System& s) {
  System out;
  out.nvars = s.nvars - 1;
  out.infeasible = s.infeasible;
  const int k = s.nvars - 1;
  std::vector<const std::pair<const IntVec, Int>*> pos, neg;
  for (const auto& row : s.rows) {
    const Int& c = row.first[k];
    if (c == 0) {
      IntVec a(row.first.begin(), row.first.end() - 1);
      out.add(std::move(a), row.second);
    } else if (c > 0) {
      pos.push_back(&row);
    } else {
      neg.push_back(&row);
    }
  }
  for (const auto* p : pos)
    for (const auto* q : neg) {
      const Int cp = p->first[k];
      const Int cq = -q->first[k];
      IntVec a(out.nvars);
      for (int j = 0; j < out.nvars; ++j) a[j] = cq * p->first[j] + cp * q->first[j];
      out.add(std::move(a), cq * p->second + cp * q->second);
    }
  return out;
}

// chain[k] constrains variables 0..k-1; chain[p.dim] is the input system.
std::vector<System> projection_chain(const Polyhedron& p) {
  std::vector<System> chain(p.dim + 1);
  chain[p.dim] = build_system(p);
  for (int k = p.dim; k > 0; --k) chain[k - 1] = eliminate_last(chain[k]);
  return chain;
}

// Bounds for variable k-1 in chain[k] given the fixed prefix x[0..k-2].
// Returns false when the integer interval is empty.
bool level_bounds(const System& sys, const IntVec& x, int k, Int& lo, Int& hi) {
  bool have_lo = false, have_hi = false;
  for (const auto& [a, b] : sys.rows) {
    const Int& c = a[k];
    if (c == 0) continue;
    Int s(0);
    for (int j = 0; j < k; ++j)
      if (a[j] != 0) s += a[j] * x[j];
    Int rem = b - s;
    if (c > 0) {
      Int cand = floor_div(rem, c);
      if (!have_hi || cand < hi) hi = cand;
      have_hi = true;
    } else {
      Int cand = ceil_div(rem, c);
      if (!have_lo || cand > lo) lo = cand;
      have_lo = true;
    }
  }
  // Both directions exist by the boundedness screen.
  return have_lo && have_hi && lo <= hi;
}

// Verifies every variable is bounded in both directions level by level.
// Returns the index of an unbounded level, or 0 when all levels are bounded.
int unbounded_level(const std::vector<System>& chain) {
  for (size_t k = 1; k < chain.size(); ++k) {
    bool has_pos = false, has_neg = false;
    for (const auto& [a, b] : chain[k].rows) {
      const Int& c = a[int(k) - 1];
      if (c > 0) has_pos = true;
      if (c < 0) has_neg = true;
    }
    if (!has_pos || !has_neg) return int(k);
  }
  return 0;
}

bool chain_infeasible(const std::vector<System>& chain) {
  for (const auto& s : chain)
    if (s.infeasible) return true;
  return false;
}

void enumerate_rec(const std::vector<System>& chain, IntVec& x, int k, int n,
                   std::vector<IntVec>& out) {
  Int lo, hi;
  if (!level_bounds(chain[k + 1], x, k, lo, hi)) return;
  for (Int v = lo; v <= hi; ++v) {
    x[k] = v;
    if (k == n - 1)
      out.push_back(x);
    else
      enumerate_rec(chain, x, k + 1, n, out);
  }
}

void count_rec(const std::vector<System>& chain, IntVec& x, int k, int n, Int& acc) {
  Int lo, hi;
  if (!level_bounds(chain[k + 1], x, k, lo, hi)) return;
  if (k == n - 1) {
    acc += hi - lo + 1;
    return;
  }
  for (Int v = lo; v <= hi; ++v) {
    x[k] = v;
    count_rec(chain, x, k + 1, n, acc);
  }
}

// Shared screen for the enumeration entry points. Returns true when the caller
// should return an empty result immediately.
bool screen_empty_or_throw(const Polyhedron& p, const std::vector<System>& chain) {
  if (chain_infeasible(chain)) return true;
  if (int k = unbounded_level(chain)) {
    if (!rational_feasible(p)) return true;
    throw Error("unbounded", "polyhedron is unbounded in coordinate " + std::to_string(k - 1),
                "coordinate " + std::to_string(k - 1));
  }
  return false;
}

}  // namespace

Polyhedron fiber_polytope(const IntMatrix& a, const IntVec& b) {
  if (int(b.size()) != a.rows()) throw Error("shape", "rhs length mismatch");
  Polyhedron p;
  p.dim = a.cols();
  p.eq_a = a;
  p.eq_b = b;
  p.ineq_c = IntMatrix(p.dim, p.dim);
  for (int i = 0; i < p.dim; ++i) p.ineq_c.at(i, i) = -1;
  p.ineq_b.assign(p.dim, Int(0));
  return p;
}

IntVec ReducedPolytope::map_point(const IntVec& lambda) const {
  IntVec x = generators * lambda;
  for (size_t i = 0; i < x.size(); ++i) x[i] += x0[i];
  return x;
}

std::optional<ReducedPolytope> reduce_to_full_dim(const IntMatrix& a, const IntVec& b) {
  using namespace linalg;
  if (rank(a) != a.rows())
    throw Error("rank-deficient", "equality matrix does not have full row rank");
  auto x0 = solve_integer(a, b);
  if (!x0) return std::nullopt;
  IntMatrix g = integer_nullspace(a);
  ReducedPolytope r;
  r.x0 = *x0;
  r.generators = g;
  r.q.dim = g.cols();
  r.q.ineq_c = IntMatrix(g.rows(), g.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) r.q.ineq_c.at(i, j) = -g.at(i, j);
  r.q.ineq_b = *x0;
  return r;
}

std::vector<IntVec> enumerate_lattice_points_serial(const Polyhedron& p) {
  if (p.dim < 1) throw Error("shape", "polyhedron dimension must be positive");
  auto chain = projection_chain(p);
  if (screen_empty_or_throw(p, chain)) return {};
  std::vector<IntVec> out;
  IntVec x(p.dim, Int(0));
  enumerate_rec(chain, x, 0, p.dim, out);
  return out;
}

std::vector<IntVec> enumerate_lattice_points(const Polyhedron& p) {
  if (p.dim < 1) throw Error("shape", "polyhedron dimension must be positive");
  auto chain = projection_chain(p);
  if (screen_empty_or_throw(p, chain)) return {};

  IntVec none;
  Int lo, hi;
  if (!level_bounds(chain[1], none, 0, lo, hi)) return {};
  long width_l = 0;
  {
    Int width = hi - lo + 1;
    width_l = width.fits_slong_p() ? width.get_si() : 0;  // 0: too wide, stay serial
  }
  const int threads = parallel::max_threads();
  if (threads <= 1 || p.dim == 1 || width_l < 2) {
    std::vector<IntVec> out;
    IntVec x(p.dim, Int(0));
    enumerate_rec(chain, x, 0, p.dim, out);
    return out;
  }

  // Independent branches per leading coordinate; concatenation in coordinate
  // order keeps the result lexicographically sorted.
  std::vector<std::vector<IntVec>> buckets(static_cast<size_t>(width_l));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < width_l; ++i) {
    IntVec x(p.dim, Int(0));
    x[0] = lo + i;
    enumerate_rec(chain, x, 1, p.dim, buckets[size_t(i)]);
  }
  std::vector<IntVec> out;
  for (auto& b : buckets) {
    out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  }
  return out;
}

Int count_lattice_points(const Polyhedron& p) {
  if (p.dim < 1) throw Error("shape", "polyhedron dimension must be positive");
  auto chain = projection_chain(p);
  if (screen_empty_or_throw(p, chain)) return 0;
  Int acc(0);
  IntVec x(p.dim, Int(0));
  count_rec(chain, x, 0, p.dim, acc);
  return acc;
}

bool rational_feasible(const Polyhedron& p) {
  System s = build_system(p);
  if (s.infeasible) return false;
  for (int k = p.dim; k > 0; --k) {
    s = eliminate_last(s);
    if (s.infeasible) return false;
  }
  return true;
}

namespace {

using Pt = std::array<Int, 2>;

Int cross3(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const Pt& p, const Pt& q, const Pt& r) {
  if (cross3(p, q, r) != 0) return false;
  return std::min(p[0], q[0]) <= r[0] && r[0] <= std::max(p[0], q[0]) &&
         std::min(p[1], q[1]) <= r[1] && r[1] <= std::max(p[1], q[1]);
}

bool segments_intersect(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
  Int d1 = cross3(q1, q2, p1);
  Int d2 = cross3(q1, q2, p2);
  Int d3 = cross3(p1, p2, q1);
  Int d4 = cross3(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

Int pick_count(const std::vector<std::array<Int, 2>>& vertices) {
  const size_t n = vertices.size();
  if (n < 3) throw Error("degenerate", "polygon needs at least three vertices");
  for (size_t i = 0; i < n; ++i) {
    if (vertices[i] == vertices[(i + 1) % n])
      throw Error("degenerate", "zero-length polygon edge at vertex " + std::to_string(i));
  }
  // Adjacent edges may continue straight but must not double back.
  for (size_t i = 0; i < n; ++i) {
    const Pt& prev = vertices[(i + n - 1) % n];
    const Pt& v = vertices[i];
    const Pt& next = vertices[(i + 1) % n];
    if (cross3(v, prev, next) == 0) {
      Int dot = (prev[0] - v[0]) * (next[0] - v[0]) + (prev[1] - v[1]) * (next[1] - v[1]);
      if (dot > 0) throw Error("self-intersecting", "edges double back at vertex " + std::to_string(i));
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]))
        throw Error("self-intersecting",
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
  Int twice_area(0), boundary(0);
  for (size_t i = 0; i < n; ++i) {
    const Pt& a = vertices[i];
    const Pt& b = vertices[(i + 1) % n];
    twice_area += a[0] * b[1] - b[0] * a[1];
    boundary += gcd_int(b[0] - a[0], b[1] - a[1]);
  }
  twice_area = abs_int(twice_area);
  if (twice_area == 0) throw Error("degenerate", "polygon has zero area");
  // Area + boundary/2 + 1; 2A and B always have equal parity.
  Int total = twice_area + boundary;
  Int half;
  mpz_divexact_ui(half.get_mpz_t(), total.get_mpz_t(), 2);
  return half + 1;
}

}  // namespace vpart::polyhedra
