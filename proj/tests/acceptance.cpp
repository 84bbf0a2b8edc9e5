// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each, nonzero
// exit when any fails. All comparisons are exact; the only tolerances are the
// wall-clock limits pinned below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vpart/asymptotics.hpp"
#include "vpart/betti.hpp"
#include "vpart/error.hpp"
#include "vpart/genfun.hpp"
#include "vpart/matrix.hpp"
#include "vpart/monomial.hpp"
#include "vpart/numeric.hpp"
#include "vpart/partition.hpp"
#include "vpart/polyhedron.hpp"

namespace {

using namespace vpart;
using monomial::MonomialIdeal;

constexpr double kHnfLimit = 0.1;
constexpr double kCountLimit = 5.0;
constexpr double kFitLimit = 60.0;
constexpr double kRegionLimit = 120.0;

const linalg::IntMatrix& degree_matrix() {
  static const linalg::IntMatrix a{{3, 5, 8, 9}, {1, 1, 1, 1}};
  return a;
}

MonomialIdeal mk(int nvars, std::vector<monomial::Expo> gens) {
  return MonomialIdeal(nvars, std::move(gens));
}

// ---------------------------------------------------------------------------
// Criterion 5 helpers: exact lattice-point oracle for simple polygons.

using Pt = std::array<long, 2>;

long cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strict-turn monotone chain; empty result when all points are collinear.
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  std::vector<Pt> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h.size() >= 3 ? h : std::vector<Pt>{};
}

// Boundary counts as inside; ray casting with exact integer comparisons.
bool point_in_polygon(const std::vector<Pt>& poly, long x, long y) {
  bool in = false;
  for (size_t k = 0; k < poly.size(); ++k) {
    const Pt& a = poly[k];
    const Pt& b = poly[(k + 1) % poly.size()];
    const long side = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
    if (side == 0 && std::min(a[0], b[0]) <= x && x <= std::max(a[0], b[0]) &&
        std::min(a[1], b[1]) <= y && y <= std::max(a[1], b[1]))
      return true;
    if ((a[1] > y) != (b[1] > y)) {
      const long num = (b[0] - a[0]) * (y - a[1]);
      const long den = b[1] - a[1];
      const long lhs = (x - a[0]) * den;
      if (den > 0 ? lhs < num : lhs > num) in = !in;
    }
  }
  return in;
}

long scan_count(const std::vector<Pt>& poly) {
  long xlo = poly[0][0], xhi = xlo, ylo = poly[0][1], yhi = ylo;
  for (const Pt& p : poly) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  long count = 0;
  for (long x = xlo; x <= xhi; ++x)
    for (long y = ylo; y <= yhi; ++y) count += point_in_polygon(poly, x, y);
  return count;
}

bool pick_matches(const std::vector<Pt>& poly) {
  std::vector<std::array<Int, 2>> verts;
  for (const Pt& p : poly) verts.push_back({Int(p[0]), Int(p[1])});
  return polyhedra::pick_count(verts) == scan_count(poly);
}

// ---------------------------------------------------------------------------
// Criterion 6 helpers: direct Hilbert function of a monomial quotient.

long binom(long m, long k) {
  if (k < 0 || m < 0 || k > m) return 0;
  long r = 1;
  for (long j = 1; j <= k; ++j) r = r * (m - k + j) / j;
  return r;
}

long ring_dim(int nvars, long d) { return d < 0 ? 0 : binom(d + nvars - 1, nvars - 1); }

// Number of degree-nu monomials outside the ideal.
long quotient_dim(const MonomialIdeal& i, long nu) {
  monomial::Expo e(size_t(i.nvars()), 0);
  long out = 0;
  const std::function<void(int, long)> rec = [&](int pos, long rem) {
    if (pos == i.nvars() - 1) {
      e[size_t(pos)] = rem;
      out += i.contains_monomial(e) ? 0 : 1;
      return;
    }
    for (long k = 0; k <= rem; ++k) {
      e[size_t(pos)] = k;
      rec(pos + 1, rem - k);
    }
  };
  rec(0, nu);
  return out;
}

// Alternating sum over the resolution of the quotient, nu fixed.
long quotient_dim_from_betti(const MonomialIdeal& i, const betti::MultigradedBetti& b, long nu) {
  long total = ring_dim(i.nvars(), nu);
  for (const auto& [key, beta] : b) {
    long deg = 0;
    for (long e : key.second) deg += e;
    const long sign = key.first % 2 == 0 ? -1 : 1;
    total += sign * beta * ring_dim(i.nvars(), nu - deg);
  }
  return total;
}

long betti_entry(const betti::BettiTable& t, int i, long mu) {
  const auto it = t.entries.find({i, mu});
  return it == t.entries.end() ? 0 : it->second;
}

struct Gate {
  int failed = 0;

  template <class Body>
  void criterion(int id, const char* label, double limit_s, Body&& body) {
    std::string note;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(note);
    } catch (const Error& e) {
      note = std::string(e.code()) + ": " + e.what();
    } catch (const std::exception& e) {
      note = e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && limit_s > 0 && dt > limit_s) {
      ok = false;
      note = "exceeded " + std::to_string(limit_s) + "s limit";
    }
    if (!ok) ++failed;
    std::printf("%s %2d %-46s (%.3fs)%s%s\n", ok ? "PASS" : "FAIL", id, label, dt,
                note.empty() ? "" : " ", note.c_str());
  }
};

}  // namespace

int main() {
  Gate gate;
  int max_fit_degree = -1;

  gate.criterion(1, "hermite-form-of-the-degree-matrix", kHnfLimit, [&](std::string& note) {
    const auto& a = degree_matrix();
    const auto r = linalg::hnf(a);
    const linalg::IntMatrix want{{1, 0, 0, 0}, {0, 1, 0, 0}};
    if (r.h != want) {
      note = "unexpected reduced matrix";
      return false;
    }
    if (a * r.u != r.h) {
      note = "A*U differs from H";
      return false;
    }
    if (abs_int(linalg::determinant(r.u)) != 1) {
      note = "transform not unimodular";
      return false;
    }
    return true;
  });

  gate.criterion(2, "three-way-count-agreement-on-59-points", kCountLimit, [&](std::string& note) {
    const auto& a = degree_matrix();
    const partition::WeightSystem w({Int(3), Int(5), Int(8), Int(9)});
    std::set<std::pair<long, long>> grid;
    for (long n = 0; n <= 8; ++n)
      for (long nu : {3 * n - 1, 3 * n, 3 * n + 1, 6 * n, 9 * n - 1, 9 * n, 9 * n + 1})
        grid.insert({nu, n});
    if (grid.size() < 50) {
      note = "grid too small";
      return false;
    }
    for (const auto& [nu, n] : grid) {
      const IntVec rhs = {Int(nu), Int(n)};
      const Int direct = long(polyhedra::enumerate_lattice_points(
                                  polyhedra::fiber_polytope(a, rhs))
                                  .size());
      const auto red = polyhedra::reduce_to_full_dim(a, rhs);
      const Int reduced = red ? Int(long(polyhedra::enumerate_lattice_points(red->q).size())) : Int(0);
      const Int phi = partition::evaluate(w, rhs[0], rhs[1]);
      if (direct != reduced || direct != phi) {
        note = "disagreement at (" + std::to_string(nu) + "," + std::to_string(n) + ")";
        return false;
      }
    }
    if (partition::evaluate(w, 30, 5) != 2) {
      note = "count at (30,5) is not 2";
      return false;
    }
    return true;
  });

  gate.criterion(3, "chamber-fits-reproduce-exact-counts", kFitLimit, [&](std::string& note) {
    max_fit_degree = -1;
    for (const IntVec degs : {IntVec{3, 5, 8, 9}, IntVec{3, 5, 7, 9}}) {
      const partition::WeightSystem w(degs);
      for (const auto& c : partition::chamber_complex(w)) {
        const auto q = partition::fit_quasi_polynomial(w, c, {41, 140}, {41, 45});
        for (const auto& [rep, poly] : q.coset_polys)
          max_fit_degree = std::max(max_fit_degree, poly.total_degree());
        const Int dlo = c.low_ray[0], dhi = c.high_ray[0];
        for (long t = 31; t <= 40; ++t) {
          for (Int mu = dlo * t + 1; mu < dhi * t; ++mu) {
            if (q.value_at(mu, t) != Rat(partition::evaluate(w, mu, t))) {
              note = "mismatch at t=" + std::to_string(t) + ", mu=" + mu.get_str();
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  gate.criterion(4, "fitted-polynomials-within-degree-cap", 0, [&](std::string& note) {
    if (max_fit_degree < 0) {
      note = "no certified polynomials available";
      return false;
    }
    if (max_fit_degree > 2) {
      note = "total degree " + std::to_string(max_fit_degree) + " exceeds 2";
      return false;
    }
    return true;
  });

  gate.criterion(5, "pick-and-vertex-cone-identities", 0, [&](std::string& note) {
    std::mt19937 rng(20260816u);
    int made = 0;
    while (made < 20) {
      std::vector<Pt> pts(8);
      for (Pt& p : pts) {
        p[0] = long(rng() % 11) - 5;
        p[1] = long(rng() % 11) - 5;
      }
      const auto hull = convex_hull(pts);
      if (hull.empty()) continue;
      ++made;
      if (!pick_matches(hull)) {
        note = "random polygon " + std::to_string(made) + " disagrees with enumeration";
        return false;
      }
    }
    const std::vector<std::vector<Pt>> bent = {
        {{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 5}, {0, 5}},
        {{0, 0}, {5, 0}, {5, 1}, {1, 1}, {1, 2}, {4, 2}, {4, 3}, {0, 3}},
        {{-4, 0}, {-1, 1}, {0, 4}, {1, 1}, {4, 0}, {1, -1}, {0, -4}, {-1, -1}},
        {{0, 0}, {1, 0}, {1, 3}, {2, 3}, {2, 0}, {3, 0}, {3, 4}, {0, 4}},
        {{0, 0}, {4, 1}, {0, 2}, {1, 1}}};
    for (size_t k = 0; k < bent.size(); ++k) {
      if (!pick_matches(bent[k])) {
        note = "bent polygon " + std::to_string(k) + " disagrees with enumeration";
        return false;
      }
    }
    const std::vector<RatVec> square = {
        {Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    const std::vector<RatVec> triangle = {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
    const std::vector<RatVec> segment = {{Rat(0)}, {Rat(5)}};
    if (!genfun::brion_check(square, {{Int(-1), Int(-1)}, {Int(2), Int(2)}})) {
      note = "vertex-cone sum fails on the unit square";
      return false;
    }
    if (!genfun::brion_check(triangle, {{Int(-1), Int(-1)}, {Int(3), Int(3)}})) {
      note = "vertex-cone sum fails on the right triangle";
      return false;
    }
    if (!genfun::brion_check(segment, {{Int(-1)}, {Int(6)}})) {
      note = "vertex-cone sum fails on the segment";
      return false;
    }
    return true;
  });

  gate.criterion(6, "koszul-vs-taylor-betti-on-fifteen-ideals", 0, [&](std::string& note) {
    std::vector<MonomialIdeal> corpus;
    const MonomialIdeal m2 = mk(2, {{1, 0}, {0, 1}});
    const MonomialIdeal ci23 = mk(2, {{2, 0}, {0, 3}});
    for (long d = 1; d <= 5; ++d) corpus.push_back(monomial::power(m2, d));
    for (long t = 1; t <= 5; ++t) corpus.push_back(monomial::power(ci23, t));
    corpus.push_back(mk(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
    corpus.push_back(mk(2, {{2, 0}, {1, 1}, {0, 3}}));
    corpus.push_back(mk(2, {{3, 0}, {0, 5}}));
    corpus.push_back(mk(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}}));
    corpus.push_back(monomial::power(mk(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 2));
    if (corpus.size() < 15) {
      note = "corpus too small";
      return false;
    }
    for (size_t k = 0; k < corpus.size(); ++k) {
      const auto& i = corpus[k];
      const auto koszul = betti::multigraded_betti(i);
      if (koszul != betti::taylor_betti_oracle(i)) {
        note = "betti tables disagree on ideal " + std::to_string(k);
        return false;
      }
      for (long nu = 0; nu <= 20; ++nu) {
        if (quotient_dim(i, nu) != quotient_dim_from_betti(i, koszul, nu)) {
          note = "hilbert mismatch on ideal " + std::to_string(k) + " at degree " +
                 std::to_string(nu);
          return false;
        }
      }
    }
    return true;
  });

  gate.criterion(7, "first-betti-row-equals-weighted-count", 0, [&](std::string& note) {
    const auto r23 = asymptotics::certify_ci_bridge({2, 3}, 6);
    if (!r23.ok) {
      note = "degrees 2,3 disagree at mu=" + std::to_string(r23.first_discrepancy->first) +
             ", t=" + std::to_string(r23.first_discrepancy->second);
      return false;
    }
    const auto r4 = asymptotics::certify_ci_bridge({3, 5, 8, 9}, 4);
    if (!r4.ok) {
      note = "degrees 3,5,8,9 disagree at mu=" + std::to_string(r4.first_discrepancy->first) +
             ", t=" + std::to_string(r4.first_discrepancy->second);
      return false;
    }
    return true;
  });

  gate.criterion(8, "region-detection-predicts-power-tables", kRegionLimit, [&](std::string& note) {
    const auto fam = betti::betti_family(
        monomial::build_filtration(monomial::FiltrationKind::powers, mk(2, {{2, 0}, {0, 3}}), 14));
    const partition::WeightSystem w({Int(2), Int(3)});
    const partition::Poly2 one{{{{0, 0}, Rat(1)}}};
    for (int i : {0, 1}) {
      const auto r = asymptotics::detect_regions(fam, i, w, {3, 9}, {10, 12});
      for (const auto& l : r.lines) {
        if (l.a != 2 && l.a != 3) {
          note = "row " + std::to_string(i) + " has slope " + l.a.get_str();
          return false;
        }
      }
      if (r.period != 1) {
        note = "row " + std::to_string(i) + " needs period " + std::to_string(r.period);
        return false;
      }
      for (const auto& [key, poly] : r.polys) {
        if (!(poly == one)) {
          note = "row " + std::to_string(i) + " polynomial is not identically 1";
          return false;
        }
      }
      for (long t = 13; t <= 14; ++t) {
        const auto& table = fam.tables.at(t);
        for (long mu = 0; mu <= 3 * t + 5; ++mu) {
          if (asymptotics::predict(r, mu, t) != betti_entry(table, i, mu)) {
            note = "prediction differs at i=" + std::to_string(i) + ", mu=" + std::to_string(mu) +
                   ", t=" + std::to_string(t);
            return false;
          }
        }
      }
    }
    return true;
  });

  gate.criterion(9, "closure-and-ratliff-rush-filtrations", 0, [&](std::string& note) {
    const MonomialIdeal ci33 = mk(2, {{3, 0}, {0, 3}});
    const auto f = monomial::build_filtration(monomial::FiltrationKind::integral_closure, ci33, 8);
    const auto rep = monomial::good_filtration_check(f, ci33);
    if (!rep.containment_ok) {
      note = "closure filtration violates containment at t=" + std::to_string(rep.violation_index);
      return false;
    }
    const auto r = asymptotics::detect_regions(betti::betti_family(f), 0,
                                               partition::WeightSystem({Int(3), Int(3)}), {3, 6},
                                               {7, 8});
    if (r.lines.size() != 1 || !(r.lines[0] == asymptotics::LineFunc{3, 0})) {
      note = "closure family not concentrated on the ray 3t";
      return false;
    }
    if (asymptotics::predict(r, 30, 10) != 31) {
      note = "closure generator count at t=10 is not 31";
      return false;
    }
    const MonomialIdeal rr4 = mk(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}});
    const auto rr = monomial::ratliff_rush(rr4, 10);
    if (!rr.ideal.contains_monomial({2, 2})) {
      note = "stable closure misses x^2*y^2";
      return false;
    }
    const auto frr = monomial::build_filtration(monomial::FiltrationKind::ratliff_rush, rr4, 6);
    const auto rep2 = monomial::good_filtration_check(frr, rr4);
    if (!rep2.containment_ok) {
      note = "ratliff-rush filtration violates containment at t=" +
             std::to_string(rep2.violation_index);
      return false;
    }
    return true;
  });

  gate.criterion(10, "reduction-numbers-of-parameter-subideals", 0, [&](std::string& note) {
    const MonomialIdeal m2sq = monomial::power(mk(2, {{1, 0}, {0, 1}}), 2);
    const auto r1 = monomial::is_reduction(mk(2, {{2, 0}, {0, 2}}), m2sq, 6);
    if (!r1 || *r1 != 1) {
      note = "(x^2,y^2) should have reduction number 1";
      return false;
    }
    const auto r2 = monomial::is_reduction(mk(2, {{2, 0}}), m2sq, 6);
    if (r2) {
      note = "(x^2) alone should not be a reduction";
      return false;
    }
    return true;
  });

  std::printf("acceptance: %d/10 criteria passed\n", 10 - gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
