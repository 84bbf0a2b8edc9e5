#include "vpart/genfun.hpp"

#include <algorithm>
#include <optional>

#include "vpart/error.hpp"
#include "vpart/polyhedron.hpp"

namespace vpart::genfun {

namespace {

Rat rat_cross(const RatVec& o, const RatVec& a, const RatVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Primitive integer vector pointing from `from` toward `to`.
IntVec primitive_direction(const RatVec& from, const RatVec& to) {
  const size_t d = from.size();
  Int den(1);
  for (size_t j = 0; j < d; ++j) {
    Rat diff = to[j] - from[j];
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), diff.get_den().get_mpz_t());
  }
  IntVec v(d);
  Int g(0);
  for (size_t j = 0; j < d; ++j) {
    Rat scaled = (to[j] - from[j]) * Rat(den);
    v[j] = scaled.get_num();
    g = gcd_int(g, v[j]);
  }
  if (g == 0) throw Error("non-convex", "repeated polytope vertex");
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return v;
}

// Solve rays * lambda = t over the rationals; nullopt when inconsistent.
// Columns of `rays` are linearly independent, so a solution is unique.
std::optional<RatVec> solve_rational(const std::vector<IntVec>& rays, const RatVec& t) {
  const int d = int(t.size());
  const int k = int(rays.size());
  std::vector<RatVec> m(d, RatVec(k + 1));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = Rat(rays[j][i]);
    m[i][k] = t[i];
  }
  int row = 0;
  std::vector<int> pivot_row(k, -1);
  for (int col = 0; col < k && row < d; ++col) {
    int p = -1;
    for (int i = row; i < d; ++i)
      if (m[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[row]);
    for (int i = 0; i < d; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col] / m[row][col];
      for (int j = col; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (int i = row; i < d; ++i)
    if (m[i][k] != 0) return std::nullopt;
  RatVec lambda(k, Rat(0));
  for (int col = 0; col < k; ++col) {
    if (pivot_row[col] < 0) return std::nullopt;  // dependent column, caller rejects earlier
    lambda[col] = m[pivot_row[col]][k] / m[pivot_row[col]][col];
  }
  return lambda;
}

// Lattice points of {apex + sum lambda_i rays_i : 0 <= lambda_i < 1}, lex sorted.
std::vector<IntVec> half_open_parallelepiped(const RatVec& apex, const std::vector<IntVec>& rays) {
  const int d = int(apex.size());
  IntVec lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    Rat a = apex[j], b = apex[j];
    for (const auto& r : rays) {
      if (r[j] > 0)
        b += Rat(r[j]);
      else
        a += Rat(r[j]);
    }
    lo[j] = ceil_rat(a);
    hi[j] = floor_rat(b);
  }
  std::vector<IntVec> out;
  IntVec x = lo;
  if (d == 0) return out;
  for (int j = 0; j < d; ++j)
    if (lo[j] > hi[j]) return out;
  while (true) {
    RatVec t(d);
    for (int j = 0; j < d; ++j) t[j] = Rat(x[j]) - apex[j];
    if (auto lambda = solve_rational(rays, t)) {
      bool inside = true;
      for (const auto& l : *lambda)
        if (l < 0 || l >= 1) {
          inside = false;
          break;
        }
      if (inside) out.push_back(x);
    }
    int j = d - 1;
    while (j >= 0 && x[j] == hi[j]) {
      x[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++x[j];
  }
  std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
  return out;
}

// Direction with nonzero pairing against every ray, found by trying
// w = (1, M, M^2, ...) for increasing M.
IntVec expansion_direction(const RationalGenFun& g) {
  const int d = g.dim;
  for (long m = 1; m <= 100000; ++m) {
    IntVec w(d);
    Int p(1);
    for (int j = 0; j < d; ++j) {
      w[j] = p;
      p *= m;
    }
    bool ok = true;
    for (const auto& term : g.terms) {
      for (const auto& r : term.denominator_rays) {
        Int dot(0);
        for (int j = 0; j < d; ++j) dot += w[j] * r[j];
        if (dot == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return w;
  }
  throw Error("not-expandable", "no direction separates all denominator rays");
}

}  // namespace

std::vector<VertexCone> vertex_cones(const std::vector<RatVec>& vertices) {
  const size_t n = vertices.size();
  if (n == 0) throw Error("non-convex", "polytope needs at least one vertex");
  const size_t d = vertices[0].size();
  for (const auto& v : vertices)
    if (v.size() != d) throw Error("shape", "vertices of mixed dimension");
  if (n == 1) return {VertexCone{vertices[0], {}}};
  if (n == 2) {
    return {VertexCone{vertices[0], {primitive_direction(vertices[0], vertices[1])}},
            VertexCone{vertices[1], {primitive_direction(vertices[1], vertices[0])}}};
  }
  if (d != 2) throw Error("shape", "polygons must be two dimensional");
  // Strictly convex in a consistent orientation.
  int sign = 0;
  for (size_t i = 0; i < n; ++i) {
    Rat c = rat_cross(vertices[(i + 1) % n], vertices[i], vertices[(i + 2) % n]);
    int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) throw Error("non-convex", "collinear or repeated vertex " + std::to_string((i + 1) % n));
    if (sign == 0) sign = s;
    if (s != sign) throw Error("non-convex", "reflex vertex " + std::to_string((i + 1) % n));
  }
  std::vector<VertexCone> cones;
  cones.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const RatVec& v = vertices[i];
    cones.push_back(VertexCone{
        v,
        {primitive_direction(v, vertices[(i + n - 1) % n]), primitive_direction(v, vertices[(i + 1) % n])}});
  }
  return cones;
}

RationalGenFun simplicial_cone_genfun(const RatVec& apex, const std::vector<IntVec>& rays) {
  const int d = int(apex.size());
  if (!rays.empty()) {
    IntMatrix m(d, int(rays.size()));
    for (int j = 0; j < int(rays.size()); ++j)
      for (int i = 0; i < d; ++i) m.at(i, j) = rays[size_t(j)][size_t(i)];
    if (linalg::rank(m) != int(rays.size())) throw Error("dependent-rays", "cone rays are linearly dependent");
  }
  RationalGenFun g;
  g.dim = d;
  ConeTerm term;
  term.sign = 1;
  term.numerator = half_open_parallelepiped(apex, rays);
  term.denominator_rays = rays;
  g.terms.push_back(std::move(term));
  return g;
}

RationalGenFun brion_sum(const std::vector<RatVec>& vertices) {
  RationalGenFun g;
  g.dim = int(vertices[0].size());
  for (const auto& cone : vertex_cones(vertices)) {
    RationalGenFun c = simplicial_cone_genfun(cone.apex, cone.rays);
    for (auto& t : c.terms) g.terms.push_back(std::move(t));
  }
  return g;
}

TruncatedSeries truncate(const RationalGenFun& g, const Box& box) {
  if (int(box.lo.size()) != g.dim || int(box.hi.size()) != g.dim)
    throw Error("shape", "box dimension mismatch");
  TruncatedSeries out;
  out.box = box;
  if (g.terms.empty()) return out;
  const IntVec w = expansion_direction(g);
  for (const auto& term : g.terms) {
    int sign = term.sign;
    std::vector<IntVec> rays = term.denominator_rays;
    IntVec shift(g.dim, Int(0));
    for (auto& r : rays) {
      Int dot(0);
      for (int j = 0; j < g.dim; ++j) dot += w[j] * r[j];
      if (dot < 0) {
        sign = -sign;
        for (int j = 0; j < g.dim; ++j) {
          shift[j] -= r[j];
          r[j] = -r[j];
        }
      }
    }
    const int k = int(rays.size());
    for (const auto& num : term.numerator) {
      IntVec n(g.dim);
      for (int j = 0; j < g.dim; ++j) n[j] = num[j] + shift[j];
      if (k == 0) {
        bool in = true;
        for (int j = 0; j < g.dim; ++j)
          if (n[j] < box.lo[j] || n[j] > box.hi[j]) {
            in = false;
            break;
          }
        if (in) out.coeffs[n] += sign;
        continue;
      }
      // m >= 0 with lo <= n + rays*m <= hi; w-positivity of every ray
      // makes this polytope bounded.
      polyhedra::Polyhedron p;
      p.dim = k;
      p.ineq_c = IntMatrix(k + 2 * g.dim, k);
      p.ineq_b.assign(size_t(k + 2 * g.dim), Int(0));
      for (int i = 0; i < k; ++i) p.ineq_c.at(i, i) = -1;
      for (int j = 0; j < g.dim; ++j) {
        for (int i = 0; i < k; ++i) {
          p.ineq_c.at(k + 2 * j, i) = rays[size_t(i)][size_t(j)];
          p.ineq_c.at(k + 2 * j + 1, i) = -rays[size_t(i)][size_t(j)];
        }
        p.ineq_b[size_t(k + 2 * j)] = box.hi[j] - n[j];
        p.ineq_b[size_t(k + 2 * j + 1)] = n[j] - box.lo[j];
      }
      for (const auto& m : polyhedra::enumerate_lattice_points(p)) {
        IntVec x = n;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < g.dim; ++j) x[size_t(j)] += rays[size_t(i)][size_t(j)] * m[size_t(i)];
        out.coeffs[x] += sign;
      }
    }
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
    it = it->second == 0 ? out.coeffs.erase(it) : std::next(it);
  return out;
}

namespace {

// Membership of an integer point in the polytope spanned by the vertices.
bool polytope_contains(const std::vector<RatVec>& vertices, const IntVec& x) {
  const size_t n = vertices.size();
  const size_t d = vertices[0].size();
  RatVec p(d);
  for (size_t j = 0; j < d; ++j) p[j] = Rat(x[j]);
  if (n == 1) return p == vertices[0];
  if (n == 2) {
    const RatVec& a = vertices[0];
    const RatVec& b = vertices[1];
    if (d == 2 && rat_cross(a, b, p) != 0) return false;
    Rat t(0), len(0);
    for (size_t j = 0; j < d; ++j) {
      t += (p[j] - a[j]) * (b[j] - a[j]);
      len += (b[j] - a[j]) * (b[j] - a[j]);
    }
    return t >= 0 && t <= len;
  }
  Rat orient = rat_cross(vertices[0], vertices[1], vertices[2]);
  for (size_t i = 0; i < n; ++i) {
    Rat c = rat_cross(vertices[i], vertices[(i + 1) % n], p);
    if (orient > 0 ? c < 0 : c > 0) return false;
  }
  return true;
}

}  // namespace

bool brion_check(const std::vector<RatVec>& vertices, const Box& box) {
  TruncatedSeries got = truncate(brion_sum(vertices), box);
  const int d = int(vertices[0].size());
  std::map<IntVec, Int> want;
  IntVec x = box.lo;
  for (int j = 0; j < d; ++j)
    if (box.lo[j] > box.hi[j]) return got.coeffs.empty();
  while (true) {
    if (polytope_contains(vertices, x)) want[x] = 1;
    int j = d - 1;
    while (j >= 0 && x[j] == box.hi[j]) {
      x[j] = box.lo[j];
      --j;
    }
    if (j < 0) break;
    ++x[j];
  }
  return got.coeffs == want;
}

}  // namespace vpart::genfun
