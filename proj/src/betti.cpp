#include "vpart/betti.hpp"

#include <algorithm>
#include <set>

#include "vpart/error.hpp"
#include "vpart/parallel.hpp"

namespace vpart::betti {

namespace {

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

// Exact rank of a small sparse +-1 matrix given as rows of (column, sign).
long rank_rational(std::vector<std::vector<Rat>> m) {
  long rank = 0;
  const size_t rows = m.size();
  const size_t cols = rows == 0 ? 0 : m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = SIZE_MAX;
    for (size_t i = row; i < rows; ++i)
      if (m[i][col] != 0) {
        p = i;
        break;
      }
    if (p == SIZE_MAX) continue;
    std::swap(m[p], m[row]);
    for (size_t i = row + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      Rat f = m[i][col] / m[row][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Boundary rank between consecutive face layers; faces sorted, sign by the
// position of the dropped vertex.
long boundary_rank(const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) {
  if (from.empty() || to.empty()) return 0;
  std::map<std::uint32_t, size_t> index;
  for (size_t i = 0; i < to.size(); ++i) index[to[i]] = i;
  std::vector<std::vector<Rat>> m(from.size(), std::vector<Rat>(to.size(), Rat(0)));
  for (size_t r = 0; r < from.size(); ++r) {
    std::uint32_t f = from[r];
    int pos = 0;
    for (int v = 0; v < 32; ++v) {
      if (!(f & (1u << v))) continue;
      auto it = index.find(f & ~(1u << v));
      if (it != index.end()) m[r][it->second] = (pos % 2 == 0) ? Rat(1) : Rat(-1);
      ++pos;
    }
  }
  return rank_rational(std::move(m));
}

}  // namespace

std::vector<long> reduced_homology_dims(const SimplicialComplexQ& k, int max_verts) {
  if (k.nverts > max_verts)
    throw Error("vertex-bound", "complex has " + std::to_string(k.nverts) +
                                    " vertices, bound is " + std::to_string(max_verts));
  if (k.facets.empty()) return {};
  std::set<std::uint32_t> faces;
  for (std::uint32_t f : k.facets) {
    // All submasks of f, including 0.
    std::uint32_t s = f;
    while (true) {
      faces.insert(s);
      if (s == 0) break;
      s = (s - 1) & f;
    }
  }
  int top = 0;
  for (std::uint32_t f : faces) top = std::max(top, popcount(f));
  // layer[s] = faces with s vertices (dimension s-1).
  std::vector<std::vector<std::uint32_t>> layer(size_t(top) + 1);
  for (std::uint32_t f : faces) layer[size_t(popcount(f))].push_back(f);
  for (auto& l : layer) std::sort(l.begin(), l.end());

  std::vector<long> ranks(size_t(top) + 2, 0);  // ranks[s] = rank of d: layer s -> layer s-1
  for (int s = 1; s <= top; ++s)
    ranks[size_t(s)] = boundary_rank(layer[size_t(s)], layer[size_t(s) - 1]);
  std::vector<long> dims(size_t(top) + 1);
  for (int s = 0; s <= top; ++s)
    dims[size_t(s)] = long(layer[size_t(s)].size()) - ranks[size_t(s)] - ranks[size_t(s) + 1];
  return dims;
}

namespace {

std::vector<Expo> join_closure(const MonomialIdeal& i, std::size_t bound) {
  std::set<Expo> closed(i.generators().begin(), i.generators().end());
  std::vector<Expo> work(closed.begin(), closed.end());
  while (!work.empty()) {
    Expo a = std::move(work.back());
    work.pop_back();
    for (const auto& g : i.generators()) {
      Expo j(a.size());
      for (size_t v = 0; v < a.size(); ++v) j[v] = std::max(a[v], g[v]);
      if (closed.insert(j).second) {
        if (closed.size() > bound)
          throw Error("lcm-bound", "join closure exceeds " + std::to_string(bound) + " multidegrees");
        work.push_back(std::move(j));
      }
    }
  }
  return {closed.begin(), closed.end()};
}

// Upper-Koszul complex at alpha: squarefree sigma inside the support of alpha
// with x^(alpha - sigma) in the ideal.
SimplicialComplexQ upper_koszul(const MonomialIdeal& i, const Expo& alpha) {
  std::vector<int> support;
  for (size_t v = 0; v < alpha.size(); ++v)
    if (alpha[v] > 0) support.push_back(int(v));
  const int s = int(support.size());
  std::vector<std::uint32_t> faces;
  for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
    Expo rest = alpha;
    for (int b = 0; b < s; ++b)
      if (mask & (1u << b)) rest[size_t(support[size_t(b)])] -= 1;
    if (i.contains_monomial(rest)) faces.push_back(mask);
  }
  // Keep only maximal faces.
  std::vector<std::uint32_t> facets;
  for (std::uint32_t f : faces) {
    bool maximal = true;
    for (std::uint32_t g : faces)
      if (g != f && (f & g) == f) {
        maximal = false;
        break;
      }
    if (maximal) facets.push_back(f);
  }
  return SimplicialComplexQ{s, std::move(facets)};
}

void betti_at(const MonomialIdeal& i, const Expo& alpha, MultigradedBetti& out) {
  auto dims = reduced_homology_dims(upper_koszul(i, alpha));
  for (size_t s = 0; s < dims.size(); ++s)
    if (dims[s] > 0) out[{int(s), alpha}] = dims[s];
}

}  // namespace

MultigradedBetti multigraded_betti_serial(const MonomialIdeal& i, std::size_t lcm_bound) {
  MultigradedBetti out;
  for (const auto& alpha : join_closure(i, lcm_bound)) betti_at(i, alpha, out);
  return out;
}

MultigradedBetti multigraded_betti(const MonomialIdeal& i, std::size_t lcm_bound) {
  const int threads = parallel::max_threads();
  auto alphas = join_closure(i, lcm_bound);
  if (threads <= 1 || alphas.size() < 2) {
    MultigradedBetti out;
    for (const auto& alpha : alphas) betti_at(i, alpha, out);
    return out;
  }
  std::vector<MultigradedBetti> parts(alphas.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long a = 0; a < long(alphas.size()); ++a) betti_at(i, alphas[size_t(a)], parts[size_t(a)]);
  MultigradedBetti out;
  for (const auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

MultigradedBetti taylor_betti_oracle(const MonomialIdeal& i, int max_gens) {
  MultigradedBetti out;
  if (i.is_zero()) return out;
  if (i.is_unit()) {
    out[{0, Expo(size_t(i.nvars()), 0)}] = 1;
    return out;
  }
  const int g = int(i.generators().size());
  if (g > max_gens)
    throw Error("generator-bound", "Taylor complex needs 2^" + std::to_string(g) +
                                       " subsets, bound is 2^" + std::to_string(max_gens));
  const std::uint32_t total = 1u << g;
  std::vector<Expo> lcm(total, Expo(size_t(i.nvars()), 0));
  for (std::uint32_t s = 1; s < total; ++s) {
    int low = __builtin_ctz(s);
    const Expo& base = lcm[s & (s - 1)];
    const Expo& gen = i.generators()[size_t(low)];
    for (size_t v = 0; v < base.size(); ++v) lcm[s][v] = std::max(base[v], gen[v]);
  }
  std::map<Expo, std::vector<std::uint32_t>> strands;
  for (std::uint32_t s = 0; s < total; ++s) strands[lcm[s]].push_back(s);

  for (const auto& [alpha, subsets] : strands) {
    int kmax = 0;
    for (std::uint32_t s : subsets) kmax = std::max(kmax, popcount(s));
    std::vector<std::vector<std::uint32_t>> layer(size_t(kmax) + 1);
    for (std::uint32_t s : subsets) layer[size_t(popcount(s))].push_back(s);
    for (auto& l : layer) std::sort(l.begin(), l.end());
    std::vector<long> ranks(size_t(kmax) + 2, 0);
    for (int k = 1; k <= kmax; ++k) {
      // Entries survive only toward subsets with the same lcm, i.e. the same
      // strand; boundary_rank's index lookup enforces that.
      ranks[size_t(k)] = boundary_rank(layer[size_t(k)], layer[size_t(k) - 1]);
    }
    for (int k = 0; k <= kmax; ++k) {
      long h = long(layer[size_t(k)].size()) - ranks[size_t(k)] - ranks[size_t(k) + 1];
      // Module numbers sit one step below the quotient's: H_(i+1) reports i.
      if (h > 0 && k >= 1) out[{k - 1, alpha}] = h;
    }
  }
  return out;
}

BettiTable graded_betti(const MonomialIdeal& i, std::size_t lcm_bound) {
  BettiTable table;
  table.nvars = i.nvars();
  for (const auto& [key, b] : multigraded_betti(i, lcm_bound)) {
    long mu = 0;
    for (long e : key.second) mu += e;
    table.entries[{key.first, mu}] += b;
  }
  return table;
}

BettiFamily betti_family(const monomial::Filtration& f, std::size_t lcm_bound) {
  BettiFamily fam;
  fam.t_lo = 0;
  fam.t_hi = f.horizon;
  for (long t = 0; t < long(f.terms.size()); ++t)
    fam.tables.emplace(t, graded_betti(f.terms[size_t(t)], lcm_bound));
  return fam;
}

}  // namespace vpart::betti
