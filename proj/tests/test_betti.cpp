#include "vpart/betti.hpp"

#include <vector>

#include "doctest.h"
#include "vpart/error.hpp"

using namespace vpart;
using namespace vpart::betti;
using monomial::MonomialIdeal;

namespace {

MonomialIdeal mk(int n, std::vector<Expo> gens) { return MonomialIdeal(n, std::move(gens)); }

long beta_sum(const MultigradedBetti& b, int i) {
  long s = 0;
  for (const auto& [key, v] : b)
    if (key.first == i) s += v;
  return s;
}

long get(const MultigradedBetti& b, int i, const Expo& a) {
  auto it = b.find({i, a});
  return it == b.end() ? 0 : it->second;
}

// Monomials of total degree d in n variables.
long ring_dim(int n, long d) {
  if (d < 0) return 0;
  long num = 1, den = 1;
  for (long k = 1; k < n; ++k) {
    num *= d + k;
    den *= k;
  }
  return num / den;
}

// Degree-d monomials inside the ideal, counted directly.
long ideal_dim(const MonomialIdeal& i, long d) {
  long count = 0;
  Expo e(size_t(i.nvars()), 0);
  e[0] = d;
  while (true) {
    if (i.contains_monomial(e)) ++count;
    // Next composition of d.
    int n = i.nvars();
    int j = n - 2;
    while (j >= 0 && e[size_t(j)] == 0) --j;
    if (j < 0) break;
    long rest = e[size_t(n - 1)] + 1;
    e[size_t(j)] -= 1;
    e[size_t(j + 1)] = rest;
    for (int k = j + 2; k < n; ++k) e[size_t(k)] = 0;
  }
  return count;
}

std::vector<MonomialIdeal> corpus() {
  using monomial::power;
  MonomialIdeal m2 = mk(2, {{1, 0}, {0, 1}});
  MonomialIdeal i23 = mk(2, {{2, 0}, {0, 3}});
  std::vector<MonomialIdeal> out = {
      m2,
      mk(2, {{2, 0}, {0, 2}}),
      mk(2, {{2, 0}, {1, 1}, {0, 2}}),
      mk(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}),
      mk(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
      mk(2, {{3, 0}, {0, 5}}),
      mk(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}}),
      mk(2, {{3, 0}, {2, 1}, {1, 2}, {0, 3}}),
      mk(2, {{2, 1}}),
      mk(2, {{2, 0}, {1, 2}, {0, 4}}),
      mk(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}),
      mk(3, {{1, 1, 1}}),
      MonomialIdeal::unit(2),
      MonomialIdeal::zero(2),
  };
  for (long d = 2; d <= 5; ++d) out.push_back(power(m2, d));
  for (long t = 1; t <= 5; ++t) out.push_back(power(i23, t));
  return out;
}

}  // namespace

TEST_CASE("reduced homology of small complexes") {
  CHECK(reduced_homology_dims({0, {0u}}) == std::vector<long>{1});
  CHECK(reduced_homology_dims({3, {}}).empty());
  CHECK(reduced_homology_dims({3, {0b011u, 0b101u, 0b110u}}) == std::vector<long>{0, 0, 1});
  CHECK(reduced_homology_dims({2, {0b01u, 0b10u}}) == std::vector<long>{0, 1});
  CHECK(reduced_homology_dims({3, {0b111u}}) == std::vector<long>{0, 0, 0, 0});
  // Hollow tetrahedron: a two-sphere.
  CHECK(reduced_homology_dims({4, {0b0111u, 0b1011u, 0b1101u, 0b1110u}}) ==
        std::vector<long>{0, 0, 0, 1});
  CHECK_THROWS_AS(reduced_homology_dims({21, {0u}}), Error);
}

TEST_CASE("multigraded Betti numbers of hand-checked ideals") {
  auto koszul = multigraded_betti(mk(2, {{1, 0}, {0, 1}}));
  CHECK(koszul.size() == 3);
  CHECK(get(koszul, 0, {1, 0}) == 1);
  CHECK(get(koszul, 0, {0, 1}) == 1);
  CHECK(get(koszul, 1, {1, 1}) == 1);

  auto ci = multigraded_betti(mk(2, {{2, 0}, {0, 2}}));
  CHECK(get(ci, 1, {2, 2}) == 1);
  CHECK(beta_sum(ci, 0) == 2);
  CHECK(beta_sum(ci, 1) == 1);

  auto sq = multigraded_betti(mk(2, {{2, 0}, {1, 1}, {0, 2}}));
  CHECK(beta_sum(sq, 0) == 3);
  CHECK(beta_sum(sq, 1) == 2);
  CHECK(get(sq, 1, {2, 1}) == 1);
  CHECK(get(sq, 1, {1, 2}) == 1);

  auto edges = multigraded_betti(mk(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  CHECK(get(edges, 1, {1, 1, 1}) == 2);

  CHECK(multigraded_betti(MonomialIdeal::unit(2)) ==
        MultigradedBetti{{{0, {0, 0}}, 1}});
  CHECK(multigraded_betti(MonomialIdeal::zero(2)).empty());
}

TEST_CASE("Koszul and Taylor routes agree on the corpus") {
  for (const auto& i : corpus()) {
    CHECK(multigraded_betti(i) == taylor_betti_oracle(i));
    CHECK(multigraded_betti(i) == multigraded_betti_serial(i));
  }
}

TEST_CASE("generator counts appear as homological degree zero") {
  for (const auto& i : corpus()) {
    std::map<Expo, long> gens_by_degree;
    for (const auto& g : i.generators()) gens_by_degree[g] = 1;
    std::map<Expo, long> beta0;
    for (const auto& [key, v] : multigraded_betti(i))
      if (key.first == 0) beta0[key.second] = v;
    CHECK(beta0 == gens_by_degree);
  }
}

TEST_CASE("graded tables collapse total degrees") {
  auto sq = graded_betti(mk(2, {{2, 0}, {1, 1}, {0, 2}}));
  CHECK(sq.entries.at({0, 2}) == 3);
  CHECK(sq.entries.at({1, 3}) == 2);
  CHECK(sq.entries.size() == 2);

  auto m = graded_betti(mk(2, {{1, 0}, {0, 1}}));
  CHECK(m.entries.at({0, 1}) == 2);
  CHECK(m.entries.at({1, 2}) == 1);

  auto ci = graded_betti(mk(2, {{3, 0}, {0, 5}}));
  CHECK(ci.entries.at({0, 3}) == 1);
  CHECK(ci.entries.at({0, 5}) == 1);
  CHECK(ci.entries.at({1, 8}) == 1);
  CHECK(ci.entries.size() == 3);
}

TEST_CASE("alternating Betti sums reproduce ideal Hilbert functions") {
  for (const auto& i : corpus()) {
    auto table = graded_betti(i);
    for (long nu = 0; nu <= 20; ++nu) {
      long predicted = 0;
      for (const auto& [key, b] : table.entries) {
        long term = b * ring_dim(i.nvars(), nu - key.second);
        predicted += (key.first % 2 == 0) ? term : -term;
      }
      CHECK(predicted == ideal_dim(i, nu));
    }
  }
}

TEST_CASE("Betti tables along filtrations") {
  using monomial::build_filtration;
  using monomial::FiltrationKind;

  auto i23 = mk(2, {{2, 0}, {0, 3}});
  auto fam = betti_family(build_filtration(FiltrationKind::powers, i23, 3));
  REQUIRE(fam.tables.size() == 4);
  CHECK(fam.tables.at(0).entries == std::map<std::pair<int, long>, long>{{{0, 0}, 1}});
  for (long t = 1; t <= 3; ++t) {
    const auto& table = fam.tables.at(t);
    for (long mu = 2 * t; mu <= 3 * t; ++mu) CHECK(table.entries.at({0, mu}) == 1);
    long row0 = 0;
    for (const auto& [key, b] : table.entries)
      if (key.first == 0) row0 += b;
    CHECK(row0 == t + 1);
  }

  auto m2 = mk(2, {{1, 0}, {0, 1}});
  auto mfam = betti_family(build_filtration(FiltrationKind::powers, m2, 5));
  for (long t = 1; t <= 5; ++t) CHECK(mfam.tables.at(t).entries.at({0, t}) == t + 1);

  auto cfam = betti_family(build_filtration(FiltrationKind::integral_closure, mk(2, {{3, 0}, {0, 3}}), 2));
  CHECK(cfam.tables.at(1).entries.at({0, 3}) == 4);
}
