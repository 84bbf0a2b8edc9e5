#include "vpart/monomial.hpp"

#include <vector>

#include "doctest.h"
#include "vpart/error.hpp"

using namespace vpart;
using namespace vpart::monomial;

namespace {

MonomialIdeal mk(std::vector<Expo> gens) {
  int n = gens.empty() ? 2 : int(gens[0].size());
  return MonomialIdeal(n, std::move(gens));
}

const MonomialIdeal m2 = mk({{1, 0}, {0, 1}});            // (x, y)
const MonomialIdeal sq = mk({{2, 0}, {0, 2}});            // (x^2, y^2)
const MonomialIdeal cb = mk({{3, 0}, {0, 3}});            // (x^3, y^3)

}  // namespace

TEST_CASE("construction minimalizes and sorts") {
  auto i = mk({{2, 0}, {4, 0}, {1, 1}, {0, 2}, {2, 3}, {1, 1}});
  CHECK(i.generators() == std::vector<Expo>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(MonomialIdeal::unit(3).is_unit());
  CHECK(MonomialIdeal::zero(2).is_zero());
  CHECK(mk({{0, 0}, {1, 2}}).is_unit());
  CHECK(i.contains_monomial({5, 7}));
  CHECK(!i.contains_monomial({1, 0}));
  CHECK_THROWS_AS(MonomialIdeal(2, {{1, 2, 3}}), Error);
}

TEST_CASE("products and powers") {
  CHECK(power(m2, 2).generators() == std::vector<Expo>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(multiply(sq, power(m2, 2)).generators() ==
        std::vector<Expo>{{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
  CHECK(power(sq, 0).is_unit());
  CHECK(power(MonomialIdeal::zero(2), 0).is_unit());
  CHECK(multiply(m2, MonomialIdeal::zero(2)).is_zero());
  CHECK_THROWS_AS(multiply(m2, MonomialIdeal::unit(3)), Error);

  // Associativity, commutativity, and power addition on a mixed triple.
  auto a = mk({{2, 1}, {0, 3}});
  auto b = mk({{1, 1}});
  auto c = mk({{4, 0}, {1, 2}});
  CHECK(multiply(a, b) == multiply(b, a));
  CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  CHECK(power(a, 5) == multiply(power(a, 2), power(a, 3)));
}

TEST_CASE("colon and intersection") {
  CHECK(colon(sq, m2).generators() == std::vector<Expo>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(colon(sq, MonomialIdeal::unit(2)) == sq);
  CHECK(colon(mk({{1, 0}}), mk({{1, 0}})).is_unit());
  CHECK(intersect(mk({{2, 0}, {0, 1}}), mk({{1, 0}, {0, 2}})).generators() ==
        std::vector<Expo>{{0, 2}, {1, 1}, {2, 0}});

  // b * (a : b) lies inside a.
  std::vector<std::pair<MonomialIdeal, MonomialIdeal>> pairs = {
      {sq, m2}, {power(m2, 3), sq}, {mk({{4, 0}, {3, 1}, {1, 3}, {0, 4}}), power(m2, 2)}};
  for (const auto& [a, b] : pairs) CHECK(a.contains(multiply(b, colon(a, b))));
}

TEST_CASE("reduction detection") {
  CHECK(is_reduction(sq, power(m2, 2), 5) == 1);
  CHECK(is_reduction(power(m2, 2), power(m2, 2), 5) == 0);
  CHECK(!is_reduction(mk({{2, 0}}), power(m2, 2), 8).has_value());
  CHECK_THROWS_AS(is_reduction(m2, power(m2, 2), 5), Error);

  // Certificate: the returned r satisfies the defining equality.
  long r = *is_reduction(sq, power(m2, 2), 5);
  CHECK(multiply(sq, power(power(m2, 2), r)) == power(power(m2, 2), r + 1));
}

TEST_CASE("integral closure of powers") {
  CHECK(integral_closure_power(cb, 1).generators() ==
        std::vector<Expo>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(integral_closure_power(m2, 1) == m2);
  CHECK(integral_closure_power(sq, 1).generators() == std::vector<Expo>{{0, 2}, {1, 1}, {2, 0}});

  for (long t = 1; t <= 4; ++t) {
    auto cl = integral_closure_power(cb, t);
    // All monomials of total degree 3t.
    CHECK(long(cl.generators().size()) == 3 * t + 1);
    for (const auto& g : cl.generators()) CHECK(g[0] + g[1] == 3 * t);
    CHECK(cl.contains(power(cb, t)));
    CHECK(integral_closure_power(cl, 1) == cl);
  }
}

TEST_CASE("Ratliff-Rush closure") {
  auto i = mk({{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  auto rr = ratliff_rush(i);
  CHECK(rr.stabilized);
  CHECK(rr.ideal == power(m2, 4));
  CHECK(rr.ideal.contains_monomial({2, 2}));

  auto px = ratliff_rush(mk({{1, 0}}));
  CHECK(px.stabilized);
  CHECK(px.ideal == mk({{1, 0}}));

  auto rsq = ratliff_rush(sq, 6);
  CHECK(rsq.stabilized);
  CHECK(rsq.ideal == sq);
}

TEST_CASE("filtration materialization") {
  auto f = build_filtration(FiltrationKind::powers, mk({{2, 0}, {0, 3}}), 4);
  REQUIRE(f.terms.size() == 5);
  CHECK(f.terms[0].is_unit());
  CHECK(f.terms[2] == power(mk({{2, 0}, {0, 3}}), 2));

  auto g = build_filtration(FiltrationKind::integral_closure, cb, 3);
  CHECK(g.terms[0].is_unit());
  CHECK(g.terms[2] == integral_closure_power(cb, 2));

  auto h = build_filtration(FiltrationKind::ratliff_rush, mk({{4, 0}, {3, 1}, {1, 3}, {0, 4}}), 3);
  CHECK(h.terms[1] == power(m2, 4));
  CHECK(h.terms[2] == power(m2, 8));

  CHECK_THROWS_AS(explicit_filtration(m2, {m2}), Error);  // terms[0] must be unit
}

TEST_CASE("good filtration verdicts") {
  auto i23 = mk({{2, 0}, {0, 3}});
  auto powers = good_filtration_check(build_filtration(FiltrationKind::powers, i23, 6), i23);
  CHECK(powers.containment_ok);
  CHECK(powers.n0 == 0);

  auto closure = good_filtration_check(build_filtration(FiltrationKind::integral_closure, cb, 8), cb);
  CHECK(closure.containment_ok);
  CHECK(closure.n0 == 1);

  auto i4 = mk({{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  auto rrf = good_filtration_check(build_filtration(FiltrationKind::ratliff_rush, i4, 6), i4);
  CHECK(rrf.containment_ok);
  CHECK(rrf.n0 == 1);

  // Doubling the exponent outruns multiplication by the ideal: x is already
  // missing from the degree-2 term.
  std::vector<MonomialIdeal> jump;
  for (long t = 0; t <= 5; ++t) jump.push_back(power(m2, 2 * t));
  auto bad = good_filtration_check(explicit_filtration(m2, std::move(jump)), m2);
  CHECK(!bad.containment_ok);
  CHECK(bad.violation_index == 0);
  CHECK(bad.violation_witness == Expo{0, 1});

  // Halving keeps containment but equality only holds at every other step.
  std::vector<MonomialIdeal> half;
  for (long t = 0; t <= 6; ++t) half.push_back(power(m2, (t + 1) / 2));
  auto slow = good_filtration_check(explicit_filtration(m2, std::move(half)), m2);
  CHECK(slow.containment_ok);
  CHECK(!slow.n0.has_value());
}
