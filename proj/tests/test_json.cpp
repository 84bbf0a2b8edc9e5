#include "vpart/json_io.hpp"

#include "doctest.h"

using namespace vpart;
using namespace vpart::jsonio;

TEST_CASE("exact numbers as decimal strings") {
  Int big("123456789012345678901234567890");
  CHECK(parse_int(int_json(big)) == big);
  CHECK(parse_int(Json(42)) == 42);
  CHECK(parse_int(Json("-7")) == -7);
  CHECK_THROWS_AS(parse_int(Json("x7")), Error);
  CHECK_THROWS_AS(parse_int(Json(1.5)), Error);

  CHECK(rat_json(Rat(3)) == Json("3"));
  CHECK(rat_json(Rat(-1, 2)) == Json("-1/2"));
  CHECK(parse_rat(Json("6/4")) == Rat(3, 2));
  CHECK(parse_rat(Json(5)) == Rat(5));
  CHECK_THROWS_AS(parse_rat(Json("one half")), Error);
}

TEST_CASE("matrices and ideals round-trip") {
  linalg::IntMatrix a{{3, 5, 8, 9}, {1, 1, 1, 1}};
  CHECK(parse_matrix(matrix_json(a)) == a);
  CHECK_THROWS_AS(parse_matrix(Json::parse("[[1,2],[3]]")), Error);
  CHECK_THROWS_AS(parse_matrix(Json::parse("[]")), Error);

  monomial::MonomialIdeal i(2, {{2, 0}, {0, 3}});
  CHECK(parse_ideal(ideal_json(i)) == i);
  CHECK(ideal_json(i).dump() == R"({"nvars":2,"generators":[[0,3],[2,0]]})");
  CHECK_THROWS_AS(parse_ideal(Json::parse(R"({"generators":[[1,0]]})")), Error);
  CHECK_THROWS_AS(parse_ideal(Json::parse(R"({"nvars":2,"generators":[[1]]})")), Error);
  CHECK_THROWS_AS(parse_ideal(Json::parse(R"({"nvars":2,"generators":[[-1,0]]})")), Error);
}

TEST_CASE("rational points round-trip") {
  std::vector<RatVec> pts = {{Rat(1, 2), Rat(0)}, {Rat(-3), Rat(7, 3)}};
  CHECK(parse_points(points_json(pts)) == pts);
  CHECK(points_json(pts).dump() == R"([["1/2","0"],["-3","7/3"]])");
}

TEST_CASE("region description emits the pinned schema") {
  asymptotics::RegionDescription rd;
  rd.i = 0;
  rd.t0 = 1;
  rd.period = 1;
  rd.lines = {asymptotics::LineFunc{2, 0}, asymptotics::LineFunc{3, 0}};
  partition::Poly2 one;
  one.coeffs[{0, 0}] = Rat(1);
  rd.polys[{0, 0}] = one;
  CHECK(region_json(rd).dump() ==
        R"({"i":0,"t0":1,"D":1,"lines":[{"a":"2","b":"0"},{"a":"3","b":"0"}],)"
        R"("polys":[{"region":0,"j":0,"poly":[["1","1",0,0]]}]})");
}

TEST_CASE("error objects carry code, message, witness") {
  Json with = error_json(Error("unbounded", "polyhedron is unbounded", "level 2"));
  CHECK(with["code"] == "unbounded");
  CHECK(with["message"] == "polyhedron is unbounded");
  CHECK(with["witness"] == "level 2");
  Json without = error_json(Error("io", "cannot open input file"));
  CHECK(!without.contains("witness"));
}

TEST_CASE("filtration reports") {
  monomial::MonomialIdeal i(2, {{2, 0}, {0, 3}});
  auto f = monomial::build_filtration(monomial::FiltrationKind::powers, i, 2);
  auto rep = monomial::good_filtration_check(f, i);
  Json j = good_report_json(rep);
  CHECK(j["containment_ok"] == true);
  CHECK(j["n0"] == 0);

  Json fj = filtration_json(f);
  CHECK(fj["kind"] == "powers");
  CHECK(fj["terms"].size() == 3);
  CHECK(parse_ideal(fj["terms"][2]) == monomial::power(i, 2));
}
