#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "vpart/asymptotics.hpp"
#include "vpart/betti.hpp"
#include "vpart/error.hpp"
#include "vpart/matrix.hpp"
#include "vpart/monomial.hpp"
#include "vpart/numeric.hpp"
#include "vpart/partition.hpp"

namespace vpart::jsonio {

// Insertion-ordered JSON keeps every emitted document byte-stable.
using Json = nlohmann::ordered_json;

// Unbounded integers travel as decimal strings; rationals as "p" or "p/q".
// Parsers also accept plain JSON integers. Structural values (dimensions,
// exponents, homological indices) are plain numbers.
Json int_json(const Int& v);
Int parse_int(const Json& j);
Json rat_json(const Rat& v);
Rat parse_rat(const Json& j);

Json ivec_json(const IntVec& v);
IntVec parse_ivec(const Json& j);
Json matrix_json(const linalg::IntMatrix& m);
linalg::IntMatrix parse_matrix(const Json& j);

// Rational points, e.g. polytope vertices: [["1/2", "0"], ...].
Json points_json(const std::vector<RatVec>& pts);
std::vector<RatVec> parse_points(const Json& j);

// {"nvars": n, "generators": [[e_1, ..., e_n], ...]}
Json ideal_json(const monomial::MonomialIdeal& i);
monomial::MonomialIdeal parse_ideal(const Json& j);

// [[num, den, e_mu, e_t], ...] with exact rational coefficients.
Json poly2_json(const partition::Poly2& p);
Json quasi_polynomial_json(const partition::QuasiPolynomial& q);
Json chambers_json(const std::vector<partition::Chamber>& cs);

Json betti_table_json(const betti::BettiTable& t);
Json multigraded_json(int nvars, const betti::MultigradedBetti& b);
Json betti_family_json(const betti::BettiFamily& f);

Json filtration_json(const monomial::Filtration& f);
Json good_report_json(const monomial::GoodFiltrationReport& r);

// {"i", "t0", "D", "lines": [{"a","b"}], "polys": [{"region","j","poly"}]}
Json region_json(const asymptotics::RegionDescription& r);
Json ci_report_json(const asymptotics::CiBridgeReport& r);

// {"code", "message"} plus "witness" when present.
Json error_json(const Error& e);

// Reads a JSON document from a file, or from stdin when path is "-".
Json load_json(const std::string& path);

}  // namespace vpart::jsonio
