#include "vpart/json_io.hpp"

#include <fstream>
#include <iostream>
#include <utility>

namespace vpart::jsonio {

namespace {

[[noreturn]] void bad_input(const std::string& what, const Json& j) {
  throw Error("bad-input", what, j.dump());
}

long parse_small(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad_input(std::string("expected an integer ") + what, j);
  return j.get<long>();
}

}  // namespace

Json int_json(const Int& v) { return v.get_str(); }

Int parse_int(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  bad_input("expected an integer as number or decimal string", j);
}

Json rat_json(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rat parse_rat(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      Rat v(j.get<std::string>());
      v.canonicalize();
      return v;
    } catch (const std::invalid_argument&) {
    }
  }
  bad_input("expected a rational as number, \"p\" or \"p/q\"", j);
}

Json ivec_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_json(x));
  return out;
}

IntVec parse_ivec(const Json& j) {
  if (!j.is_array()) bad_input("expected an array of integers", j);
  IntVec out;
  for (const auto& e : j) out.push_back(parse_int(e));
  return out;
}

Json matrix_json(const linalg::IntMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(ivec_json(m.row(i)));
  return out;
}

linalg::IntMatrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) bad_input("expected a nonempty array of rows", j);
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(parse_ivec(r));
  const size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) bad_input("matrix rows have unequal lengths", j);
  linalg::IntMatrix m(int(rows.size()), int(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < cols; ++k) m.at(int(i), int(k)) = rows[i][k];
  return m;
}

Json points_json(const std::vector<RatVec>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) {
    Json row = Json::array();
    for (const Rat& c : p) row.push_back(rat_json(c));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RatVec> parse_points(const Json& j) {
  if (!j.is_array()) bad_input("expected an array of points", j);
  std::vector<RatVec> out;
  for (const auto& row : j) {
    if (!row.is_array()) bad_input("expected a point as an array of coordinates", row);
    RatVec p;
    for (const auto& c : row) p.push_back(parse_rat(c));
    out.push_back(std::move(p));
  }
  return out;
}

Json ideal_json(const monomial::MonomialIdeal& i) {
  Json gens = Json::array();
  for (const auto& g : i.generators()) gens.push_back(g);
  return Json{{"nvars", i.nvars()}, {"generators", std::move(gens)}};
}

monomial::MonomialIdeal parse_ideal(const Json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("generators"))
    bad_input("expected {\"nvars\", \"generators\"}", j);
  const long nvars = parse_small(j["nvars"], "nvars");
  if (nvars <= 0) bad_input("nvars must be positive", j);
  std::vector<monomial::Expo> gens;
  if (!j["generators"].is_array()) bad_input("generators must be an array", j);
  for (const auto& g : j["generators"]) {
    if (!g.is_array() || g.size() != size_t(nvars))
      bad_input("each generator needs one exponent per variable", g);
    monomial::Expo e;
    for (const auto& x : g) {
      long v = parse_small(x, "exponent");
      if (v < 0) bad_input("exponents must be nonnegative", g);
      e.push_back(v);
    }
    gens.push_back(std::move(e));
  }
  return monomial::MonomialIdeal(int(nvars), std::move(gens));
}

Json poly2_json(const partition::Poly2& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.coeffs) {
    Json term = Json::array();
    term.push_back(c.get_num().get_str());
    term.push_back(c.get_den().get_str());
    term.push_back(e.first);
    term.push_back(e.second);
    out.push_back(std::move(term));
  }
  return out;
}

Json quasi_polynomial_json(const partition::QuasiPolynomial& q) {
  Json cosets = Json::array();
  for (const auto& [rep, poly] : q.coset_polys)
    cosets.push_back(Json{{"rep", ivec_json(rep)}, {"poly", poly2_json(poly)}});
  return Json{{"lattice_basis", matrix_json(q.lattice.basis())},
              {"determinant", int_json(q.lattice.determinant())},
              {"cosets", std::move(cosets)}};
}

Json chambers_json(const std::vector<partition::Chamber>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back(Json{{"low_ray", ivec_json(c.low_ray)},
                       {"high_ray", ivec_json(c.high_ray)},
                       {"lattice_basis", matrix_json(c.lattice.basis())},
                       {"lattice_det", int_json(c.lattice.determinant())},
                       {"global_det", int_json(c.global_lattice.determinant())}});
  return out;
}

Json betti_table_json(const betti::BettiTable& t) {
  Json entries = Json::array();
  for (const auto& [key, beta] : t.entries)
    entries.push_back(Json{{"i", key.first}, {"mu", key.second}, {"beta", beta}});
  return Json{{"nvars", t.nvars}, {"entries", std::move(entries)}};
}

Json multigraded_json(int nvars, const betti::MultigradedBetti& b) {
  Json entries = Json::array();
  for (const auto& [key, beta] : b)
    entries.push_back(Json{{"i", key.first}, {"alpha", key.second}, {"beta", beta}});
  return Json{{"nvars", nvars}, {"entries", std::move(entries)}};
}

Json betti_family_json(const betti::BettiFamily& f) {
  Json tables = Json::array();
  for (const auto& [t, table] : f.tables)
    tables.push_back(Json{{"t", t}, {"table", betti_table_json(table)}});
  return Json{{"t_lo", f.t_lo}, {"t_hi", f.t_hi}, {"tables", std::move(tables)}};
}

Json filtration_json(const monomial::Filtration& f) {
  const char* kind = "explicit";
  switch (f.kind) {
    case monomial::FiltrationKind::powers: kind = "powers"; break;
    case monomial::FiltrationKind::integral_closure: kind = "integral_closure"; break;
    case monomial::FiltrationKind::ratliff_rush: kind = "ratliff_rush"; break;
    case monomial::FiltrationKind::explicit_terms: kind = "explicit"; break;
  }
  Json terms = Json::array();
  for (const auto& t : f.terms) terms.push_back(ideal_json(t));
  return Json{{"kind", kind},
              {"horizon", f.horizon},
              {"base", ideal_json(f.base)},
              {"terms", std::move(terms)}};
}

Json good_report_json(const monomial::GoodFiltrationReport& r) {
  Json out{{"containment_ok", r.containment_ok}};
  if (!r.containment_ok) {
    out["violation_index"] = r.violation_index;
    if (r.violation_witness) out["violation_witness"] = *r.violation_witness;
  }
  if (r.n0)
    out["n0"] = *r.n0;
  else
    out["n0"] = nullptr;
  return out;
}

Json region_json(const asymptotics::RegionDescription& r) {
  Json lines = Json::array();
  for (const auto& l : r.lines)
    lines.push_back(Json{{"a", int_json(l.a)}, {"b", int_json(l.b)}});
  Json polys = Json::array();
  for (const auto& [key, poly] : r.polys)
    polys.push_back(Json{{"region", key.first}, {"j", key.second}, {"poly", poly2_json(poly)}});
  return Json{{"i", r.i},
              {"t0", r.t0},
              {"D", r.period},
              {"lines", std::move(lines)},
              {"polys", std::move(polys)}};
}

Json ci_report_json(const asymptotics::CiBridgeReport& r) {
  Json out{{"ok", r.ok}, {"t_max", r.t_max}, {"checks", r.checks}};
  if (r.first_discrepancy)
    out["first_discrepancy"] =
        Json{{"mu", r.first_discrepancy->first}, {"t", r.first_discrepancy->second}};
  return out;
}

Json error_json(const Error& e) {
  Json out{{"code", e.code()}, {"message", e.what()}};
  if (!e.witness().empty()) out["witness"] = e.witness();
  return out;
}

Json load_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open input file", path);
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("bad-input", std::string("malformed JSON: ") + e.what(), path);
  }
}

}  // namespace vpart::jsonio
