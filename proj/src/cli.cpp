#include "vpart/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vpart/asymptotics.hpp"
#include "vpart/betti.hpp"
#include "vpart/error.hpp"
#include "vpart/genfun.hpp"
#include "vpart/json_io.hpp"
#include "vpart/matrix.hpp"
#include "vpart/monomial.hpp"
#include "vpart/numeric.hpp"
#include "vpart/partition.hpp"
#include "vpart/polyhedron.hpp"

namespace vpart::cli {
namespace {

using jsonio::Json;
using linalg::IntMatrix;
using monomial::MonomialIdeal;
using partition::TRange;

enum class Format { json, csv, table };

// Bad flags or flag combinations; reported on stderr with exit status 2.
struct UsageError {
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw UsageError{msg}; }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::table;
}

long parse_long_flag(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) usage(what + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    usage(what + ": expected an integer, got '" + s + "'");
  } catch (const std::out_of_range&) {
    usage(what + ": value out of range: '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

IntVec parse_int_list(const std::string& s, const std::string& what) {
  if (s.empty()) usage(what + " is required");
  IntVec out;
  for (const auto& part : split(s, ',')) {
    try {
      out.push_back(Int(part));
    } catch (const std::invalid_argument&) {
      usage(what + ": expected a comma-separated integer list, got '" + s + "'");
    }
  }
  return out;
}

// Inclusive integer range written "lo..hi".
TRange parse_range(const std::string& s, const std::string& what) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) usage(what + ": expected a range 'lo..hi', got '" + s + "'");
  TRange r;
  r.lo = parse_long_flag(s.substr(0, dots), what);
  r.hi = parse_long_flag(s.substr(dots + 2), what);
  if (r.lo > r.hi) usage(what + ": empty range '" + s + "'");
  return r;
}

monomial::FiltrationKind parse_kind(const std::string& s, const std::string& what) {
  if (s == "powers") return monomial::FiltrationKind::powers;
  if (s == "integral_closure") return monomial::FiltrationKind::integral_closure;
  if (s == "ratliff_rush") return monomial::FiltrationKind::ratliff_rush;
  usage(what + ": expected powers, integral_closure, or ratliff_rush");
}

IntMatrix load_matrix(const std::string& path, const std::string& what) {
  if (path.empty()) usage(what + " is required");
  return jsonio::parse_matrix(jsonio::load_json(path));
}

MonomialIdeal load_ideal(const std::string& path, const std::string& what) {
  if (path.empty()) usage(what + " is required");
  return jsonio::parse_ideal(jsonio::load_json(path));
}

IntVec parse_rhs(const std::string& s, int expected, const std::string& what) {
  IntVec b = parse_int_list(s, what);
  if (int(b.size()) != expected)
    throw Error("bad-input", what + " has " + std::to_string(b.size()) + " entries, expected " +
                                 std::to_string(expected));
  return b;
}

// ---------------------------------------------------------------------------
// Rendering.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json doc;
  std::optional<Table> table;       // tabular view for csv and table formats
  std::optional<std::string> bare;  // preformatted text, preferred by the table format
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  for (size_t j = 0; j < t.header.size(); ++j) out << (j ? "," : "") << csv_escape(t.header[j]);
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_escape(row[j]);
    out << "\n";
  }
  return out.str();
}

std::string render_table(const Table& t) {
  std::vector<size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (size_t j = 0; j < row.size() && j < width.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << "  ";
      out << row[j];
      if (j + 1 < row.size())
        out << std::string(width[j] > row[j].size() ? width[j] - row[j].size() : 0, ' ');
    }
    out << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

std::string json_leaf(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void flatten_json(const Json& j, const std::string& path, Table& t) {
  if (j.is_object()) {
    if (j.empty()) t.rows.push_back({path, "{}"});
    for (const auto& el : j.items()) flatten_json(el.value(), path + "/" + el.key(), t);
  } else if (j.is_array()) {
    if (j.empty()) t.rows.push_back({path, "[]"});
    size_t k = 0;
    for (const auto& v : j) flatten_json(v, path + "/" + std::to_string(k++), t);
  } else {
    t.rows.push_back({path.empty() ? "/" : path, json_leaf(j)});
  }
}

Table flatten_table(const Json& doc) {
  Table t;
  t.header = {"path", "value"};
  flatten_json(doc, "", t);
  return t;
}

int emit(const Output& o, Format f, const std::string& out_path) {
  std::string text;
  switch (f) {
    case Format::json:
      text = o.doc.dump(2) + "\n";
      break;
    case Format::csv:
      text = render_csv(o.table ? *o.table : flatten_table(o.doc));
      break;
    case Format::table:
      if (o.bare) {
        text = *o.bare;
        if (text.empty() || text.back() != '\n') text += "\n";
      } else {
        text = render_table(o.table ? *o.table : flatten_table(o.doc));
      }
      break;
  }
  if (out_path == "-" || out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("io", "cannot open output file: " + out_path);
    out << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Pretty printers for the table format.

std::string ivec_str(const IntVec& v) {
  std::string out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) out += " ";
    out += v[k].get_str();
  }
  return out;
}

std::string matrix_str(const IntMatrix& m) {
  std::vector<size_t> width(size_t(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      width[size_t(j)] = std::max(width[size_t(j)], m.at(i, j).get_str().size());
  std::ostringstream out;
  for (int i = 0; i < m.rows(); ++i) {
    out << "[";
    for (int j = 0; j < m.cols(); ++j) {
      const std::string s = m.at(i, j).get_str();
      if (j) out << " ";
      out << std::string(width[size_t(j)] - s.size(), ' ') << s;
    }
    out << "]\n";
  }
  return out.str();
}

std::string var_name(int k, int nvars) {
  static const char* small[] = {"x", "y", "z"};
  if (nvars <= 3) return small[k];
  return "x" + std::to_string(k + 1);
}

std::string monomial_str(const monomial::Expo& e, int nvars) {
  std::string out;
  for (int k = 0; k < nvars; ++k) {
    if (e[size_t(k)] == 0) continue;
    if (!out.empty()) out += "*";
    out += var_name(k, nvars);
    if (e[size_t(k)] > 1) out += "^" + std::to_string(e[size_t(k)]);
  }
  return out.empty() ? "1" : out;
}

std::string ideal_str(const MonomialIdeal& i) {
  if (i.is_zero()) return "(0)";
  std::string out = "(";
  for (size_t k = 0; k < i.generators().size(); ++k) {
    if (k) out += ", ";
    out += monomial_str(i.generators()[k], i.nvars());
  }
  return out + ")";
}

std::string rat_str(const Rat& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string poly2_str(const partition::Poly2& p) {
  if (p.coeffs.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : p.coeffs) {
    if (!out.empty()) out += " + ";
    std::string mono;
    if (key.first > 0) mono += "mu" + (key.first > 1 ? "^" + std::to_string(key.first) : "");
    if (key.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += "t" + (key.second > 1 ? "^" + std::to_string(key.second) : "");
    }
    if (mono.empty()) out += rat_str(c);
    else if (c == 1) out += mono;
    else out += rat_str(c) + "*" + mono;
  }
  return out;
}

std::string line_str(const asymptotics::LineFunc& l) {
  std::string out = l.a.get_str() + "*t";
  if (l.b > 0) out += " + " + l.b.get_str();
  if (l.b < 0) out += " - " + Int(-l.b).get_str();
  return out;
}

// ---------------------------------------------------------------------------
// Built-in example checks behind --selftest.

struct SelfTest {
  std::string name;
  int checks = 0;

  void ok(bool cond, const std::string& label) {
    ++checks;
    if (!cond) throw Error("selftest", "selftest " + name + " failed: " + label);
  }

  Output finish() const {
    Output o;
    o.doc = Json{{"selftest", name}, {"checks", checks}, {"ok", true}};
    o.bare = "selftest " + name + ": " + std::to_string(checks) + " checks ok";
    return o;
  }
};

const IntMatrix& example_matrix() {
  static const IntMatrix a{{3, 5, 8, 9}, {1, 1, 1, 1}};
  return a;
}

MonomialIdeal mk_ideal(int nvars, std::vector<monomial::Expo> gens) {
  return MonomialIdeal(nvars, std::move(gens));
}

Output selftest_hnf() {
  SelfTest st{"hnf"};
  const auto& a = example_matrix();
  const auto r = linalg::hnf(a);
  const IntMatrix want{{1, 0, 0, 0}, {0, 1, 0, 0}};
  st.ok(r.h == want, "reduced degree matrix");
  st.ok(a * r.u == r.h, "A*U = H");
  st.ok(abs_int(linalg::determinant(r.u)) == 1, "U unimodular");
  const IntMatrix id = IntMatrix::identity(3);
  const auto ri = linalg::hnf(id);
  st.ok(ri.h == id && ri.u == id, "identity fixed");
  return st.finish();
}

Output selftest_reduce() {
  SelfTest st{"reduce"};
  const auto red = polyhedra::reduce_to_full_dim(example_matrix(), {Int(30), Int(5)});
  st.ok(red.has_value(), "rhs (30,5) in the column lattice");
  st.ok(red->q.dim == 2, "two free coordinates");
  st.ok(polyhedra::enumerate_lattice_points(red->q).size() == 2, "two lattice points");
  return st.finish();
}

Output selftest_count() {
  SelfTest st{"count"};
  const auto& a = example_matrix();
  st.ok(polyhedra::count_lattice_points(polyhedra::fiber_polytope(a, {Int(30), Int(5)})) == 2,
        "count(30,5) = 2");
  st.ok(polyhedra::count_lattice_points(polyhedra::fiber_polytope(a, {Int(4), Int(1)})) == 0,
        "count(4,1) = 0");
  st.ok(polyhedra::count_lattice_points(polyhedra::fiber_polytope(a, {Int(9), Int(1)})) == 1,
        "count(9,1) = 1");
  return st.finish();
}

Output selftest_vpf() {
  SelfTest st{"vpf"};
  const partition::WeightSystem w({Int(3), Int(5), Int(8), Int(9)});
  st.ok(partition::evaluate(w, 30, 5) == 2, "phi(30,5) = 2");
  st.ok(partition::evaluate(w, 0, 0) == 1, "phi(0,0) = 1");
  const partition::WeightSystem w23({Int(2), Int(3)});
  st.ok(partition::evaluate(w23, 7, 3) == 1, "phi(7,3) = 1 for degrees 2,3");
  return st.finish();
}

Output selftest_chambers() {
  SelfTest st{"chambers"};
  const auto cs = partition::chamber_complex(partition::WeightSystem({Int(3), Int(5), Int(8), Int(9)}));
  st.ok(cs.size() == 3, "three chambers");
  st.ok(cs.front().global_lattice.determinant() == 180, "global period 180");
  const auto one = partition::chamber_complex(partition::WeightSystem({Int(2), Int(2)}));
  st.ok(one.size() == 1 && one[0].degenerate(), "equal degrees collapse to one ray");
  return st.finish();
}

Output selftest_fit() {
  SelfTest st{"fit"};
  const partition::WeightSystem w({Int(2), Int(3)});
  const auto cs = partition::chamber_complex(w);
  const TRange fit = partition::default_fit_rows(w, cs[0]);
  const auto q = partition::fit_quasi_polynomial(w, cs[0], fit, {10, 19});
  st.ok(q.coset_polys.size() == 1, "one coset");
  st.ok(q.value_at(12, 5) == 1, "value 1 inside the cone");
  const partition::WeightSystem w22({Int(2), Int(2)});
  const auto cs22 = partition::chamber_complex(w22);
  const auto q22 = partition::fit_quasi_polynomial(w22, cs22[0], partition::default_fit_rows(w22, cs22[0]),
                                                   {10, 19});
  st.ok(q22.value_at(14, 7) == 8, "ray value t+1");
  return st.finish();
}

Output selftest_ideal() {
  SelfTest st{"ideal"};
  const auto m = mk_ideal(2, {{1, 0}, {0, 1}});
  st.ok(monomial::power(m, 2) == mk_ideal(2, {{2, 0}, {1, 1}, {0, 2}}), "(x,y)^2");
  st.ok(monomial::colon(mk_ideal(2, {{2, 0}, {0, 2}}), m) == mk_ideal(2, {{2, 0}, {1, 1}, {0, 2}}),
        "colon by the maximal ideal");
  const auto rr = monomial::ratliff_rush(mk_ideal(2, {{1, 0}}), 10);
  st.ok(rr.ideal == mk_ideal(2, {{1, 0}}) && rr.stabilized, "principal ideal is its own closure");
  const auto r = monomial::is_reduction(mk_ideal(2, {{2, 0}, {0, 2}}), monomial::power(m, 2), 6);
  st.ok(r.has_value() && *r == 1, "reduction number 1");
  return st.finish();
}

Output selftest_filtration() {
  SelfTest st{"filtration"};
  const auto base = mk_ideal(2, {{2, 0}, {0, 3}});
  const auto f = monomial::build_filtration(monomial::FiltrationKind::powers, base, 3);
  st.ok(f.terms.size() == 4 && f.terms[0].is_unit(), "terms 0..horizon");
  st.ok(f.terms[2] == monomial::power(base, 2), "term 2 is the square");
  const auto rep = monomial::good_filtration_check(f, base);
  st.ok(rep.containment_ok && rep.n0.has_value() && *rep.n0 == 0, "powers are a good filtration");
  return st.finish();
}

Output selftest_betti() {
  SelfTest st{"betti"};
  const auto g = betti::graded_betti(mk_ideal(2, {{1, 0}, {0, 1}}));
  st.ok(g.entries.at({0, 1}) == 2 && g.entries.at({1, 2}) == 1, "koszul resolution of (x,y)");
  const auto mb = betti::multigraded_betti(mk_ideal(2, {{2, 0}, {0, 2}}));
  st.ok(mb.at({1, {2, 2}}) == 1, "syzygy of (x^2,y^2) at (2,2)");
  const auto g23 = betti::graded_betti(mk_ideal(2, {{2, 0}, {0, 3}}));
  st.ok(g23.entries.at({0, 2}) == 1 && g23.entries.at({0, 3}) == 1 && g23.entries.at({1, 5}) == 1,
        "resolution of (x^2,y^3)");
  return st.finish();
}

Output selftest_regions() {
  SelfTest st{"regions"};
  const auto base = mk_ideal(2, {{2, 0}, {0, 3}});
  const auto fam =
      betti::betti_family(monomial::build_filtration(monomial::FiltrationKind::powers, base, 8));
  const partition::WeightSystem w({Int(2), Int(3)});
  const auto r = asymptotics::detect_regions(fam, 0, w, {3, 6}, {7, 8});
  st.ok(r.lines.size() == 2 && r.lines[0] == asymptotics::LineFunc{2, 0} &&
            r.lines[1] == asymptotics::LineFunc{3, 0},
        "boundary lines 2t and 3t");
  st.ok(r.period == 1 && r.t0 <= 3, "period 1, early threshold");
  st.ok(asymptotics::predict(r, 10, 5) == 1 && asymptotics::predict(r, 9, 5) == 0,
        "indicator of the band");
  return st.finish();
}

Output selftest_brion() {
  SelfTest st{"brion"};
  const std::vector<RatVec> square = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  st.ok(genfun::brion_check(square, {{Int(-1), Int(-1)}, {Int(2), Int(2)}}), "unit square");
  const std::vector<RatVec> tri = {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
  st.ok(genfun::brion_check(tri, {{Int(-1), Int(-1)}, {Int(3), Int(3)}}), "right triangle");
  const std::vector<RatVec> seg = {{Rat(0)}, {Rat(5)}};
  st.ok(genfun::brion_check(seg, {{Int(-1)}, {Int(6)}}), "segment [0,5]");
  return st.finish();
}

Output selftest_certify_ci() {
  SelfTest st{"certify-ci"};
  const auto r1 = asymptotics::certify_ci_bridge({1}, 3);
  st.ok(r1.ok && r1.checks > 0, "single linear form");
  const auto r23 = asymptotics::certify_ci_bridge({2, 3}, 3);
  st.ok(r23.ok, "degrees 2,3");
  return st.finish();
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

struct Args {
  std::string format = "table";
  std::string output = "-";
  bool selftest = false;

  std::string matrix, rhs, degrees, ideal, other, vertices, box, kind, op;
  std::string fit, validate, mu_range, t_range;
  int index = 0;         // regions --i
  int chamber = -1;      // fit --chamber
  long power_t = 1;      // ideal/betti --t
  long horizon = -1;     // per-command default resolved in the handler
  long tmax = 4;
  int cap = -1;
  int doublings = 4;
  bool multigraded = false;
};

Output cmd_hnf(const Args& a) {
  if (a.selftest) return selftest_hnf();
  const auto m = load_matrix(a.matrix, "--matrix");
  const auto r = linalg::hnf(m);
  Output o;
  o.doc = Json{{"H", jsonio::matrix_json(r.h)}, {"U", jsonio::matrix_json(r.u)}};
  o.bare = "H =\n" + matrix_str(r.h) + "U =\n" + matrix_str(r.u);
  Table t;
  t.header = {"matrix", "row", "col", "value"};
  auto push = [&](const char* name, const IntMatrix& mm) {
    for (int i = 0; i < mm.rows(); ++i)
      for (int j = 0; j < mm.cols(); ++j)
        t.rows.push_back({name, std::to_string(i), std::to_string(j), mm.at(i, j).get_str()});
  };
  push("H", r.h);
  push("U", r.u);
  o.table = std::move(t);
  return o;
}

Output cmd_reduce(const Args& a) {
  if (a.selftest) return selftest_reduce();
  const auto m = load_matrix(a.matrix, "--matrix");
  const IntVec b = parse_rhs(a.rhs, m.rows(), "--rhs");
  const auto red = polyhedra::reduce_to_full_dim(m, b);
  Output o;
  if (!red) {
    o.doc = Json{{"feasible", false}};
    o.bare = "infeasible: rhs outside the column lattice";
    return o;
  }
  o.doc = Json{{"feasible", true},
               {"dim", red->q.dim},
               {"x0", jsonio::ivec_json(red->x0)},
               {"generators", jsonio::matrix_json(red->generators)},
               {"ineq_c", jsonio::matrix_json(red->q.ineq_c)},
               {"ineq_b", jsonio::ivec_json(red->q.ineq_b)}};
  std::ostringstream text;
  text << "dim = " << red->q.dim << "\n"
       << "x0 = [" << ivec_str(red->x0) << "]\n"
       << "generators =\n"
       << matrix_str(red->generators) << "inequalities = " << red->q.ineq_c.rows();
  o.bare = text.str();
  return o;
}

Output cmd_count(const Args& a) {
  if (a.selftest) return selftest_count();
  const auto m = load_matrix(a.matrix, "--matrix");
  const IntVec b = parse_rhs(a.rhs, m.rows(), "--rhs");
  const Int n = polyhedra::count_lattice_points(polyhedra::fiber_polytope(m, b));
  Output o;
  o.doc = Json{{"count", jsonio::int_json(n)}};
  o.bare = n.get_str();
  o.table = Table{{"count"}, {{n.get_str()}}};
  return o;
}

Output cmd_vpf(const Args& a) {
  if (a.selftest) return selftest_vpf();
  const partition::WeightSystem w(parse_int_list(a.degrees, "--degrees"));
  Output o;
  if (!a.rhs.empty()) {
    if (!a.mu_range.empty() || !a.t_range.empty())
      usage("--rhs and --mu/--t are mutually exclusive");
    const IntVec b = parse_rhs(a.rhs, 2, "--rhs");
    const Int v = partition::evaluate(w, b[0], b[1]);
    o.doc = Json{{"degrees", jsonio::ivec_json(w.degrees)},
                 {"mu", jsonio::int_json(b[0])},
                 {"t", jsonio::int_json(b[1])},
                 {"value", jsonio::int_json(v)}};
    o.bare = v.get_str();
    o.table = Table{{"mu", "t", "value"}, {{b[0].get_str(), b[1].get_str(), v.get_str()}}};
    return o;
  }
  if (a.mu_range.empty() || a.t_range.empty()) usage("need --rhs 'mu,t' or both --mu and --t ranges");
  const TRange mur = parse_range(a.mu_range, "--mu");
  const TRange tr = parse_range(a.t_range, "--t");
  std::vector<std::pair<Int, Int>> points;
  for (long t = tr.lo; t <= tr.hi; ++t)
    for (long mu = mur.lo; mu <= mur.hi; ++mu) points.emplace_back(Int(mu), Int(t));
  const std::vector<Int> values = partition::evaluate_many(w, points);
  Json rows = Json::array();
  Table tab{{"mu", "t", "value"}, {}};
  for (size_t k = 0; k < points.size(); ++k) {
    rows.push_back(Json{{"mu", jsonio::int_json(points[k].first)},
                        {"t", jsonio::int_json(points[k].second)},
                        {"value", jsonio::int_json(values[k])}});
    tab.rows.push_back(
        {points[k].first.get_str(), points[k].second.get_str(), values[k].get_str()});
  }
  o.doc = Json{{"degrees", jsonio::ivec_json(w.degrees)}, {"values", std::move(rows)}};
  o.table = std::move(tab);
  return o;
}

Output cmd_chambers(const Args& a) {
  if (a.selftest) return selftest_chambers();
  const partition::WeightSystem w(parse_int_list(a.degrees, "--degrees"));
  const auto cs = partition::chamber_complex(w);
  Output o;
  o.doc = Json{{"degrees", jsonio::ivec_json(w.degrees)}, {"chambers", jsonio::chambers_json(cs)}};
  Table t{{"chamber", "low_ray", "high_ray", "det", "global_det"}, {}};
  for (size_t k = 0; k < cs.size(); ++k)
    t.rows.push_back({std::to_string(k), ivec_str(cs[k].low_ray), ivec_str(cs[k].high_ray),
                      cs[k].lattice.determinant().get_str(),
                      cs[k].global_lattice.determinant().get_str()});
  o.table = std::move(t);
  return o;
}

Output cmd_fit(const Args& a) {
  if (a.selftest) return selftest_fit();
  const partition::WeightSystem w(parse_int_list(a.degrees, "--degrees"));
  const auto cs = partition::chamber_complex(w);
  std::vector<size_t> picks;
  if (a.chamber >= 0) {
    if (size_t(a.chamber) >= cs.size())
      usage("--chamber " + std::to_string(a.chamber) + " out of range; " +
            std::to_string(cs.size()) + " chambers");
    picks.push_back(size_t(a.chamber));
  } else {
    for (size_t k = 0; k < cs.size(); ++k) picks.push_back(k);
  }
  Json fits = Json::array();
  std::ostringstream text;
  for (size_t k : picks) {
    const auto& c = cs[k];
    TRange fit = a.fit.empty() ? partition::default_fit_rows(w, c) : parse_range(a.fit, "--fit");
    TRange val{0, 0};
    if (!a.validate.empty()) {
      val = parse_range(a.validate, "--validate");
    } else if (fit.lo > 1) {
      val = {std::max(long(0), fit.lo - 10), fit.lo - 1};
    } else {
      val = fit;
    }
    const auto q = partition::fit_quasi_polynomial(w, c, fit, val);
    int max_deg = 0;
    for (const auto& [rep, poly] : q.coset_polys) max_deg = std::max(max_deg, poly.total_degree());
    fits.push_back(Json{{"chamber", long(k)},
                        {"low_ray", jsonio::ivec_json(c.low_ray)},
                        {"high_ray", jsonio::ivec_json(c.high_ray)},
                        {"fit_rows", Json{{"lo", fit.lo}, {"hi", fit.hi}}},
                        {"validate_rows", Json{{"lo", val.lo}, {"hi", val.hi}}},
                        {"max_total_degree", max_deg},
                        {"quasi_polynomial", jsonio::quasi_polynomial_json(q)}});
    text << "chamber " << k << ": rays (" << ivec_str(c.low_ray) << ") to (" << ivec_str(c.high_ray)
         << "), period " << q.lattice.determinant().get_str() << ", max total degree " << max_deg
         << "\n";
    for (const auto& [rep, poly] : q.coset_polys)
      text << "  coset (" << ivec_str(rep) << "): " << poly2_str(poly) << "\n";
  }
  Output o;
  o.doc = Json{{"degrees", jsonio::ivec_json(w.degrees)}, {"fits", std::move(fits)}};
  o.bare = text.str();
  return o;
}

Output cmd_ideal(const Args& a) {
  if (a.selftest) return selftest_ideal();
  if (a.op.empty()) usage("--op is required");
  const auto i = load_ideal(a.ideal, "--ideal");
  auto need_other = [&] { return load_ideal(a.other, "--other"); };
  auto ideal_output = [&](const MonomialIdeal& r) {
    Output o;
    o.doc = jsonio::ideal_json(r);
    o.bare = ideal_str(r);
    return o;
  };
  if (a.op == "power") {
    if (a.power_t < 0) usage("--t must be nonnegative");
    return ideal_output(monomial::power(i, a.power_t));
  }
  if (a.op == "multiply") return ideal_output(monomial::multiply(i, need_other()));
  if (a.op == "sum") return ideal_output(monomial::sum(i, need_other()));
  if (a.op == "intersect") return ideal_output(monomial::intersect(i, need_other()));
  if (a.op == "colon") return ideal_output(monomial::colon(i, need_other()));
  if (a.op == "closure-power") {
    if (a.power_t < 0) usage("--t must be nonnegative");
    return ideal_output(monomial::integral_closure_power(i, a.power_t));
  }
  if (a.op == "ratliff-rush") {
    const long h = a.horizon < 0 ? 10 : a.horizon;
    const auto rr = monomial::ratliff_rush(i, h);
    Output o;
    o.doc = Json{{"ideal", jsonio::ideal_json(rr.ideal)},
                 {"stabilized", rr.stabilized},
                 {"rounds", rr.rounds}};
    o.bare = ideal_str(rr.ideal) + (rr.stabilized ? "\nstabilized after " : "\nnot stabilized within ") +
             std::to_string(rr.rounds) + " rounds";
    return o;
  }
  if (a.op == "is-reduction") {
    const long h = a.horizon < 0 ? 6 : a.horizon;
    const auto r = monomial::is_reduction(need_other(), i, h);
    Output o;
    o.doc = Json{{"is_reduction", r.has_value()}};
    if (r) o.doc["r"] = *r;
    o.bare = r ? "reduction number " + std::to_string(*r)
               : "not a reduction within horizon " + std::to_string(h);
    return o;
  }
  usage("--op: expected power, multiply, sum, intersect, colon, closure-power, ratliff-rush, or "
        "is-reduction");
}

Output cmd_filtration(const Args& a) {
  if (a.selftest) return selftest_filtration();
  if (a.kind.empty()) usage("--kind is required");
  const auto kind = parse_kind(a.kind, "--kind");
  const auto base = load_ideal(a.ideal, "--ideal");
  const long h = a.horizon < 0 ? 5 : a.horizon;
  const auto f = monomial::build_filtration(kind, base, h);
  const auto rep = monomial::good_filtration_check(f, base);
  Output o;
  o.doc = Json{{"filtration", jsonio::filtration_json(f)}, {"good", jsonio::good_report_json(rep)}};
  std::ostringstream text;
  text << "kind = " << a.kind << "\nhorizon = " << h << "\n";
  for (long t = 0; t < long(f.terms.size()); ++t)
    text << "term " << t << " = " << ideal_str(f.terms[size_t(t)]) << "\n";
  text << "containment_ok = " << (rep.containment_ok ? "true" : "false") << "\n";
  if (!rep.containment_ok) {
    text << "violation at t = " << rep.violation_index;
    if (rep.violation_witness)
      text << ", witness " << monomial_str(*rep.violation_witness, base.nvars());
    text << "\n";
  }
  text << "n0 = " << (rep.n0 ? std::to_string(*rep.n0) : "none");
  o.bare = text.str();
  return o;
}

Output cmd_betti(const Args& a) {
  if (a.selftest) return selftest_betti();
  MonomialIdeal i = load_ideal(a.ideal, "--ideal");
  if (a.power_t < 0) usage("--t must be nonnegative");
  if (a.power_t != 1) i = monomial::power(i, a.power_t);
  Output o;
  if (a.multigraded) {
    const auto mb = betti::multigraded_betti(i);
    o.doc = jsonio::multigraded_json(i.nvars(), mb);
    Table t{{"i", "alpha", "beta"}, {}};
    for (const auto& [key, beta] : mb) {
      IntVec alpha;
      for (long e : key.second) alpha.push_back(e);
      t.rows.push_back({std::to_string(key.first), ivec_str(alpha), std::to_string(beta)});
    }
    o.table = std::move(t);
    return o;
  }
  const auto g = betti::graded_betti(i);
  o.doc = jsonio::betti_table_json(g);
  Table t{{"i", "mu", "beta"}, {}};
  for (const auto& [key, beta] : g.entries)
    t.rows.push_back({std::to_string(key.first), std::to_string(key.second), std::to_string(beta)});
  o.table = std::move(t);
  return o;
}

Output cmd_regions(const Args& a) {
  if (a.selftest) return selftest_regions();
  if (a.kind.empty()) usage("--filtration is required");
  const auto kind = parse_kind(a.kind, "--filtration");
  const auto base = load_ideal(a.ideal, "--ideal");
  if (a.fit.empty() || a.validate.empty()) usage("--fit and --validate ranges are required");
  const TRange fit = parse_range(a.fit, "--fit");
  const TRange val = parse_range(a.validate, "--validate");
  const long h = a.horizon < 0 ? std::max(fit.hi, val.hi) : a.horizon;
  if (h < std::max(fit.hi, val.hi)) usage("--horizon must cover the fit and validate ranges");
  const auto fam = betti::betti_family(monomial::build_filtration(kind, base, h));
  IntVec degs;
  for (const auto& g : base.generators()) {
    long d = 0;
    for (long e : g) d += e;
    degs.push_back(d);
  }
  const partition::WeightSystem w(degs);
  const auto r = asymptotics::detect_regions(fam, a.index, w, fit, val, a.cap, a.doublings);
  Output o;
  o.doc = jsonio::region_json(r);
  std::ostringstream text;
  text << "i = " << r.i << "\nt0 = " << r.t0 << "\nD = " << r.period << "\n";
  text << "lines:\n";
  for (const auto& l : r.lines) text << "  " << line_str(l) << "\n";
  text << "polynomials:\n";
  if (r.polys.empty()) text << "  (identically zero)\n";
  for (const auto& [key, poly] : r.polys)
    text << "  band " << key.first << ", residue " << key.second << ": " << poly2_str(poly) << "\n";
  o.bare = text.str();
  return o;
}

Output cmd_brion(const Args& a) {
  if (a.selftest) return selftest_brion();
  if (a.vertices.empty()) usage("--vertices is required");
  const auto verts = jsonio::parse_points(jsonio::load_json(a.vertices));
  if (verts.empty()) throw Error("bad-input", "vertex list is empty");
  const int dim = int(verts[0].size());
  genfun::Box box;
  if (!a.box.empty()) {
    const auto parts = split(a.box, ',');
    if (int(parts.size()) != dim)
      usage("--box needs one range per coordinate, got " + std::to_string(parts.size()) +
            " for dimension " + std::to_string(dim));
    for (const auto& p : parts) {
      const TRange r = parse_range(p, "--box");
      box.lo.push_back(Int(r.lo));
      box.hi.push_back(Int(r.hi));
    }
  } else {
    for (int k = 0; k < dim; ++k) {
      Rat lo = verts[0][size_t(k)], hi = verts[0][size_t(k)];
      for (const auto& v : verts) {
        lo = std::min(lo, v[size_t(k)]);
        hi = std::max(hi, v[size_t(k)]);
      }
      box.lo.push_back(floor_rat(lo) - 1);
      box.hi.push_back(ceil_rat(hi) + 1);
    }
  }
  const bool match = genfun::brion_check(verts, box);
  const auto series = genfun::truncate(genfun::brion_sum(verts), box);
  Output o;
  o.doc = Json{{"dim", dim},
               {"box_lo", jsonio::ivec_json(box.lo)},
               {"box_hi", jsonio::ivec_json(box.hi)},
               {"nonzero_coefficients", long(series.coeffs.size())},
               {"match", match}};
  std::ostringstream text;
  text << "box =";
  for (int k = 0; k < dim; ++k)
    text << (k ? " x " : " ") << "[" << box.lo[size_t(k)].get_str() << ".."
         << box.hi[size_t(k)].get_str() << "]";
  text << "\nnonzero coefficients = " << series.coeffs.size()
       << "\nmatch = " << (match ? "true" : "false");
  o.bare = text.str();
  return o;
}

Output cmd_certify_ci(const Args& a) {
  if (a.selftest) return selftest_certify_ci();
  const IntVec degs = parse_int_list(a.degrees, "--degrees");
  std::vector<long> small;
  for (const Int& d : degs) {
    if (d <= 0 || !d.fits_slong_p()) usage("--degrees must be small positive integers");
    small.push_back(d.get_si());
  }
  if (a.tmax < 0) usage("--tmax must be nonnegative");
  const auto rep = asymptotics::certify_ci_bridge(small, a.tmax);
  Output o;
  o.doc = jsonio::ci_report_json(rep);
  std::ostringstream text;
  if (rep.ok) {
    text << "ok: " << rep.checks << " checks, t <= " << rep.t_max;
  } else {
    text << "mismatch at mu = " << rep.first_discrepancy->first
         << ", t = " << rep.first_discrepancy->second;
  }
  o.bare = text.str();
  return o;
}

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--format", a.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--output", a.output, "output path, '-' for stdout");
  sub->add_flag("--selftest", a.selftest, "run built-in example checks and exit");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"exact vector partition functions, lattice points, and Betti tables"};
  app.require_subcommand(1);
  Args a;
  std::function<Output()> action;
  auto bind = [&](CLI::App* sub, Output (*fn)(const Args&)) {
    sub->callback([&a, &action, fn] { action = [&a, fn] { return fn(a); }; });
  };

  auto* hnf = app.add_subcommand("hnf", "column-style Hermite normal form A*U = [L|0]");
  add_common(hnf, a);
  hnf->add_option("--matrix", a.matrix, "JSON matrix file, '-' for stdin");
  bind(hnf, cmd_hnf);

  auto* reduce = app.add_subcommand("reduce", "project the fiber {A x = b, x >= 0} to full dimension");
  add_common(reduce, a);
  reduce->add_option("--matrix", a.matrix, "JSON matrix file");
  reduce->add_option("--rhs", a.rhs, "right-hand side, comma-separated");
  bind(reduce, cmd_reduce);

  auto* count = app.add_subcommand("count", "count lattice points of the fiber {A x = b, x >= 0}");
  add_common(count, a);
  count->add_option("--matrix", a.matrix, "JSON matrix file");
  count->add_option("--rhs", a.rhs, "right-hand side, comma-separated");
  bind(count, cmd_count);

  auto* vpf = app.add_subcommand("vpf", "vector partition function of a degree sequence");
  add_common(vpf, a);
  vpf->add_option("--degrees", a.degrees, "positive degrees, comma-separated");
  vpf->add_option("--rhs", a.rhs, "single point 'mu,t'");
  vpf->add_option("--mu", a.mu_range, "mu range 'lo..hi' for a grid");
  vpf->add_option("--t", a.t_range, "t range 'lo..hi' for a grid");
  bind(vpf, cmd_vpf);

  auto* chambers = app.add_subcommand("chambers", "chamber complex and period lattices");
  add_common(chambers, a);
  chambers->add_option("--degrees", a.degrees, "positive degrees, comma-separated");
  bind(chambers, cmd_chambers);

  auto* fit = app.add_subcommand("fit", "chamber quasi-polynomials certified against exact counts");
  add_common(fit, a);
  fit->add_option("--degrees", a.degrees, "positive degrees, comma-separated");
  fit->add_option("--chamber", a.chamber, "chamber index; default all");
  fit->add_option("--fit", a.fit, "fit rows 'lo..hi'; default chosen from the period");
  fit->add_option("--validate", a.validate, "validation rows 'lo..hi'");
  bind(fit, cmd_fit);

  auto* ideal = app.add_subcommand("ideal", "monomial ideal algebra");
  add_common(ideal, a);
  ideal->add_option("--ideal", a.ideal, "JSON ideal file, '-' for stdin");
  ideal->add_option("--op", a.op,
                    "power, multiply, sum, intersect, colon, closure-power, ratliff-rush, "
                    "is-reduction");
  ideal->add_option("--other", a.other, "second ideal for binary ops; candidate for is-reduction");
  ideal->add_option("--t", a.power_t, "exponent for power and closure-power");
  ideal->add_option("--horizon", a.horizon, "search horizon for ratliff-rush and is-reduction");
  bind(ideal, cmd_ideal);

  auto* filtration = app.add_subcommand("filtration", "build a filtration and check it is good");
  add_common(filtration, a);
  filtration->add_option("--ideal", a.ideal, "JSON ideal file");
  filtration->add_option("--kind", a.kind, "powers, integral_closure, or ratliff_rush");
  filtration->add_option("--horizon", a.horizon, "last materialized index; default 5");
  bind(filtration, cmd_filtration);

  auto* betti_cmd = app.add_subcommand("betti", "graded or multigraded Betti numbers");
  add_common(betti_cmd, a);
  betti_cmd->add_option("--ideal", a.ideal, "JSON ideal file");
  betti_cmd->add_option("--t", a.power_t, "replace the ideal by its t-th power");
  betti_cmd->add_flag("--multigraded", a.multigraded, "report multidegrees instead of total degrees");
  bind(betti_cmd, cmd_betti);

  auto* regions = app.add_subcommand("regions", "asymptotic region description of one Betti row");
  add_common(regions, a);
  regions->add_option("--ideal", a.ideal, "JSON ideal file");
  regions->add_option("--filtration", a.kind, "powers, integral_closure, or ratliff_rush");
  regions->add_option("--i", a.index, "homological degree");
  regions->add_option("--fit", a.fit, "fit rows 'lo..hi'");
  regions->add_option("--validate", a.validate, "validation rows 'lo..hi'");
  regions->add_option("--horizon", a.horizon, "last materialized index; default covers validate");
  regions->add_option("--cap", a.cap, "polynomial degree cap; default r - rank");
  regions->add_option("--doublings", a.doublings, "max period doublings");
  bind(regions, cmd_regions);

  auto* brion = app.add_subcommand("brion", "vertex-cone generating function against enumeration");
  add_common(brion, a);
  brion->add_option("--vertices", a.vertices, "JSON vertex list file");
  brion->add_option("--box", a.box, "expansion box 'lo..hi,lo..hi'; default bounding box + 1");
  bind(brion, cmd_brion);

  auto* certify = app.add_subcommand("certify-ci", "first Betti row of pure-power ideals vs counts");
  add_common(certify, a);
  certify->add_option("--degrees", a.degrees, "positive degrees, comma-separated");
  certify->add_option("--tmax", a.tmax, "largest power checked");
  bind(certify, cmd_certify_ci);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return emit(action(), parse_format(a.format), a.output);
  } catch (const Error& e) {
    std::cerr << jsonio::error_json(e).dump() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  }
}

}  // namespace vpart::cli
