#include "vpart/monomial.hpp"

#include <algorithm>

#include "vpart/error.hpp"
#include "vpart/polyhedron.hpp"

namespace vpart::monomial {

namespace {

bool divides(const Expo& a, const Expo& b) {
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

std::vector<Expo> minimalize(std::vector<Expo> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Expo> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < gens.size() && !dominated; ++j)
      if (j != i && divides(gens[j], gens[i]) && gens[j] != gens[i]) dominated = true;
    if (!dominated) out.push_back(gens[i]);
  }
  return out;
}

void check_same_ring(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.nvars() != b.nvars()) throw Error("nvars-mismatch", "ideals live in different rings");
}

}  // namespace

MonomialIdeal::MonomialIdeal(int nvars, std::vector<Expo> gens) : nvars_(nvars) {
  if (nvars < 1) throw Error("invalid-ideal", "ring needs at least one variable");
  for (const auto& g : gens) {
    if (int(g.size()) != nvars) throw Error("invalid-ideal", "generator arity mismatch");
    for (long e : g)
      if (e < 0) throw Error("invalid-ideal", "negative exponent");
  }
  gens_ = minimalize(std::move(gens));
}

MonomialIdeal MonomialIdeal::unit(int nvars) { return MonomialIdeal(nvars, {Expo(size_t(nvars), 0)}); }

MonomialIdeal MonomialIdeal::zero(int nvars) { return MonomialIdeal(nvars, {}); }

bool MonomialIdeal::is_unit() const {
  return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](long e) { return e == 0; });
}

bool MonomialIdeal::contains_monomial(const Expo& e) const {
  for (const auto& g : gens_)
    if (divides(g, e)) return true;
  return false;
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  check_same_ring(*this, other);
  for (const auto& g : other.generators())
    if (!contains_monomial(g)) return false;
  return true;
}

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  std::vector<Expo> gens;
  for (const auto& u : a.generators())
    for (const auto& v : b.generators()) {
      Expo w(u.size());
      for (size_t j = 0; j < u.size(); ++j) w[j] = u[j] + v[j];
      gens.push_back(std::move(w));
    }
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal power(const MonomialIdeal& a, long t) {
  if (t < 0) throw Error("invalid-power", "negative exponent");
  MonomialIdeal acc = MonomialIdeal::unit(a.nvars());
  for (long i = 0; i < t; ++i) acc = multiply(acc, a);
  return acc;
}

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  std::vector<Expo> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  std::vector<Expo> gens;
  for (const auto& u : a.generators())
    for (const auto& v : b.generators()) {
      Expo w(u.size());
      for (size_t j = 0; j < u.size(); ++j) w[j] = std::max(u[j], v[j]);
      gens.push_back(std::move(w));
    }
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal colon(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  if (b.is_zero()) return MonomialIdeal::unit(a.nvars());
  MonomialIdeal acc = MonomialIdeal::unit(a.nvars());
  bool first = true;
  for (const auto& v : b.generators()) {
    std::vector<Expo> gens;
    for (const auto& u : a.generators()) {
      Expo w(u.size());
      for (size_t j = 0; j < u.size(); ++j) w[j] = std::max(u[j] - v[j], 0L);
      gens.push_back(std::move(w));
    }
    MonomialIdeal part(a.nvars(), std::move(gens));
    acc = first ? part : intersect(acc, part);
    first = false;
  }
  return acc;
}

std::optional<long> is_reduction(const MonomialIdeal& j, const MonomialIdeal& i, long max_r) {
  check_same_ring(j, i);
  if (!i.contains(j)) {
    const auto& gens = j.generators();
    std::string witness;
    for (const auto& g : gens)
      if (!i.contains_monomial(g)) {
        witness = "(";
        for (size_t k = 0; k < g.size(); ++k) witness += (k ? "," : "") + std::to_string(g[k]);
        witness += ")";
        break;
      }
    throw Error("not-contained", "candidate reduction is not inside the ideal", witness);
  }
  MonomialIdeal ir = MonomialIdeal::unit(i.nvars());  // i^r
  for (long r = 0; r <= max_r; ++r) {
    MonomialIdeal next = multiply(ir, i);  // i^(r+1)
    if (multiply(j, ir) == next) return r;
    ir = std::move(next);
  }
  return std::nullopt;
}

MonomialIdeal integral_closure_power(const MonomialIdeal& i, long t) {
  if (t < 1) throw Error("invalid-power", "closure power must be positive");
  if (i.is_zero()) return i;
  const int n = i.nvars();
  const int k = int(i.generators().size());

  Expo box(size_t(n), 0);
  for (const auto& g : i.generators())
    for (int j = 0; j < n; ++j) box[size_t(j)] = std::max(box[size_t(j)], g[size_t(j)] * t);

  // Feasibility template over lambda: lambda >= 0, sum lambda = t,
  // sum lambda_g g_j <= a_j; only the right-hand side varies with a.
  polyhedra::Polyhedron p;
  p.dim = k;
  p.eq_a = linalg::IntMatrix(1, k);
  for (int c = 0; c < k; ++c) p.eq_a.at(0, c) = 1;
  p.eq_b = {Int(t)};
  p.ineq_c = linalg::IntMatrix(k + n, k);
  p.ineq_b.assign(size_t(k + n), Int(0));
  for (int c = 0; c < k; ++c) p.ineq_c.at(c, c) = -1;
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < k; ++c) p.ineq_c.at(k + j, c) = i.generators()[size_t(c)][size_t(j)];

  std::vector<Expo> gens;
  Expo a(size_t(n), 0);
  while (true) {
    for (int j = 0; j < n; ++j) p.ineq_b[size_t(k + j)] = a[size_t(j)];
    if (polyhedra::rational_feasible(p)) gens.push_back(a);
    int j = n - 1;
    while (j >= 0 && a[size_t(j)] == box[size_t(j)]) {
      a[size_t(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++a[size_t(j)];
  }
  return MonomialIdeal(n, std::move(gens));
}

RatliffRushResult ratliff_rush(const MonomialIdeal& i, long horizon) {
  MonomialIdeal acc = i;
  MonomialIdeal in = MonomialIdeal::unit(i.nvars());  // i^n
  for (long n = 1; n <= horizon; ++n) {
    in = multiply(in, i);
    MonomialIdeal next = sum(acc, colon(multiply(in, i), in));
    if (next == acc) return RatliffRushResult{std::move(acc), true, n};
    acc = std::move(next);
  }
  return RatliffRushResult{std::move(acc), false, horizon};
}

Filtration build_filtration(FiltrationKind kind, const MonomialIdeal& base, long horizon) {
  if (horizon < 0) throw Error("invalid-filtration", "horizon must be nonnegative");
  if (kind == FiltrationKind::explicit_terms)
    throw Error("invalid-filtration", "explicit filtrations need their terms supplied");
  Filtration f{kind, base, horizon, {}};
  f.terms.reserve(size_t(horizon) + 1);
  f.terms.push_back(MonomialIdeal::unit(base.nvars()));
  MonomialIdeal pw = MonomialIdeal::unit(base.nvars());
  for (long t = 1; t <= horizon; ++t) {
    switch (kind) {
      case FiltrationKind::powers:
        pw = multiply(pw, base);
        f.terms.push_back(pw);
        break;
      case FiltrationKind::integral_closure:
        f.terms.push_back(integral_closure_power(base, t));
        break;
      case FiltrationKind::ratliff_rush:
        pw = multiply(pw, base);
        f.terms.push_back(ratliff_rush(pw).ideal);
        break;
      default:
        break;
    }
  }
  return f;
}

Filtration explicit_filtration(const MonomialIdeal& base, std::vector<MonomialIdeal> terms) {
  if (terms.empty() || !terms[0].is_unit())
    throw Error("invalid-filtration", "terms[0] must be the unit ideal");
  for (const auto& t : terms)
    if (t.nvars() != base.nvars()) throw Error("nvars-mismatch", "filtration term ring mismatch");
  Filtration f{FiltrationKind::explicit_terms, base, long(terms.size()) - 1, std::move(terms)};
  return f;
}

GoodFiltrationReport good_filtration_check(const Filtration& f, const MonomialIdeal& i) {
  GoodFiltrationReport report;
  report.containment_ok = true;
  std::vector<bool> equal(f.terms.size() > 0 ? f.terms.size() - 1 : 0, false);
  for (size_t t = 0; t + 1 < f.terms.size(); ++t) {
    MonomialIdeal step = multiply(i, f.terms[t]);
    equal[t] = (step == f.terms[t + 1]);
    if (!report.containment_ok) continue;
    for (const auto& g : step.generators())
      if (!f.terms[t + 1].contains_monomial(g)) {
        report.containment_ok = false;
        report.violation_index = long(t);
        report.violation_witness = g;
        break;
      }
  }
  if (report.containment_ok && !equal.empty()) {
    long n0 = long(equal.size());
    while (n0 > 0 && equal[size_t(n0 - 1)]) --n0;
    if (n0 < long(equal.size())) report.n0 = n0;
  }
  return report;
}

}  // namespace vpart::monomial
