#pragma once

#include <optional>
#include <vector>

#include "vpart/numeric.hpp"

namespace vpart::monomial {

// Exponent vector of a monomial; entries nonnegative.
using Expo = std::vector<long>;

// Ideal generated by monomials, stored as the unique minimal generating set
// (no generator divides another), lexicographically sorted. The empty set is
// the zero ideal; the single zero vector is the unit ideal.
class MonomialIdeal {
 public:
  MonomialIdeal(int nvars, std::vector<Expo> gens);

  static MonomialIdeal unit(int nvars);
  static MonomialIdeal zero(int nvars);

  int nvars() const { return nvars_; }
  const std::vector<Expo>& generators() const { return gens_; }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;

  // Membership of a single monomial: some generator divides it.
  bool contains_monomial(const Expo& e) const;
  // Ideal containment: every generator of other lies in this ideal.
  bool contains(const MonomialIdeal& other) const;

  bool operator==(const MonomialIdeal& o) const { return nvars_ == o.nvars_ && gens_ == o.gens_; }
  bool operator!=(const MonomialIdeal& o) const { return !(*this == o); }

 private:
  int nvars_ = 0;
  std::vector<Expo> gens_;
};

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& a, long t);
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);

// (a : b), intersected over the generators of b.
MonomialIdeal colon(const MonomialIdeal& a, const MonomialIdeal& b);

// Smallest r <= max_r with j * i^r = i^(r+1), or nullopt within the horizon.
std::optional<long> is_reduction(const MonomialIdeal& j, const MonomialIdeal& i, long max_r);

// Monomials of the t-fold scaled Newton polyhedron of i: exact rational
// feasibility of lambda >= 0, sum lambda = t, sum lambda_g * g <= a.
MonomialIdeal integral_closure_power(const MonomialIdeal& i, long t);

struct RatliffRushResult {
  MonomialIdeal ideal;
  bool stabilized = false;  // two consecutive colon unions agreed before the horizon
  long rounds = 0;          // colon steps actually taken
};

// Union of (i^(n+1) : i^n) for n up to the horizon.
RatliffRushResult ratliff_rush(const MonomialIdeal& i, long horizon = 10);

enum class FiltrationKind { powers, integral_closure, ratliff_rush, explicit_terms };

// Indexed family terms[0..horizon] with terms[0] the unit ideal; derived
// kinds materialize their terms from the base ideal.
struct Filtration {
  FiltrationKind kind;
  MonomialIdeal base;
  long horizon = 0;
  std::vector<MonomialIdeal> terms;
};

Filtration build_filtration(FiltrationKind kind, const MonomialIdeal& base, long horizon);
Filtration explicit_filtration(const MonomialIdeal& base, std::vector<MonomialIdeal> terms);

struct GoodFiltrationReport {
  bool containment_ok = false;      // i * terms[t] inside terms[t+1] for every t
  long violation_index = -1;        // first t violating containment, when any
  std::optional<Expo> violation_witness;
  std::optional<long> n0;           // least n0 with terms[n+1] = i * terms[n] up to the horizon
};

GoodFiltrationReport good_filtration_check(const Filtration& f, const MonomialIdeal& i);

}  // namespace vpart::monomial
