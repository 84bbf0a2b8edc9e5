#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vpart {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Floor/ceiling quotients; b must be nonzero, either sign allowed.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nonnegative remainder of a mod m, m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor of an exact rational.
inline Int floor_rat(const Rat& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline Int ceil_rat(const Rat& q) {
  return ceil_div(q.get_num(), q.get_den());
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline Int int_from_string(const std::string& s) { return Int(s); }

inline bool lex_less(const IntVec& a, const IntVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace vpart
