#include "vpart/asymptotics.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

#include "vpart/error.hpp"
#include "vpart/monomial.hpp"

namespace vpart::asymptotics {

namespace {

// t -> (mu -> beta) for one homological degree, nonzero entries only.
using Rows = std::map<long, std::map<long, long>>;

const std::map<long, long> kEmptyRow;

long small(const Int& v) {
  if (!v.fits_slong_p()) throw Error("overflow", "value exceeds machine range", to_string(v));
  return v.get_si();
}

long residue_of(const Int& slope, const Int& t, const Int& mu, long period) {
  return small(mod_floor(slope * t - mu, Int(period)));
}

Rows betti_rows(const betti::BettiFamily& fam, int i) {
  Rows rows;
  for (const auto& [t, table] : fam.tables) {
    auto& row = rows[t];
    for (const auto& [key, beta] : table.entries)
      if (key.first == i && beta != 0) row[key.second] = beta;
  }
  return rows;
}

const std::map<long, long>& row_at(const Rows& rows, long t) {
  auto it = rows.find(t);
  return it == rows.end() ? kEmptyRow : it->second;
}

long row_value(const std::map<long, long>& row, long mu) {
  auto it = row.find(mu);
  return it == row.end() ? 0 : it->second;
}

bool line_less(const LineFunc& x, const LineFunc& y) {
  return std::make_tuple(x.a, x.b) < std::make_tuple(y.a, y.b);
}

// The unique admissible line through the boundary samples (t, mu); when the
// samples do not pin the slope, the tie goes to the smallest |intercept|,
// then the smallest slope.
LineFunc fit_line(const std::vector<std::pair<long, long>>& samples, const IntVec& slopes,
                  const char* side) {
  std::vector<LineFunc> candidates;
  for (size_t k = 0; k < slopes.size(); ++k) {
    if (k > 0 && slopes[k] == slopes[k - 1]) continue;
    const Int& a = slopes[k];
    Int b = Int(samples.front().second) - a * samples.front().first;
    bool ok = true;
    for (const auto& [t, mu] : samples)
      if (Int(mu) != a * t + b) {
        ok = false;
        break;
      }
    if (ok) candidates.push_back({a, b});
  }
  if (candidates.empty()) {
    std::string data;
    for (const auto& [t, mu] : samples)
      data += "(" + std::to_string(t) + "," + std::to_string(mu) + ")";
    throw Error("no-boundary-line",
                std::string("no admissible slope fits the ") + side + " support boundary", data);
  }
  auto key = [](const LineFunc& l) { return std::make_tuple(abs_int(l.b), l.a, l.b); };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const LineFunc& x, const LineFunc& y) { return key(x) < key(y); });
}

// Interpolates one polynomial per residue class from every integer point of
// the closed band [lo, hi] over the fit rows, zeros included. A collapsed
// band (lo == hi) carries data on a single ray, so pure t powers suffice.
std::map<long, Poly2> fit_band(const LineFunc& lo, const LineFunc& hi, long period, int cap,
                               const Rows& rows, TRange fit) {
  const auto basis = partition::monomial_basis(cap, lo == hi);
  struct Pt {
    Int mu, t;
    long beta;
  };
  std::vector<std::vector<Pt>> pts(static_cast<size_t>(period));
  for (long t = fit.lo; t <= fit.hi; ++t) {
    const auto& row = row_at(rows, t);
    Int mlo = lo.at(t), mhi = hi.at(t);
    for (Int mu = mlo; mu <= mhi; ++mu) {
      long j = residue_of(hi.a, Int(t), mu, period);
      pts[size_t(j)].push_back({mu, Int(t), row_value(row, small(mu))});
    }
  }
  std::map<long, Poly2> out;
  for (long j = 0; j < period; ++j) {
    Poly2 poly;
    if (!pts[size_t(j)].empty()) {
      std::vector<RatVec> a;
      RatVec b;
      for (const auto& p : pts[size_t(j)]) {
        RatVec arow;
        arow.reserve(basis.size());
        for (const auto& [emu, et] : basis) {
          Rat m(1);
          for (int q = 0; q < emu; ++q) m *= Rat(p.mu);
          for (int q = 0; q < et; ++q) m *= Rat(p.t);
          arow.push_back(m);
        }
        a.push_back(std::move(arow));
        b.push_back(Rat(p.beta));
      }
      RatVec coeff = partition::solve_fit(std::move(a), std::move(b), "band polynomial");
      for (size_t k = 0; k < basis.size(); ++k)
        if (coeff[k] != 0) poly.coeffs[basis[k]] = coeff[k];
    }
    out[j] = std::move(poly);
  }
  return out;
}

struct BandFit {
  LineFunc upper;
  std::map<long, Poly2> polys;  // residue -> polynomial
};

// Fits the closed band [lo, hi]; when one polynomial per residue cannot
// interpolate it, tries to insert an interior boundary line with admissible
// slope and recurses on the two halves.
void split_band(const LineFunc& lo, const LineFunc& hi, long period, int cap, const Rows& rows,
                TRange fit, const IntVec& slopes, int depth, int& attempts,
                std::vector<BandFit>& out) {
  try {
    auto polys = fit_band(lo, hi, period, cap, rows, fit);
    out.push_back({hi, std::move(polys)});
    return;
  } catch (const Error&) {
    if (depth <= 0) throw;
    for (size_t k = 0; k < slopes.size(); ++k) {
      if (k > 0 && slopes[k] == slopes[k - 1]) continue;
      const Int& a = slopes[k];
      // Candidate intercepts keeping the line strictly interior on every
      // proper fit row.
      Int bmin, bmax;
      bool open = false, any = false;
      for (long t = fit.lo; t <= fit.hi; ++t) {
        Int l = lo.at(t), h = hi.at(t);
        if (l >= h) continue;
        Int cmin = l - a * t + 1;
        Int cmax = h - a * t - 1;
        if (!any) {
          bmin = cmin;
          bmax = cmax;
          any = true;
        } else {
          if (cmin > bmin) bmin = cmin;
          if (cmax < bmax) bmax = cmax;
        }
      }
      open = any && bmin <= bmax;
      if (!open) continue;
      for (Int b = bmin; b <= bmax; ++b) {
        if (++attempts > 512) throw;
        LineFunc mid{a, b};
        std::vector<BandFit> sub;
        try {
          split_band(lo, mid, period, cap, rows, fit, slopes, depth - 1, attempts, sub);
          split_band(mid, hi, period, cap, rows, fit, slopes, depth - 1, attempts, sub);
        } catch (const Error&) {
          continue;
        }
        for (auto& bf : sub) out.push_back(std::move(bf));
        return;
      }
    }
    throw;
  }
}

struct Attempt {
  std::vector<LineFunc> lines;
  std::map<std::pair<int, long>, Poly2> polys;
};

Attempt fit_regions(const LineFunc& llo, const LineFunc& lhi, long period, int cap,
                    const Rows& rows, TRange fit, const IntVec& slopes) {
  Attempt at;
  if (llo == lhi) {
    at.lines = {llo};
    for (auto& [j, poly] : fit_band(llo, lhi, period, cap, rows, fit))
      at.polys[{0, j}] = std::move(poly);
    return at;
  }
  std::vector<BandFit> bands;
  int attempts = 0;
  split_band(llo, lhi, period, cap, rows, fit, slopes, 6, attempts, bands);
  at.lines.push_back(llo);
  for (const auto& bf : bands) at.lines.push_back(bf.upper);
  for (size_t p = 1; p < at.lines.size(); ++p)
    if (!line_less(at.lines[p - 1], at.lines[p]))
      throw Error("line-order", "fitted boundary lines are not eventually ordered");
  for (size_t p = 0; p < bands.size(); ++p)
    for (auto& [j, poly] : bands[p].polys) at.polys[{int(p), j}] = std::move(poly);
  return at;
}

// nullopt when the row at t matches the description exactly; otherwise the
// offending mu, with -1 flagging a line-ordering violation (betti degrees
// are never negative).
std::optional<long> row_mismatch(const Attempt& at, long period, const Rows& rows, long t) {
  const auto& row = row_at(rows, t);
  if (at.lines.empty()) {
    for (const auto& [mu, beta] : row)
      if (beta != 0) return mu;
    return std::nullopt;
  }
  for (size_t p = 1; p < at.lines.size(); ++p)
    if (!(at.lines[p - 1].at(t) < at.lines[p].at(t))) return -1;
  Int mlo = at.lines.front().at(t), mhi = at.lines.back().at(t);
  for (const auto& [mu, beta] : row)
    if (beta != 0 && (Int(mu) < mlo || Int(mu) > mhi)) return mu;
  for (Int mu = mlo; mu <= mhi; ++mu) {
    size_t band = 0;
    if (at.lines.size() > 1) {
      bool found = false;
      for (size_t p = 0; p + 1 < at.lines.size(); ++p)
        if (at.lines[p].at(t) <= mu && mu <= at.lines[p + 1].at(t)) {
          band = p;
          found = true;
          break;
        }
      if (!found) return small(mu);
    }
    const Int& ua = at.lines.size() == 1 ? at.lines[0].a : at.lines[band + 1].a;
    long j = residue_of(ua, Int(t), mu, period);
    auto pit = at.polys.find({int(band), j});
    Rat v = pit == at.polys.end() ? Rat(0) : pit->second.eval(mu, Int(t));
    if (v.get_den() != 1 || v.get_num() != row_value(row, small(mu))) return small(mu);
  }
  return std::nullopt;
}

std::string witness_str(int i, long mu, long t) {
  if (mu < 0) return "(i=" + std::to_string(i) + ",ordering,t=" + std::to_string(t) + ")";
  return "(i=" + std::to_string(i) + ",mu=" + std::to_string(mu) + ",t=" + std::to_string(t) + ")";
}

}  // namespace

RegionDescription detect_regions(const betti::BettiFamily& fam, int i, const WeightSystem& w,
                                 TRange fit_range, TRange validate_range, int degree_cap,
                                 int max_period_doublings) {
  if (fit_range.lo > fit_range.hi || validate_range.lo > validate_range.hi)
    throw Error("bad-range", "window bounds must satisfy lo <= hi");
  if (fit_range.lo < fam.t_lo || fit_range.hi > fam.t_hi || validate_range.lo < fam.t_lo ||
      validate_range.hi > fam.t_hi)
    throw Error("range-uncovered", "family does not cover the fit and validation windows");
  const int cap = degree_cap >= 0 ? degree_cap : std::max(0, w.count() - w.rank);
  const Rows rows = betti_rows(fam, i);
  const long period0 = small(abs_int(partition::chamber_complex(w).front().global_lattice.determinant()));

  RegionDescription desc;
  desc.i = i;
  auto finish = [&](Attempt at, long period) -> RegionDescription {
    for (long t = validate_range.lo; t <= validate_range.hi; ++t)
      if (auto mu = row_mismatch(at, period, rows, t))
        throw Error("validation-mismatch", "description disagrees with the family",
                    witness_str(i, *mu, t));
    long t0 = fam.t_hi + 1;
    std::pair<long, long> last_fail{0, 0};
    for (long t = fam.t_hi; t >= fam.t_lo; --t) {
      if (auto mu = row_mismatch(at, period, rows, t)) {
        last_fail = {*mu, t};
        break;
      }
      t0 = t;
    }
    if (t0 > fam.t_hi)
      throw Error("validation-mismatch", "no stable suffix in the materialized family",
                  witness_str(i, last_fail.first, last_fail.second));
    desc.t0 = t0;
    desc.period = period;
    desc.lines = std::move(at.lines);
    desc.polys = std::move(at.polys);
    return desc;
  };

  std::vector<std::pair<long, long>> los, his;
  for (long t = fit_range.lo; t <= fit_range.hi; ++t) {
    const auto& row = row_at(rows, t);
    if (row.empty()) continue;
    los.push_back({t, row.begin()->first});
    his.push_back({t, row.rbegin()->first});
  }
  if (los.empty()) return finish(Attempt{}, period0);

  const LineFunc llo = fit_line(los, w.degrees, "lower");
  const LineFunc lhi = fit_line(his, w.degrees, "upper");

  long period = period0;
  for (int round = 0;; ++round) {
    try {
      return finish(fit_regions(llo, lhi, period, cap, rows, fit_range, w.degrees), period);
    } catch (const Error&) {
      if (round >= max_period_doublings) throw;
      period *= 2;
    }
  }
}

Int predict(const RegionDescription& r, const Int& mu, const Int& t) {
  if (t < r.t0)
    throw Error("below-threshold", "prediction requested before the stability threshold",
                to_string(t));
  if (r.lines.empty()) return 0;
  Int mlo = r.lines.front().at(t), mhi = r.lines.back().at(t);
  if (mu < mlo || mu > mhi) return 0;
  size_t band = 0;
  if (r.lines.size() > 1) {
    bool found = false;
    for (size_t p = 0; p + 1 < r.lines.size(); ++p)
      if (r.lines[p].at(t) <= mu && mu <= r.lines[p + 1].at(t)) {
        band = p;
        found = true;
        break;
      }
    if (!found) return 0;
  }
  const Int& ua = r.lines.size() == 1 ? r.lines[0].a : r.lines[band + 1].a;
  long j = residue_of(ua, t, mu, r.period);
  auto pit = r.polys.find({int(band), j});
  if (pit == r.polys.end()) return 0;
  Rat v = pit->second.eval(mu, t);
  if (v.get_den() != 1)
    throw Error("non-integral-prediction", "region polynomial is non-integral here",
                "(" + to_string(mu) + "," + to_string(t) + ")");
  if (v.get_num() < 0)
    throw Error("negative-prediction", "region polynomial is negative here",
                "(" + to_string(mu) + "," + to_string(t) + ")");
  return Int(v.get_num());
}

Int hilbert_from_twists(const BigradedTwists& tw, const Int& mu, const Int& t) {
  Int acc = 0;
  for (size_t p = 0; p < tw.twists.size(); ++p) {
    Int level = 0;
    for (const auto& tv : tw.twists[p])
      level += Int(tv.multiplicity) * partition::evaluate(tw.weights, mu - tv.a, t - tv.b);
    if (p % 2 == 0)
      acc += level;
    else
      acc -= level;
  }
  return acc;
}

CiBridgeReport certify_ci_bridge(const std::vector<long>& degrees, long t_max) {
  const int r = int(degrees.size());
  std::vector<monomial::Expo> gens;
  long dmax = 0;
  for (int k = 0; k < r; ++k) {
    monomial::Expo e(size_t(r), 0);
    e[size_t(k)] = degrees[size_t(k)];
    gens.push_back(std::move(e));
    dmax = std::max(dmax, degrees[size_t(k)]);
  }
  const monomial::MonomialIdeal base(r, std::move(gens));
  IntVec degs;
  for (long d : degrees) degs.push_back(Int(d));
  const WeightSystem w(std::move(degs));

  CiBridgeReport rep;
  rep.ok = true;
  rep.t_max = t_max;
  for (long t = 0; t <= t_max; ++t) {
    const auto table = betti::graded_betti(monomial::power(base, t));
    for (long mu = 0; mu <= dmax * t; ++mu) {
      auto it = table.entries.find({0, mu});
      const long observed = it == table.entries.end() ? 0 : it->second;
      ++rep.checks;
      if (partition::evaluate(w, Int(mu), Int(t)) != observed) {
        rep.ok = false;
        rep.first_discrepancy = {mu, t};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace vpart::asymptotics
