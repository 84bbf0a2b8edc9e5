#include "vpart/matrix.hpp"

#include <algorithm>

#include "vpart/error.hpp"

namespace vpart::linalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> data) {
  rows_ = int(data.size());
  cols_ = rows_ ? int(data.begin()->size()) : 0;
  e_.reserve(size_t(rows_) * cols_);
  for (const auto& r : data) {
    if (int(r.size()) != cols_) throw Error("shape", "ragged initializer");
    for (long v : r) e_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntVec IntMatrix::col(int j) const {
  IntVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

IntVec IntMatrix::row(int i) const {
  IntVec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::negate_col(int j) {
  for (int i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

void IntMatrix::add_col(int dst, int src, const Int& k) {
  for (int i = 0; i < rows_; ++i) at(i, dst) += k * at(i, src);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("shape", "matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (int(v.size()) != cols_) throw Error("shape", "matrix-vector shape mismatch");
  IntVec r(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::col_slice(int lo, int hi) const {
  IntMatrix r(rows_, hi - lo);
  for (int i = 0; i < rows_; ++i)
    for (int j = lo; j < hi; ++j) r.at(i, j - lo) = at(i, j);
  return r;
}

IntMatrix IntMatrix::row_slice(int lo, int hi) const {
  IntMatrix r(hi - lo, cols_);
  for (int i = lo; i < hi; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i - lo, j) = at(i, j);
  return r;
}

HnfResult hnf(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(n);
  int c = 0;  // next pivot column
  for (int r = 0; r < m && c < n; ++r) {
    bool have = false;
    for (int j = c; j < n; ++j)
      if (h.at(r, j) != 0) { have = true; break; }
    if (!have) continue;

    // Column gcd sweep: after this loop h(r,c) is the only nonzero in row r
    // among columns c..n-1.
    for (;;) {
      int best = -1;
      for (int j = c; j < n; ++j) {
        if (h.at(r, j) == 0) continue;
        if (best < 0 || mpz_cmpabs(h.at(r, j).get_mpz_t(), h.at(r, best).get_mpz_t()) < 0) best = j;
      }
      if (best != c) {
        h.swap_cols(c, best);
        u.swap_cols(c, best);
      }
      bool clean = true;
      for (int j = c + 1; j < n; ++j) {
        if (h.at(r, j) == 0) continue;
        Int q = h.at(r, j) / h.at(r, c);  // truncated quotient shrinks |h(r,j)|
        if (q != 0) {
          h.add_col(j, c, -q);
          u.add_col(j, c, -q);
        }
        if (h.at(r, j) != 0) clean = false;
      }
      if (clean) break;
    }

    if (h.at(r, c) < 0) {
      h.negate_col(c);
      u.negate_col(c);
    }
    for (int j = 0; j < c; ++j) {
      Int q = floor_div(h.at(r, j), h.at(r, c));
      if (q != 0) {
        h.add_col(j, c, -q);
        u.add_col(j, c, -q);
      }
    }
    ++c;
  }
  return {h, u};
}

int rank(const IntMatrix& a) {
  IntMatrix h = hnf(a).h;
  int r = 0;
  for (int j = 0; j < h.cols(); ++j) {
    bool nz = false;
    for (int i = 0; i < h.rows(); ++i)
      if (h.at(i, j) != 0) { nz = true; break; }
    if (nz) ++r;
  }
  return r;
}

IntMatrix integer_nullspace(const IntMatrix& a) {
  auto [h, u] = hnf(a);
  int rk = 0;
  for (int j = 0; j < h.cols(); ++j) {
    bool nz = false;
    for (int i = 0; i < h.rows(); ++i)
      if (h.at(i, j) != 0) { nz = true; break; }
    if (nz) ++rk;
  }
  return u.col_slice(rk, u.cols());
}

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
  if (int(b.size()) != a.rows()) throw Error("shape", "rhs length mismatch");
  auto [h, u] = hnf(a);
  const int m = a.rows(), n = a.cols();
  std::vector<int> pivot_row;  // per nonzero column, the row of its pivot
  for (int j = 0; j < n; ++j) {
    int p = -1;
    for (int i = 0; i < m; ++i)
      if (h.at(i, j) != 0) { p = i; break; }
    if (p < 0) break;  // zero columns are trailing
    pivot_row.push_back(p);
  }
  const int rk = int(pivot_row.size());
  IntVec y(n, Int(0));
  int jnext = 0;
  for (int r = 0; r < m; ++r) {
    Int s(0);
    for (int j = 0; j < jnext; ++j) s += h.at(r, j) * y[j];
    if (jnext < rk && pivot_row[jnext] == r) {
      Int q, rem;
      Int num = b[r] - s;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), h.at(r, jnext).get_mpz_t());
      if (rem != 0) return std::nullopt;
      y[jnext] = q;
      ++jnext;
    } else if (s != b[r]) {
      return std::nullopt;
    }
  }
  return u * y;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error("shape", "determinant of non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix w = a;
  Int sign(1), prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

Lattice::Lattice(int dim, const IntMatrix& generators) : dim_(dim) {
  if (generators.rows() != dim) throw Error("shape", "lattice generator dimension mismatch");
  IntMatrix h = hnf(generators).h;
  int rk = 0;
  for (int j = 0; j < h.cols(); ++j) {
    bool nz = false;
    for (int i = 0; i < h.rows(); ++i)
      if (h.at(i, j) != 0) { nz = true; break; }
    if (nz) ++rk;
  }
  basis_ = h.col_slice(0, rk);
}

Int Lattice::determinant() const {
  if (!full_rank()) throw Error("rank", "determinant of a non-full-rank lattice");
  Int d(1);
  for (int j = 0; j < basis_.cols(); ++j) d *= basis_.at(j, j);
  return abs_int(d);
}

bool Lattice::contains(const IntVec& v) const {
  if (int(v.size()) != dim_) throw Error("shape", "lattice membership dimension mismatch");
  if (basis_.cols() == 0) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  return solve_integer(basis_, v).has_value();
}

IntVec Lattice::coset_rep(const IntVec& v) const {
  if (!full_rank()) throw Error("rank", "coset reduction needs a full-rank lattice");
  // Full-rank column normal form is lower triangular with positive diagonal.
  IntVec w = v;
  for (int j = 0; j < dim_; ++j) {
    Int q = floor_div(w[j], basis_.at(j, j));
    if (q != 0)
      for (int i = j; i < dim_; ++i) w[i] -= q * basis_.at(i, j);
  }
  return w;
}

std::vector<IntVec> Lattice::coset_reps() const {
  if (!full_rank()) throw Error("rank", "coset enumeration needs a full-rank lattice");
  std::vector<IntVec> out;
  IntVec cur(dim_, Int(0));
  // Reps of the quotient are exactly the floor-reduced vectors, which form a
  // box only after reduction; enumerate the diagonal box and reduce each.
  std::vector<long> radix(dim_);
  for (int j = 0; j < dim_; ++j) radix[j] = basis_.at(j, j).get_si();
  std::vector<long> idx(dim_, 0);
  for (;;) {
    IntVec v(dim_);
    for (int j = 0; j < dim_; ++j) v[j] = idx[j];
    out.push_back(coset_rep(v));
    int j = dim_ - 1;
    while (j >= 0 && ++idx[j] == radix[j]) idx[j--] = 0;
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Lattice lattice_intersection(const Lattice& l1, const Lattice& l2) {
  if (l1.dim() != l2.dim()) throw Error("shape", "lattice intersection dimension mismatch");
  if (!l1.full_rank() || !l2.full_rank()) throw Error("rank", "lattice intersection needs full rank");
  const int d = l1.dim();
  const int k1 = l1.basis().cols(), k2 = l2.basis().cols();
  IntMatrix m(d, k1 + k2);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k1; ++j) m.at(i, j) = l1.basis().at(i, j);
    for (int j = 0; j < k2; ++j) m.at(i, k1 + j) = -l2.basis().at(i, j);
  }
  IntMatrix ker = integer_nullspace(m);
  IntMatrix top = ker.row_slice(0, k1);
  return Lattice(d, l1.basis() * top);
}

}  // namespace vpart::linalg
