#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "vpart/numeric.hpp"

namespace vpart::linalg {

// Dense integer matrix, row-major. Zero-dimensional shapes are legal values:
// kernel bases of injective maps are n x 0, equality blocks may be 0 x n.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> data);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  IntVec col(int j) const;
  IntVec row(int i) const;
  void swap_cols(int a, int b);
  void negate_col(int j);
  // col_dst += k * col_src
  void add_col(int dst, int src, const Int& k);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

  // Columns [lo, hi) as a new matrix.
  IntMatrix col_slice(int lo, int hi) const;
  // Rows [lo, hi) as a new matrix.
  IntMatrix row_slice(int lo, int hi) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> e_;
};

struct HnfResult {
  IntMatrix h;  // column-style normal form, nonzero columns first
  IntMatrix u;  // unimodular, a * u == h
};

// Column-style Hermite normal form: pivots positive, each pivot strictly below
// the previous column's pivot, entries left of a pivot in its row lie in [0, pivot).
HnfResult hnf(const IntMatrix& a);

// Count of nonzero columns of the normal form.
int rank(const IntMatrix& a);

// Saturated basis of {x integer : a x = 0}; n x (n - rank), possibly n x 0.
IntMatrix integer_nullspace(const IntMatrix& a);

// One integer solution of a x = b, or nullopt when b is outside the column lattice.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

// Exact determinant (fraction-free elimination); a must be square.
Int determinant(const IntMatrix& a);

// Integer lattice given by generators; stored as the canonical column normal
// form of the generator matrix with zero columns dropped.
class Lattice {
 public:
  Lattice(int dim, const IntMatrix& generators);

  int dim() const { return dim_; }
  int lattice_rank() const { return basis_.cols(); }
  bool full_rank() const { return basis_.cols() == dim_; }
  const IntMatrix& basis() const { return basis_; }

  // |det(basis)| for full-rank lattices; the index in the ambient lattice.
  Int determinant() const;

  bool contains(const IntVec& v) const;

  // Canonical representative of v modulo the lattice; full-rank only.
  IntVec coset_rep(const IntVec& v) const;

  // All canonical coset representatives, lexicographically sorted; full-rank only.
  std::vector<IntVec> coset_reps() const;

  bool operator==(const Lattice& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }

 private:
  int dim_;
  IntMatrix basis_;
};

// Intersection of two full-rank lattices of equal ambient dimension.
Lattice lattice_intersection(const Lattice& l1, const Lattice& l2);

}  // namespace vpart::linalg
