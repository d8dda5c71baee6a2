#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "masseykit/modring.hpp"

namespace mk {

using Vec = std::vector<int64_t>;

Vec vec_add(const Vec& a, const Vec& b, int64_t m);
Vec vec_sub(const Vec& a, const Vec& b, int64_t m);
Vec vec_scale(int64_t c, const Vec& a, int64_t m);
bool vec_is_zero(const Vec& a);

// Dense matrix over Z/p^k with canonical entries in [0, p^k).
struct Mat {
  ModRing R;
  size_t rows = 0, cols = 0;
  Vec a;

  Mat() = default;
  Mat(ModRing ring, size_t r, size_t c) : R(ring), rows(r), cols(c), a(r * c, 0) {}
  static Mat identity(ModRing ring, size_t n);

  int64_t& at(size_t i, size_t j) { return a[i * cols + j]; }
  int64_t at(size_t i, size_t j) const { return a[i * cols + j]; }
  Vec row(size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec col(size_t j) const;

  Mat mul(const Mat& b) const;
  Mat add(const Mat& b) const;
  Mat sub(const Mat& b) const;
  Mat scale(int64_t c) const;
  Mat transpose() const;
  Vec apply(const Vec& v) const;  // A v
  bool is_zero() const;
  bool operator==(const Mat& b) const { return R.m == b.R.m && rows == b.rows && cols == b.cols && a == b.a; }
};

// Howell-canonical span of row vectors over Z/p^k.  Supports canonical
// reduction modulo the span, membership, and (via the [A^T | I] augmentation
// in solve_affine) complete kernel generation over non-field moduli.
class RowSpan {
 public:
  RowSpan(ModRing ring, size_t width);

  void insert(Vec row);
  // Canonical representative of v + span.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
  size_t npivots() const { return rows_.size(); }
  size_t width() const { return w_; }
  const std::vector<Vec>& echelon_rows() const { return rows_; }
  const std::vector<int>& pivot_cols() const { return pivot_col_; }
  // Number of elements of the spanned subgroup (product of p^(k - v_pivot)).
  double log_p_size() const;

 private:
  ModRing R_;
  size_t w_;
  std::vector<Vec> rows_;
  std::vector<int> pivot_col_;
  std::vector<int> pivot_val_;
  std::vector<int> col_row_;  // column -> row index or -1
  void reduce_column_above(size_t except_row, size_t j);
};

struct AffineSolution {
  Vec particular;
  std::vector<Vec> kernel;  // generating set of the homogeneous solution group
};

// All solutions of A x = b over Z/p^k: a particular solution plus kernel
// generators, or nullopt when none exists.
std::optional<AffineSolution> solve_affine(const Mat& A, const Vec& b);

std::vector<Vec> kernel_generators(const Mat& A);

// Coordinates c with sum c_i gens[i] = v, if v lies in the span.
std::optional<Vec> subspace_membership(const Vec& v, const std::vector<Vec>& gens, ModRing R);

// Incremental row reduction over a prime field, for large streamed systems
// (cocycle constraints).  Rows are kept fully Jordan-reduced; p = 2 uses a
// bit-packed representation.
class EchelonReducer {
 public:
  EchelonReducer(int64_t p, size_t width);

  bool add_row(const Vec& row);  // true if the rank grew
  bool add_row_sparse(const std::vector<std::pair<size_t, int64_t>>& entries);
  size_t rank() const { return nrows_; }
  size_t width() const { return w_; }
  // Basis of {x : r . x = 0 for every inserted row r}.
  std::vector<Vec> kernel_basis() const;
  // Residual of v against the row span (canonical; zero iff v is spanned).
  Vec reduce(Vec v) const;

 private:
  int64_t p_;
  size_t w_, nrows_ = 0;
  bool packed_;
  std::vector<Vec> rows_;
  std::vector<std::vector<uint64_t>> brows_;
  std::vector<int> pivot_col_;
  std::vector<int> col_row_;
  bool add_row_int(Vec row);
  bool add_row_bits(std::vector<uint64_t> row);
};

size_t rank_mod_p(const Mat& A);

}  // namespace mk
