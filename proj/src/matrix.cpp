#include "masseykit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mk {

Vec vec_add(const Vec& a, const Vec& b, int64_t m) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i] + b[i], m);
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b, int64_t m) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_reduce(a[i] - b[i], m);
  return r;
}

Vec vec_scale(int64_t c, const Vec& a, int64_t m) {
  Vec r(a.size());
  c = mod_reduce(c, m);
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i] % m;
  return r;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](int64_t x) { return x == 0; });
}

Mat Mat::identity(ModRing ring, size_t n) {
  Mat I(ring, n, n);
  for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

Vec Mat::col(size_t j) const {
  Vec r(rows);
  for (size_t i = 0; i < rows; ++i) r[i] = at(i, j);
  return r;
}

Mat Mat::mul(const Mat& b) const {
  if (cols != b.rows || R.m != b.R.m) throw DomainError("Mat::mul shape/ring mismatch");
  Mat r(R, rows, b.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t t = 0; t < cols; ++t) {
      int64_t v = at(i, t);
      if (v == 0) continue;
      for (size_t j = 0; j < b.cols; ++j)
        r.at(i, j) = (r.at(i, j) + v * b.at(t, j)) % R.m;
    }
  return r;
}

Mat Mat::add(const Mat& b) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_reduce(a[i] + b.a[i], R.m);
  return r;
}

Mat Mat::sub(const Mat& b) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_reduce(a[i] - b.a[i], R.m);
  return r;
}

Mat Mat::scale(int64_t c) const {
  Mat r = *this;
  c = R.reduce(c);
  for (auto& x : r.a) x = x * c % R.m;
  return r;
}

Mat Mat::transpose() const {
  Mat r(R, cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols) throw DomainError("Mat::apply size mismatch");
  Vec r(rows, 0);
  for (size_t i = 0; i < rows; ++i) {
    int64_t acc = 0;
    const int64_t* rowp = a.data() + i * cols;
    for (size_t j = 0; j < cols; ++j) acc += rowp[j] * v[j] % R.m;
    r[i] = mod_reduce(acc, R.m);
  }
  return r;
}

bool Mat::is_zero() const { return vec_is_zero(a); }

RowSpan::RowSpan(ModRing ring, size_t width) : R_(ring), w_(width), col_row_(width, -1) {}

void RowSpan::reduce_column_above(size_t except_row, size_t j) {
  // Keep all other rows' entries at pivot column j canonical (in [0, p^v)).
  int64_t piv = ipow(R_.p, pivot_val_[col_row_[j]]);
  const Vec& prow = rows_[col_row_[j]];
  for (size_t t = 0; t < rows_.size(); ++t) {
    if (t == except_row) continue;
    int64_t q = rows_[t][j] / piv;
    if (q == 0) continue;
    for (size_t c = j; c < w_; ++c)
      rows_[t][c] = mod_reduce(rows_[t][c] - q * prow[c], R_.m);
  }
}

void RowSpan::insert(Vec row) {
  if (row.size() != w_) throw DomainError("RowSpan::insert width mismatch");
  for (auto& x : row) x = R_.reduce(x);
  size_t j = 0;
  while (true) {
    while (j < w_ && row[j] == 0) ++j;
    if (j == w_) return;
    int v = R_.val(row[j]);
    if (col_row_[j] < 0) {
      // New pivot: scale the leading entry to exactly p^v.
      int64_t scale = mod_inverse(R_.unit_part(row[j]), R_.m);
      for (size_t c = j; c < w_; ++c) row[c] = row[c] * scale % R_.m;
      size_t idx = rows_.size();
      rows_.push_back(std::move(row));
      pivot_col_.push_back((int)j);
      pivot_val_.push_back(v);
      col_row_[j] = (int)idx;
      reduce_column_above(idx, j);
      if (v > 0) {
        // Howell completion: p^(k-v) times the pivot row has leading zero
        // at j and captures span elements invisible to back-substitution.
        Vec comp = vec_scale(ipow(R_.p, R_.k - v), rows_[idx], R_.m);
        insert(std::move(comp));
      }
      return;
    }
    size_t q = (size_t)col_row_[j];
    int pv = pivot_val_[q];
    if (v >= pv) {
      int64_t mult = row[j] / ipow(R_.p, pv);
      const Vec& prow = rows_[q];
      for (size_t c = j; c < w_; ++c) row[c] = mod_reduce(row[c] - mult * prow[c], R_.m);
      // row[j] is now a multiple of p^k, i.e. zero.
    } else {
      // Incoming row has strictly smaller valuation: it becomes the pivot.
      int64_t scale = mod_inverse(R_.unit_part(row[j]), R_.m);
      for (size_t c = j; c < w_; ++c) row[c] = row[c] * scale % R_.m;
      Vec old = std::move(rows_[q]);
      rows_[q] = std::move(row);
      pivot_val_[q] = v;
      int64_t mult = old[j] / ipow(R_.p, v);
      for (size_t c = j; c < w_; ++c) old[c] = mod_reduce(old[c] - mult * rows_[q][c], R_.m);
      reduce_column_above(q, j);
      if (v > 0) {
        Vec comp = vec_scale(ipow(R_.p, R_.k - v), rows_[q], R_.m);
        insert(std::move(comp));
      }
      row = std::move(old);
    }
  }
}

Vec RowSpan::reduce(Vec v) const {
  if (v.size() != w_) throw DomainError("RowSpan::reduce width mismatch");
  for (auto& x : v) x = R_.reduce(x);
  for (size_t j = 0; j < w_; ++j) {
    if (v[j] == 0 || col_row_[j] < 0) continue;
    size_t t = (size_t)col_row_[j];
    int64_t q = v[j] / ipow(R_.p, pivot_val_[t]);
    if (q == 0) continue;
    const Vec& prow = rows_[t];
    for (size_t c = j; c < w_; ++c) v[c] = mod_reduce(v[c] - q * prow[c], R_.m);
  }
  return v;
}

double RowSpan::log_p_size() const {
  double s = 0;
  for (int v : pivot_val_) s += R_.k - v;
  return s;
}

std::optional<AffineSolution> solve_affine(const Mat& A, const Vec& b) {
  if (b.size() != A.rows) throw DomainError("solve_affine: rhs size mismatch");
  const size_t r = A.rows, c = A.cols;
  RowSpan span(A.R, r + c);
  for (size_t i = 0; i < c; ++i) {
    Vec row(r + c, 0);
    for (size_t t = 0; t < r; ++t) row[t] = A.at(t, i);
    row[r + i] = 1;
    span.insert(std::move(row));
  }
  AffineSolution sol;
  for (size_t t = 0; t < span.npivots(); ++t) {
    if ((size_t)span.pivot_cols()[t] >= r) {
      const Vec& row = span.echelon_rows()[t];
      sol.kernel.emplace_back(row.begin() + r, row.end());
    }
  }
  Vec probe(r + c, 0);
  std::copy(b.begin(), b.end(), probe.begin());
  Vec res = span.reduce(std::move(probe));
  for (size_t t = 0; t < r; ++t)
    if (res[t] != 0) return std::nullopt;
  sol.particular.resize(c);
  for (size_t i = 0; i < c; ++i) sol.particular[i] = mod_reduce(-res[r + i], A.R.m);
  return sol;
}

std::vector<Vec> kernel_generators(const Mat& A) {
  auto sol = solve_affine(A, Vec(A.rows, 0));
  return sol->kernel;  // homogeneous system always solvable
}

std::optional<Vec> subspace_membership(const Vec& v, const std::vector<Vec>& gens, ModRing R) {
  Mat A(R, v.size(), gens.size());
  for (size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != v.size()) throw DomainError("subspace_membership: generator size mismatch");
    for (size_t i = 0; i < v.size(); ++i) A.at(i, j) = R.reduce(gens[j][i]);
  }
  auto sol = solve_affine(A, v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

EchelonReducer::EchelonReducer(int64_t p, size_t width)
    : p_(p), w_(width), packed_(p == 2), col_row_(width, -1) {
  if (!is_prime(p)) throw DomainError("EchelonReducer needs a prime modulus");
}

bool EchelonReducer::add_row(const Vec& row) {
  if (row.size() != w_) throw DomainError("EchelonReducer::add_row width mismatch");
  if (packed_) {
    std::vector<uint64_t> b((w_ + 63) / 64, 0);
    for (size_t j = 0; j < w_; ++j)
      if (mod_reduce(row[j], 2)) b[j >> 6] |= uint64_t(1) << (j & 63);
    return add_row_bits(std::move(b));
  }
  Vec r(row.size());
  for (size_t j = 0; j < w_; ++j) r[j] = mod_reduce(row[j], p_);
  return add_row_int(std::move(r));
}

bool EchelonReducer::add_row_sparse(const std::vector<std::pair<size_t, int64_t>>& entries) {
  Vec row(w_, 0);
  for (auto& [j, v] : entries) row[j] = mod_reduce(row[j] + v, p_);
  return add_row(row);
}

// Stored rows are kept nonnegative but not reduced mod p between operations;
// entries grow by at most (p-1)^2 per Jordan update, so they stay far below
// 2^63 for any feasible number of pivots.  This keeps the hot loops free of
// division.  The incoming row is eliminated against every existing pivot
// before it may become a pivot itself, so stored rows have support only at
// their own pivot and at free columns.
bool EchelonReducer::add_row_int(Vec row) {
  ptrdiff_t lead = -1;
  for (size_t j = 0; j < w_; ++j) {
    int64_t v = row[j] % p_;
    if (v == 0) continue;
    if (col_row_[j] >= 0) {
      const Vec& prow = rows_[col_row_[j]];
      int64_t c = p_ - v;  // row += c * prow zeroes column j mod p (pivot is 1)
      for (size_t t = j; t < w_; ++t) row[t] += c * prow[t];
    } else if (lead < 0) {
      lead = (ptrdiff_t)j;
    }
  }
  if (lead < 0) return false;
  size_t j = (size_t)lead;
  for (auto& x : row) x %= p_;
  int64_t inv = mod_inverse(row[j], p_);
  for (size_t t = j; t < w_; ++t) row[t] = row[t] * inv % p_;
  int idx = (int)rows_.size();
  // Jordan step: clear column j in the rows that have an entry there.
  for (size_t t = 0; t < rows_.size(); ++t) {
    int64_t u = rows_[t][j] % p_;
    if (u == 0) continue;
    int64_t c = p_ - u;
    Vec& tr = rows_[t];
    for (size_t s = j; s < w_; ++s) tr[s] += c * row[s];
  }
  rows_.push_back(std::move(row));
  pivot_col_.push_back((int)j);
  col_row_[j] = idx;
  ++nrows_;
  return true;
}

bool EchelonReducer::add_row_bits(std::vector<uint64_t> row) {
  const size_t words = row.size();
  ptrdiff_t lead = -1;
  for (size_t wd = 0; wd < words; ++wd) {
    uint64_t rem = row[wd];
    while (rem) {
      size_t b = (size_t)__builtin_ctzll(rem);
      size_t j = wd * 64 + b;
      if (j >= w_) break;
      if (col_row_[j] >= 0) {
        // Eliminating never touches bits below b, so rescan above it.
        const auto& prow = brows_[col_row_[j]];
        for (size_t t = wd; t < words; ++t) row[t] ^= prow[t];
        rem = b == 63 ? 0 : row[wd] & ~((uint64_t(2) << b) - 1);
      } else {
        if (lead < 0) lead = (ptrdiff_t)j;
        rem &= rem - 1;
      }
    }
  }
  if (lead < 0) return false;
  size_t j = (size_t)lead;
  int idx = (int)brows_.size();
  for (size_t t = 0; t < brows_.size(); ++t) {
    if (brows_[t][j >> 6] >> (j & 63) & 1) {
      auto& tr = brows_[t];
      for (size_t s = j >> 6; s < words; ++s) tr[s] ^= row[s];
    }
  }
  brows_.push_back(std::move(row));
  pivot_col_.push_back((int)j);
  col_row_[j] = idx;
  ++nrows_;
  return true;
}

std::vector<Vec> EchelonReducer::kernel_basis() const {
  std::vector<Vec> basis;
  for (size_t f = 0; f < w_; ++f) {
    if (col_row_[f] >= 0) continue;
    Vec x(w_, 0);
    x[f] = 1;
    if (packed_) {
      for (size_t t = 0; t < brows_.size(); ++t)
        x[pivot_col_[t]] = brows_[t][f >> 6] >> (f & 63) & 1;
    } else {
      for (size_t t = 0; t < rows_.size(); ++t)
        x[pivot_col_[t]] = mod_reduce(-rows_[t][f], p_);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Vec EchelonReducer::reduce(Vec v) const {
  if (v.size() != w_) throw DomainError("EchelonReducer::reduce width mismatch");
  for (auto& x : v) x = mod_reduce(x, p_);
  for (size_t j = 0; j < w_; ++j) {
    int64_t x = v[j] % p_;
    if (x == 0 || col_row_[j] < 0) continue;
    if (packed_) {
      const auto& prow = brows_[col_row_[j]];
      for (size_t t = j; t < w_; ++t) v[t] += prow[t >> 6] >> (t & 63) & 1;
    } else {
      const Vec& prow = rows_[col_row_[j]];
      int64_t c = p_ - x;
      for (size_t t = j; t < w_; ++t) v[t] += c * prow[t];
    }
  }
  for (auto& x : v) x %= p_;
  return v;
}

size_t rank_mod_p(const Mat& A) {
  if (!A.R.is_field()) throw DomainError("rank_mod_p needs a prime modulus");
  EchelonReducer red(A.R.p, A.cols);
  for (size_t i = 0; i < A.rows; ++i) red.add_row(A.row(i));
  return red.rank();
}

}  // namespace mk
