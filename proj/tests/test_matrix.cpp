#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "masseykit/matrix.hpp"

using namespace mk;

namespace {

// All solutions of A x = b by brute force over (Z/m)^cols.
std::set<Vec> brute_solutions(const Mat& A, const Vec& b) {
  std::set<Vec> out;
  size_t total = 1;
  for (size_t i = 0; i < A.cols; ++i) total *= (size_t)A.R.m;
  for (size_t code = 0; code < total; ++code) {
    Vec x(A.cols);
    size_t c = code;
    for (size_t i = 0; i < A.cols; ++i) { x[i] = (int64_t)(c % A.R.m); c /= A.R.m; }
    if (A.apply(x) == b) out.insert(x);
  }
  return out;
}

// All solutions reachable from the Howell-form answer: particular plus every
// coefficient combination of the kernel generators.
std::set<Vec> span_solutions(const AffineSolution& s, const ModRing& R) {
  std::set<Vec> out;
  size_t total = 1;
  for (size_t i = 0; i < s.kernel.size(); ++i) total *= (size_t)R.m;
  for (size_t code = 0; code < total; ++code) {
    Vec x = s.particular;
    size_t c = code;
    for (auto& k : s.kernel) {
      x = vec_add(x, vec_scale((int64_t)(c % R.m), k, R.m), R.m);
      c /= R.m;
    }
    out.insert(x);
  }
  return out;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("Mat product and apply") {
  ModRing R(5, 1);
  Mat A(R, 2, 3), B(R, 3, 2);
  int64_t v = 1;
  for (auto& x : A.a) x = v++ % 5;
  for (auto& x : B.a) x = v++ % 5;
  Mat C = A.mul(B);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      int64_t s = 0;
      for (size_t k = 0; k < 3; ++k) s += A.at(i, k) * B.at(k, j);
      CHECK(C.at(i, j) == mod_reduce(s, 5));
    }
  CHECK(Mat::identity(R, 3).mul(B).a == B.a);
}

TEST_CASE("solve_affine exhaustive over Z/4") {
  ModRing R(2, 2);
  // Matrices that exercise non-unit pivots and completion rows.
  std::vector<std::vector<Vec>> cases = {
      {{2, 1}},                  // the classic 1x2 trap
      {{2, 1}, {0, 2}},          //
      {{2, 0}, {0, 2}},          //
      {{1, 2, 3}, {2, 2, 0}},    //
      {{0, 0}, {0, 0}},          //
      {{3, 1}, {1, 3}},          //
  };
  for (auto& rows : cases) {
    Mat A(R, rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < rows[0].size(); ++j) A.at(i, j) = R.reduce(rows[i][j]);
    size_t btotal = 1;
    for (size_t i = 0; i < A.rows; ++i) btotal *= 4;
    for (size_t code = 0; code < btotal; ++code) {
      Vec b(A.rows);
      size_t c = code;
      for (size_t i = 0; i < A.rows; ++i) { b[i] = (int64_t)(c % 4); c /= 4; }
      auto brute = brute_solutions(A, b);
      auto sol = solve_affine(A, b);
      if (brute.empty()) {
        CHECK_FALSE(sol.has_value());
      } else {
        REQUIRE(sol.has_value());
        CHECK(span_solutions(*sol, R) == brute);
      }
    }
  }
}

TEST_CASE("solve_affine over Z/27") {
  ModRing R(3, 3);
  Mat A(R, 2, 2);
  A.at(0, 0) = 3; A.at(0, 1) = 1; A.at(1, 0) = 0; A.at(1, 1) = 9;
  Vec b = A.apply(Vec{1, 2});
  auto sol = solve_affine(A, b);
  REQUIRE(sol.has_value());
  CHECK(A.apply(sol->particular) == b);
  for (auto& k : sol->kernel) CHECK(vec_is_zero(A.apply(k)));
  CHECK(span_solutions(*sol, R) == brute_solutions(A, b));
  CHECK_FALSE(solve_affine(A, Vec{0, 1}).has_value());
  CHECK_FALSE(solve_affine(A, Vec{12, 18}).has_value());
}

TEST_CASE("RowSpan membership matches brute-force span") {
  ModRing R(2, 2);
  std::vector<Vec> gens = {{2, 1, 0}, {0, 2, 2}};
  RowSpan S(R, 3);
  for (auto& g : gens) S.insert(g);
  // Oracle: enumerate all Z/4-combinations of the generators.
  std::set<Vec> span;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      span.insert(vec_add(vec_scale(a, gens[0], 4), vec_scale(b, gens[1], 4), 4));
  size_t member = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) {
        Vec v = {x, y, z};
        bool in = S.contains(v);
        CHECK(in == (span.count(v) > 0));
        if (in) ++member;
      }
  CHECK(member == span.size());
  CHECK(std::llround(std::exp2(S.log_p_size())) == (long long)span.size());
}

TEST_CASE("subspace_membership recovers coefficients") {
  ModRing R(7, 1);
  std::vector<Vec> gens = {{1, 2, 3}, {0, 1, 5}};
  Vec v = vec_add(vec_scale(3, gens[0], 7), vec_scale(4, gens[1], 7), 7);
  auto c = subspace_membership(v, gens, R);
  REQUIRE(c.has_value());
  Vec rebuilt(3, 0);
  for (size_t i = 0; i < gens.size(); ++i)
    rebuilt = vec_add(rebuilt, vec_scale((*c)[i], gens[i], 7), 7);
  CHECK(rebuilt == v);
  CHECK_FALSE(subspace_membership(Vec{0, 0, 1}, gens, R).has_value());
}

TEST_CASE("EchelonReducer rank and kernel") {
  for (int64_t p : {2, 3, 5}) {
    ModRing R(p, 1);
    Mat A(R, 4, 5);
    // Deterministic fill with known dependencies: row3 = row0 + row1.
    int64_t v = 0;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 5; ++j) A.at(i, j) = mod_reduce(v++ * v + 1, p);
    for (size_t j = 0; j < 5; ++j) A.at(3, j) = mod_reduce(A.at(0, j) + A.at(1, j), p);
    EchelonReducer E(p, 5);
    for (size_t i = 0; i < 4; ++i) E.add_row(A.row(i));
    CHECK(E.rank() == rank_mod_p(A));
    auto ker = E.kernel_basis();
    CHECK(ker.size() == 5 - E.rank());
    for (auto& k : ker) CHECK(vec_is_zero(A.apply(k)));
    // Kernel vectors are independent.
    EchelonReducer K(p, 5);
    for (auto& k : ker) CHECK(K.add_row(k));
    // reduce() is zero exactly on the row span.
    CHECK(vec_is_zero(E.reduce(A.row(3))));
    Vec probe = A.row(0);
    probe[0] = mod_reduce(probe[0] + 1, p);
    bool still_in = vec_is_zero(E.reduce(probe));
    CHECK(still_in == (E.rank() == 5));
  }
}

TEST_CASE("EchelonReducer sparse rows match dense") {
  EchelonReducer A(3, 6), B(3, 6);
  std::vector<std::vector<std::pair<size_t, int64_t>>> rows = {
      {{0, 1}, {3, 2}},
      {{0, 2}, {3, 4}},
      {{1, 1}, {5, -1}},
      {{0, 1}, {1, 1}, {3, 2}, {5, 2}},
  };
  std::vector<bool> grewA, grewB;
  for (auto& r : rows) {
    Vec dense(6, 0);
    for (auto& [i, c] : r) dense[i] = mod_reduce(dense[i] + c, 3);
    grewA.push_back(A.add_row(dense));
    grewB.push_back(B.add_row_sparse(r));
  }
  CHECK(grewA == grewB);
  CHECK(A.rank() == B.rank());
  CHECK(A.kernel_basis() == B.kernel_basis());
}

}
