#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "masseykit/matrix.hpp"

namespace mk {

// Word in a free group on generators x1..xg, stored as a flat sequence of
// (generator index, exponent) letters with indices in [1, g].
struct FreeWord {
  int g = 0;
  std::vector<std::pair<int, int64_t>> letters;

  static FreeWord empty(int g) { return FreeWord{g, {}}; }
  static FreeWord gen(int g, int i, int64_t e = 1);
  // [u, v] = u^-1 v^-1 u v.
  static FreeWord commutator(const FreeWord& u, const FreeWord& v);

  FreeWord inverse() const;
  FreeWord append(const FreeWord& o) const;
  FreeWord pow(int64_t e) const;
  std::string str() const;
  bool operator==(const FreeWord&) const = default;
};

// Grammar: word := term*; term := atom ('^' integer)?;
// atom := 'x' digits | '[' word ',' word ']' | '(' word ')'.
// Commutators and groupings are expanded to flat letters.  Throws
// DomainError with the offending position on malformed input.
FreeWord parse_word(const std::string& text);

// Element of F_p<X_1..X_g> truncated past degree 3.  c2 and c3 are row
// major: c2[(i-1)g + (j-1)] is the X_i X_j coefficient.
struct TruncSeries {
  int64_t p = 0;
  int g = 0;
  int64_t c0 = 0;
  Vec c1, c2, c3;

  static TruncSeries one(int64_t p, int g);
  TruncSeries mul(const TruncSeries& o) const;
  // Requires constant term 1.
  TruncSeries inverse() const;
  bool is_one() const;
  // Smallest degree with a nonzero coefficient among degrees 1..3, or 4
  // when the series equals its constant term.
  int low_degree() const;
  bool operator==(const TruncSeries&) const = default;

  int64_t& at2(int i, int j) { return c2[(size_t)(i - 1) * g + (j - 1)]; }
  int64_t at2(int i, int j) const { return c2[(size_t)(i - 1) * g + (j - 1)]; }
  int64_t& at3(int i, int j, int k) {
    return c3[((size_t)(i - 1) * g + (j - 1)) * g + (k - 1)];
  }
  int64_t at3(int i, int j, int k) const {
    return c3[((size_t)(i - 1) * g + (j - 1)) * g + (k - 1)];
  }
};

// Image of w under x_i -> 1 + X_i; exponents expand through exact integer
// binomials, so negative powers follow the alternating geometric series.
TruncSeries magnus_embed(const FreeWord& w, int64_t p);

// Filtration level read off the embedding: the lowest nonzero degree of
// embed(w) - 1, with 4 standing for "at least 4".
int filtration_level(const FreeWord& w, int64_t p);

// Exponents of the canonical product
//   prod_{i<j} [x_i,x_j]^{b_ij} (prod_i x_i^{3 a_i} when p = 3)
//   prod_{i<j, k<=j} [[x_i,x_j],x_k]^{c_ijk} * residual
// with all factor blocks ordered lexicographically and the residual at
// level >= 4.  The a block is identically zero unless p = 3.
struct CanonicalDecomposition {
  int64_t p = 0;
  int g = 0;
  Vec a;
  std::map<std::pair<int, int>, int64_t> b;
  std::map<std::array<int, 3>, int64_t> c;

  // Symmetrized pair exponent: u(i, j) = u(j, i) = b of the sorted pair.
  int64_t u(int i, int j) const;
  int64_t c_at(int i, int j, int k) const;
};

// Decomposes a word of level >= 2; odd p only.  The exponents are unique
// for the fixed factor order, which the implementation certifies by a
// kernel check, and the result always satisfies
// magnus_embed(recompose(d)) == magnus_embed(w).
CanonicalDecomposition canonical_decompose(const FreeWord& w, int64_t p);
FreeWord recompose(const CanonicalDecomposition& d);

struct ProPPresentation {
  int g = 0;
  int64_t p = 0;
  std::vector<FreeWord> relators;
};

// A fired obstruction pattern: the named relator is forced to survive in
// every realizable quotient, so the presentation is excluded.
struct Obstruction {
  std::string pattern;  // "distinct-triple-commutator" or "repeated-triple-commutator"
  size_t relator = 0;
  int i = 0, j = 0, k = 0;
  int64_t c_value = 0;
  std::string note;
};

// A candidate triple exponent that is nonzero but fails one of the pattern
// conditions; blocker names the first failing condition.
struct ObstructionNearMiss {
  std::string pattern;
  size_t relator = 0;
  int i = 0, j = 0, k = 0;
  std::string blocker;
};

struct ObstructionReport {
  std::vector<CanonicalDecomposition> decomps;
  std::vector<Obstruction> hits;
  std::vector<ObstructionNearMiss> near_misses;
  bool not_realizable = false;
};

// Scans every relator for the two exclusion patterns.
//
// The distinct pattern needs indices i < j, k < j, k distinct from both,
// with c_ijk nonzero, u_ij = u_kj = u_ki = 0, u_kl = u_jl = 0 for every l
// outside {i, j, k}, and no other relator using the pairs (k, i) or (i, j).
// The exponents u_il for l outside the triple are deliberately left
// unconstrained; each hit notes this.
//
// The repeated pattern needs i < j with c_iji or c_ijj nonzero,
// u_ij = u_il = u_jl = 0 for every l outside {i, j}, and no other relator
// using the pair (i, j).
//
// Requires an odd prime and relators of level >= 2.
ObstructionReport obstruction_check(const ProPPresentation& P);

}  // namespace mk
