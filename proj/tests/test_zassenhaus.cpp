#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "masseykit/zassenhaus.hpp"

using namespace mk;

namespace {

Vec key_of(const TruncSeries& s) {
  Vec v{s.c0};
  v.insert(v.end(), s.c1.begin(), s.c1.end());
  v.insert(v.end(), s.c2.begin(), s.c2.end());
  v.insert(v.end(), s.c3.begin(), s.c3.end());
  return v;
}

struct SeriesSet {
  std::vector<TruncSeries> elems;
  std::set<Vec> keys;
  bool add(const TruncSeries& s) {
    if (!keys.insert(key_of(s)).second) return false;
    elems.push_back(s);
    return true;
  }
  bool contains(const TruncSeries& s) const { return keys.count(key_of(s)) > 0; }
};

// Subgroup generated by gens, via Cayley BFS from the identity.
SeriesSet span_subgroup(const std::vector<TruncSeries>& gens, int64_t p, int g) {
  SeriesSet out;
  out.add(TruncSeries::one(p, g));
  std::vector<TruncSeries> frontier{TruncSeries::one(p, g)};
  while (!frontier.empty()) {
    std::vector<TruncSeries> next;
    for (const auto& s : frontier)
      for (const auto& x : gens) {
        TruncSeries t = s.mul(x);
        if (out.add(t)) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return out;
}

// Smallest subgroup containing gens and stable under conjugation by conj.
SeriesSet normal_span(std::vector<TruncSeries> gens, const std::vector<TruncSeries>& conj,
                      int64_t p, int g) {
  while (true) {
    SeriesSet sub = span_subgroup(gens, p, g);
    bool grew = false;
    for (const auto& s : sub.elems)
      for (const auto& h : conj) {
        TruncSeries t = h.inverse().mul(s).mul(h);
        if (!sub.contains(t)) {
          gens.push_back(t);
          grew = true;
        }
      }
    if (!grew) return sub;
  }
}

TruncSeries commutator_series(const TruncSeries& a, const TruncSeries& b) {
  return a.inverse().mul(b.inverse()).mul(a).mul(b);
}

FreeWord random_word(std::mt19937_64& rng, int g, int len) {
  FreeWord w = FreeWord::empty(g);
  for (int t = 0; t < len; ++t) {
    int i = 1 + (int)(rng() % g);
    int64_t e = (int64_t)(rng() % 5) - 2;
    if (e != 0) w.letters.push_back({i, e});
  }
  return w;
}

CanonicalDecomposition random_decomposition(std::mt19937_64& rng, int64_t p, int g) {
  CanonicalDecomposition d;
  d.p = p;
  d.g = g;
  d.a.assign((size_t)g, 0);
  if (p == 3)
    for (int i = 0; i < g; ++i) d.a[i] = (int64_t)(rng() % p);
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) d.b[{i, j}] = (int64_t)(rng() % p);
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j)
      for (int k = 1; k <= j; ++k) d.c[{i, j, k}] = (int64_t)(rng() % p);
  return d;
}

}  // namespace

TEST_SUITE("zassenhaus") {

TEST_CASE("parser round trips and reports positions") {
  FreeWord w = parse_word("[x1,x2]^2 x3^-1");
  CHECK(w.g == 3);
  CHECK(w.letters.size() == 9);
  CHECK(parse_word(w.str()) == w);

  CHECK(parse_word("x1") == FreeWord::gen(1, 1));
  CHECK(parse_word("").letters.empty());
  CHECK(parse_word("(x1 x2)^2").str() == "x1 x2 x1 x2");
  CHECK(parse_word("[[x1,x2],x2]").letters.size() == 10);
  CHECK(parse_word("x2^0").letters.empty());
  CHECK(parse_word("x1^3").letters == std::vector<std::pair<int, int64_t>>{{1, 3}});

  for (const char* bad : {"y1", "x", "x0", "[x1 x2]", "[x1,x2", "x1^", "x1)", "x1^99999999"}) {
    try {
      parse_word(bad);
      CHECK_MESSAGE(false, bad);
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }

  // Structural identities through the embedding.
  FreeWord c = parse_word("[x1,x2]");
  CHECK(magnus_embed(parse_word("[x1,x2]^-1"), 5) == magnus_embed(parse_word("[x2,x1]"), 5));
  CHECK(magnus_embed(c.append(c.inverse()), 5).is_one());
}

TEST_CASE("embedding is multiplicative and matches repeated products") {
  std::mt19937_64 rng(3);
  for (int64_t p : {2, 3, 5})
    for (int trial = 0; trial < 40; ++trial) {
      FreeWord u = random_word(rng, 3, 6), v = random_word(rng, 3, 6);
      CHECK(magnus_embed(u.append(v), p) == magnus_embed(u, p).mul(magnus_embed(v, p)));
    }

  // Binomial shortcut against letter-by-letter products.
  for (int64_t p : {2, 3, 5, 7})
    for (int64_t e : {-100, -23, -7, -3, -2, -1, 0, 1, 2, 3, 7, 23, 100}) {
      FreeWord fast = FreeWord::gen(2, 1, e);
      FreeWord slow = FreeWord::empty(2);
      for (int64_t t = 0; t < std::abs(e); ++t) slow.letters.push_back({1, e < 0 ? -1 : 1});
      CHECK(magnus_embed(fast, p) == magnus_embed(slow, p));
    }

  CHECK(magnus_embed(FreeWord::empty(2), 3).is_one());
  CHECK_THROWS_AS(magnus_embed(FreeWord::gen(2, 1), 4), DomainError);
  TruncSeries a = TruncSeries::one(3, 2), b = TruncSeries::one(5, 2);
  CHECK_THROWS_AS(a.mul(b), DomainError);
}

TEST_CASE("series inverse inverts") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    TruncSeries s = magnus_embed(random_word(rng, 2, 8), 3);
    CHECK(s.mul(s.inverse()).is_one());
    CHECK(s.inverse().mul(s).is_one());
  }
  TruncSeries z = TruncSeries::one(3, 2);
  z.c0 = 0;
  CHECK_THROWS_AS(z.inverse(), DomainError);
}

TEST_CASE("filtration levels on the worked examples") {
  CHECK(filtration_level(parse_word("x1"), 3) == 1);
  CHECK(filtration_level(parse_word("[x1,x2]"), 3) == 2);
  CHECK(filtration_level(parse_word("[[x1,x2],x3]"), 3) == 3);
  CHECK(filtration_level(parse_word("x1^3"), 3) == 3);
  CHECK(filtration_level(parse_word("x1^9"), 3) == 4);
  CHECK(filtration_level(parse_word("x1^5"), 5) == 4);
  CHECK(filtration_level(parse_word("x1^4"), 2) == 4);
  CHECK(filtration_level(parse_word("x1^2"), 2) == 2);
  CHECK(filtration_level(FreeWord::empty(2), 3) == 4);

  // The degree-2 part of a commutator is the matrix bracket.
  TruncSeries s = magnus_embed(parse_word("[x1,x2]"), 5);
  CHECK(s.at2(1, 2) == 1);
  CHECK(s.at2(2, 1) == 4);
  CHECK(s.at2(1, 1) == 0);
  CHECK(s.at2(2, 2) == 0);

  // Level >= 2 is equivalent to vanishing exponent sums mod p.
  std::mt19937_64 rng(5);
  for (int64_t p : {2, 3, 5})
    for (int trial = 0; trial < 60; ++trial) {
      FreeWord w = random_word(rng, 3, 7);
      Vec sums(3, 0);
      for (auto [i, e] : w.letters) sums[i - 1] = mod_reduce(sums[i - 1] + e, p);
      CHECK((filtration_level(w, p) >= 2) == vec_is_zero(sums));
    }
}

TEST_CASE("canonical decomposition recovers planted exponents") {
  std::mt19937_64 rng(11);
  for (int64_t p : {3, 5, 7})
    for (int g : {2, 3, 4})
      for (int trial = 0; trial < 25; ++trial) {
        CanonicalDecomposition want = random_decomposition(rng, p, g);
        FreeWord w = recompose(want);
        CanonicalDecomposition got = canonical_decompose(w, p);
        CHECK(got.a == want.a);
        CHECK(got.b == want.b);
        CHECK(got.c == want.c);
      }
}

TEST_CASE("decomposition invariants on scrambled and padded words") {
  std::mt19937_64 rng(12);
  for (int64_t p : {3, 5}) {
    for (int trial = 0; trial < 25; ++trial) {
      // Random product of basic elements in arbitrary order, optionally
      // padded by a deep commutator, still satisfies the recomposition
      // identity in the truncated algebra.
      int g = 3;
      std::vector<FreeWord> factors;
      for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) {
          factors.push_back(FreeWord::commutator(FreeWord::gen(g, i), FreeWord::gen(g, j))
                                .pow((int64_t)(rng() % p)));
          for (int k = 1; k <= j; ++k)
            factors.push_back(
                FreeWord::commutator(
                    FreeWord::commutator(FreeWord::gen(g, i), FreeWord::gen(g, j)),
                    FreeWord::gen(g, k))
                    .pow((int64_t)(rng() % p)));
        }
      std::shuffle(factors.begin(), factors.end(), rng);
      FreeWord w = FreeWord::empty(g);
      for (const auto& f : factors) w = w.append(f);
      if (trial % 2) {
        FreeWord deep = parse_word("[[[x1,x2],x1],x2]");
        deep.g = g;
        w = w.append(deep);  // level 4 padding
      }
      CanonicalDecomposition d = canonical_decompose(w, p);
      CHECK(magnus_embed(recompose(d), p) == magnus_embed(w, p));
      CanonicalDecomposition again = canonical_decompose(recompose(d), p);
      CHECK(again.b == d.b);
      CHECK(again.c == d.c);
      CHECK(again.a == d.a);
    }
  }

  // Worked values.
  CanonicalDecomposition d = canonical_decompose(parse_word("[[x1,x2],x2]^2"), 5);
  CHECK(d.c_at(1, 2, 2) == 2);
  CHECK(d.u(1, 2) == 0);
  for (auto& [k, v] : d.b) CHECK(v == 0);
  CHECK(canonical_decompose(parse_word("x1^6"), 3).a == Vec{2});
  CanonicalDecomposition high = canonical_decompose(parse_word("x1^5"), 5);
  CHECK(high.a == Vec{0});
  for (auto& [k, v] : high.c) CHECK(v == 0);

  CHECK_THROWS_AS(canonical_decompose(parse_word("x1"), 3), DomainError);
  CHECK_THROWS_AS(canonical_decompose(parse_word("[x1,x2]"), 2), DomainError);
  CHECK_THROWS_AS(canonical_decompose(parse_word("[x1,x2]"), 9), DomainError);
}

TEST_CASE("levels agree with the materialized depth four quotient") {
  // Free group on two generators modulo the fourth filtration stage,
  // materialized as truncated series.  The filtration subgroups are then
  // computed from the group-theoretic definition alone and compared with
  // the degree criterion.
  const int64_t p = 3;
  const int g = 2;
  std::vector<TruncSeries> gens{magnus_embed(FreeWord::gen(g, 1), p),
                                magnus_embed(FreeWord::gen(g, 2), p)};
  SeriesSet Q = span_subgroup(gens, p, g);
  REQUIRE(Q.elems.size() == 2187);

  std::vector<TruncSeries> cube_gens;
  SeriesSet cube_seen;
  for (const auto& q : Q.elems) {
    TruncSeries cube = q.mul(q).mul(q);
    if (cube_seen.add(cube)) cube_gens.push_back(cube);
  }
  std::vector<TruncSeries> q2_gens = cube_gens;
  for (const auto& q : Q.elems)
    for (const auto& x : gens) q2_gens.push_back(commutator_series(q, x));
  SeriesSet Q2 = normal_span(q2_gens, gens, p, g);
  REQUIRE(Q2.elems.size() == 243);

  // Minimal generating set of the stage-two subgroup.
  std::vector<TruncSeries> q2_min;
  for (const auto& s : Q2.elems)
    if (!span_subgroup(q2_min, p, g).contains(s)) q2_min.push_back(s);
  std::vector<TruncSeries> q3_gens = cube_gens;
  for (const auto& q : Q.elems)
    for (const auto& y : q2_min) q3_gens.push_back(commutator_series(q, y));
  SeriesSet Q3 = normal_span(q3_gens, gens, p, g);
  REQUIRE(Q3.elems.size() == 81);
  for (const auto& s : Q3.elems) CHECK(Q2.contains(s));

  auto oracle_level = [&](const TruncSeries& s) {
    REQUIRE(Q.contains(s));
    if (s.is_one()) return 4;
    if (Q3.contains(s)) return 3;
    if (Q2.contains(s)) return 2;
    return 1;
  };

  std::vector<FreeWord> corpus{parse_word("x1"),           parse_word("x2"),
                               parse_word("[x1,x2]"),      parse_word("[[x1,x2],x1]"),
                               parse_word("[[x1,x2],x2]"), parse_word("x1^3"),
                               parse_word("x2^3 [x1,x2]"), parse_word("x1^9"),
                               parse_word("[[[x1,x2],x1],x1]")};
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 120; ++trial) corpus.push_back(random_word(rng, g, 6));
  for (auto w : corpus) {
    w.g = g;
    CHECK(filtration_level(w, p) == oracle_level(magnus_embed(w, p)));
  }
}

TEST_CASE("obstruction patterns fire and stay blocked as specified") {
  SUBCASE("repeated pattern on the nested square") {
    for (int64_t p : {3, 5, 7}) {
      ProPPresentation P{2, p, {parse_word("[[x1,x2],x2]")}};
      ObstructionReport rep = obstruction_check(P);
      REQUIRE(rep.hits.size() == 1);
      CHECK(rep.hits[0].pattern == "repeated-triple-commutator");
      CHECK(rep.hits[0].i == 1);
      CHECK(rep.hits[0].j == 2);
      CHECK(rep.hits[0].k == 2);
      CHECK(rep.hits[0].c_value == 1);
      CHECK(rep.not_realizable);
    }
  }

  SUBCASE("single pair relator carries no triple exponent") {
    ObstructionReport rep = obstruction_check({2, 5, {parse_word("[x1,x2]")}});
    CHECK(rep.hits.empty());
    CHECK(rep.near_misses.empty());
    CHECK_FALSE(rep.not_realizable);
  }

  SUBCASE("blocking exponent is reported") {
    FreeWord r = parse_word("[[x1,x2],x3] [x1,x3]");
    r.g = 3;
    ObstructionReport rep = obstruction_check({3, 5, {r}});
    CHECK(rep.hits.empty());
    REQUIRE(rep.near_misses.size() == 2);
    for (const auto& nm : rep.near_misses) {
      CHECK(nm.pattern == "distinct-triple-commutator");
      CHECK(nm.blocker.find("u(1,3) = 1") != std::string::npos);
    }
  }

  SUBCASE("distinct pattern with a clean relator set") {
    FreeWord r = parse_word("[[x1,x3],x2]");
    r.g = 3;
    ObstructionReport rep = obstruction_check({3, 7, {r}});
    REQUIRE(rep.hits.size() == 1);
    CHECK(rep.hits[0].pattern == "distinct-triple-commutator");
    CHECK(rep.hits[0].i == 1);
    CHECK(rep.hits[0].j == 3);
    CHECK(rep.hits[0].k == 2);
    CHECK(rep.hits[0].note.find("not constrained") != std::string::npos);
  }

  SUBCASE("side conditions consult the other relators") {
    FreeWord r1 = parse_word("[[x1,x2],x2]");
    FreeWord r2 = parse_word("[x2,x3]");
    r1.g = r2.g = 3;
    CHECK(obstruction_check({3, 3, {r1, r2}}).hits.size() == 1);
    FreeWord r3 = parse_word("[x1,x2] [x2,x3]");
    r3.g = 3;
    ObstructionReport blocked = obstruction_check({3, 3, {r1, r3}});
    CHECK(blocked.hits.empty());
    REQUIRE(blocked.near_misses.size() == 1);
    CHECK(blocked.near_misses[0].blocker.find("relator 1") != std::string::npos);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(obstruction_check({2, 2, {parse_word("[x1,x2]")}}), DomainError);
    CHECK_THROWS_AS(obstruction_check({2, 3, {parse_word("x1")}}), DomainError);
    FreeWord r = parse_word("[x1,x3]");
    CHECK_THROWS_AS(obstruction_check({2, 3, {r}}), DomainError);
    CHECK_FALSE(obstruction_check({2, 3, {}}).not_realizable);
  }
}

}  // TEST_SUITE
