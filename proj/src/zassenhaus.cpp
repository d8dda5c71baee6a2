#include "masseykit/zassenhaus.hpp"

#include <algorithm>
#include <cctype>

namespace mk {

namespace {

constexpr int64_t kMaxExponent = 1000000;
constexpr int64_t kMaxGroupedRepeat = 4096;

}  // namespace

FreeWord FreeWord::gen(int g, int i, int64_t e) {
  if (i < 1 || i > g) throw DomainError("generator index out of range");
  FreeWord w{g, {}};
  if (e != 0) w.letters.push_back({i, e});
  return w;
}

FreeWord FreeWord::commutator(const FreeWord& u, const FreeWord& v) {
  return u.inverse().append(v.inverse()).append(u).append(v);
}

FreeWord FreeWord::inverse() const {
  FreeWord r{g, {}};
  r.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    r.letters.push_back({it->first, -it->second});
  return r;
}

FreeWord FreeWord::append(const FreeWord& o) const {
  FreeWord r{std::max(g, o.g), letters};
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

FreeWord FreeWord::pow(int64_t e) const {
  if (std::abs(e) * (int64_t)letters.size() > 8 * kMaxGroupedRepeat)
    throw DomainError("word power is too large");
  FreeWord base = e < 0 ? inverse() : *this;
  FreeWord r{g, {}};
  for (int64_t t = 0; t < std::abs(e); ++t) r = r.append(base);
  return r;
}

std::string FreeWord::str() const {
  std::string out;
  for (const auto& [i, e] : letters) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(i);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("syntax error at position " + std::to_string(pos) + ": " + msg);
  }
  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int64_t integer() {
    skip();
    int64_t sign = 1;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected digits");
    int64_t v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > kMaxExponent) fail("exponent out of range");
      ++pos;
    }
    return sign * v;
  }

  FreeWord atom() {
    char c = peek();
    if (c == 'x') {
      ++pos;
      if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected generator index");
      int64_t idx = 0;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
        idx = idx * 10 + (s[pos] - '0');
        if (idx > 1024) fail("generator index out of range");
        ++pos;
      }
      if (idx < 1) fail("generator index out of range");
      return FreeWord::gen((int)idx, (int)idx, 1);
    }
    if (c == '[') {
      ++pos;
      FreeWord u = word(",");
      expect(',');
      FreeWord v = word("]");
      expect(']');
      return FreeWord::commutator(u, v);
    }
    if (c == '(') {
      ++pos;
      FreeWord u = word(")");
      expect(')');
      return u;
    }
    fail("expected generator, commutator, or group");
  }

  FreeWord word(const std::string& stops) {
    FreeWord out{0, {}};
    while (!at_end() && stops.find(peek()) == std::string::npos) {
      FreeWord term = atom();
      if (peek() == '^') {
        ++pos;
        int64_t e = integer();
        if (term.letters.size() == 1) {
          term.letters[0].second *= e;
          if (term.letters[0].second == 0) term.letters.clear();
        } else {
          if (std::abs(e) > kMaxGroupedRepeat) fail("grouped exponent out of range");
          term = term.pow(e);
        }
      }
      out = out.append(term);
    }
    return out;
  }
};

}  // namespace

FreeWord parse_word(const std::string& text) {
  Parser parser{text};
  FreeWord w = parser.word("");
  if (!parser.at_end()) parser.fail("unexpected trailing input");
  return w;
}

TruncSeries TruncSeries::one(int64_t p, int g) {
  TruncSeries s;
  s.p = p;
  s.g = g;
  s.c0 = 1;
  s.c1.assign((size_t)g, 0);
  s.c2.assign((size_t)g * g, 0);
  s.c3.assign((size_t)g * g * g, 0);
  return s;
}

TruncSeries TruncSeries::mul(const TruncSeries& o) const {
  if (p != o.p || g != o.g) throw DomainError("series sizes do not match");
  TruncSeries r = one(p, g);
  r.c0 = mod_reduce(c0 * o.c0, p);
  for (int i = 0; i < g; ++i) r.c1[i] = mod_reduce(c0 * o.c1[i] + c1[i] * o.c0, p);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      size_t ij = (size_t)i * g + j;
      r.c2[ij] = mod_reduce(c0 * o.c2[ij] + c2[ij] * o.c0 + c1[i] * o.c1[j], p);
    }
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < g; ++k) {
        size_t ijk = ((size_t)i * g + j) * g + k;
        int64_t acc = c0 * o.c3[ijk] + c3[ijk] * o.c0;
        acc += c1[i] * o.c2[(size_t)j * g + k];
        acc += c2[(size_t)i * g + j] * o.c1[k];
        r.c3[ijk] = mod_reduce(acc, p);
      }
  return r;
}

TruncSeries TruncSeries::inverse() const {
  if (c0 != 1) throw DomainError("series inverse needs constant term 1");
  TruncSeries u = *this;
  u.c0 = 0;
  TruncSeries u2 = u.mul(u);
  TruncSeries u3 = u2.mul(u);
  TruncSeries r = one(p, g);
  auto fold = [&](Vec& out, const Vec& a, const Vec& b, const Vec& d) {
    for (size_t t = 0; t < out.size(); ++t) out[t] = mod_reduce(out[t] - a[t] + b[t] - d[t], p);
  };
  fold(r.c1, u.c1, u2.c1, u3.c1);
  fold(r.c2, u.c2, u2.c2, u3.c2);
  fold(r.c3, u.c3, u2.c3, u3.c3);
  return r;
}

bool TruncSeries::is_one() const { return c0 == 1 && low_degree() == 4; }

int TruncSeries::low_degree() const {
  if (!vec_is_zero(c1)) return 1;
  if (!vec_is_zero(c2)) return 2;
  if (!vec_is_zero(c3)) return 3;
  return 4;
}

namespace {

// (1 + X_i)^e truncated: binomials computed in exact integers, which keeps
// negative exponents correct for every p.
TruncSeries gen_series(int64_t p, int g, int i, int64_t e) {
  if (std::abs(e) > kMaxExponent) throw DomainError("exponent magnitude exceeds the embedding range");
  TruncSeries s = TruncSeries::one(p, g);
  // The falling factorials stay exact in 128 bits for the permitted range.
  __int128 b2 = (__int128)e * (e - 1) / 2;
  __int128 b3 = (__int128)e * (e - 1) * (e - 2) / 6;
  s.c1[i - 1] = mod_reduce(e, p);
  s.c2[(size_t)(i - 1) * g + (i - 1)] = mod_reduce((int64_t)(b2 % p), p);
  s.c3[((size_t)(i - 1) * g + (i - 1)) * g + (i - 1)] = mod_reduce((int64_t)(b3 % p), p);
  return s;
}

}  // namespace

TruncSeries magnus_embed(const FreeWord& w, int64_t p) {
  if (!is_prime(p)) throw DomainError("embedding modulus must be prime");
  TruncSeries s = TruncSeries::one(p, w.g);
  for (const auto& [i, e] : w.letters) {
    if (i < 1 || i > w.g) throw DomainError("word letter outside the declared generators");
    s = s.mul(gen_series(p, w.g, i, e));
  }
  return s;
}

int filtration_level(const FreeWord& w, int64_t p) { return magnus_embed(w, p).low_degree(); }

namespace {

std::vector<std::pair<int, int>> pair_slots(int g) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) out.push_back({i, j});
  return out;
}

std::vector<std::array<int, 3>> triple_slots(int g) {
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j)
      for (int k = 1; k <= j; ++k) out.push_back({i, j, k});
  return out;
}

FreeWord basic_pair(int g, int i, int j) {
  return FreeWord::commutator(FreeWord::gen(g, i), FreeWord::gen(g, j));
}

FreeWord basic_triple(int g, int i, int j, int k) {
  return FreeWord::commutator(basic_pair(g, i, j), FreeWord::gen(g, k));
}

}  // namespace

int64_t CanonicalDecomposition::u(int i, int j) const {
  if (i == j) throw DomainError("symmetrized exponent needs distinct indices");
  auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
  auto it = b.find(key);
  return it == b.end() ? 0 : it->second;
}

int64_t CanonicalDecomposition::c_at(int i, int j, int k) const {
  auto it = c.find({i, j, k});
  return it == c.end() ? 0 : it->second;
}

CanonicalDecomposition canonical_decompose(const FreeWord& w, int64_t p) {
  if (!is_prime(p) || p == 2) throw DomainError("decomposition basis requires an odd prime");
  TruncSeries s = magnus_embed(w, p);
  if (s.low_degree() == 1) throw DomainError("word sits at filtration level 1");
  int g = w.g;

  CanonicalDecomposition d;
  d.p = p;
  d.g = g;
  d.a.assign((size_t)g, 0);

  FreeWord pb = FreeWord::empty(g);
  for (auto [i, j] : pair_slots(g)) {
    int64_t bij = s.at2(i, j);
    if (s.at2(j, i) != mod_reduce(-bij, p) || s.at2(i, i) != 0 || s.at2(j, j) != 0)
      throw DomainError("degree-2 component is outside the commutator span");
    d.b[{i, j}] = bij;
    if (bij != 0) pb = pb.append(basic_pair(g, i, j).pow(bij));
  }
  TruncSeries rest = magnus_embed(pb, p).inverse().mul(s);
  if (!vec_is_zero(rest.c2)) throw DomainError("degree-2 component is outside the commutator span");

  if (p == 3) {
    FreeWord pa = FreeWord::empty(g);
    for (int i = 1; i <= g; ++i) {
      d.a[i - 1] = rest.at3(i, i, i);
      if (d.a[i - 1] != 0) pa = pa.append(FreeWord::gen(g, i, 3 * d.a[i - 1]));
    }
    rest = magnus_embed(pa, p).inverse().mul(rest);
  }

  auto slots = triple_slots(g);
  ModRing F(p, 1);
  Mat span(F, (size_t)g * g * g, slots.size());
  for (size_t t = 0; t < slots.size(); ++t) {
    TruncSeries img = magnus_embed(basic_triple(g, slots[t][0], slots[t][1], slots[t][2]), p);
    for (size_t row = 0; row < img.c3.size(); ++row) span.at(row, t) = img.c3[row];
  }
  auto sol = solve_affine(span, rest.c3);
  if (!sol) throw DomainError("degree-3 component is outside the basic product span");
  if (!sol->kernel.empty()) throw DomainError("basic product span is degenerate");
  for (size_t t = 0; t < slots.size(); ++t) d.c[slots[t]] = sol->particular[t];

  if (!(magnus_embed(recompose(d), p) == s))
    throw DomainError("recomposition failed the truncation check");
  return d;
}

FreeWord recompose(const CanonicalDecomposition& d) {
  FreeWord w = FreeWord::empty(d.g);
  for (auto [i, j] : pair_slots(d.g)) {
    int64_t e = d.u(i, j);
    if (e != 0) w = w.append(basic_pair(d.g, i, j).pow(e));
  }
  if (d.p == 3)
    for (int i = 1; i <= d.g; ++i)
      if (d.a[i - 1] != 0) w = w.append(FreeWord::gen(d.g, i, 3 * d.a[i - 1]));
  for (const auto& slot : triple_slots(d.g)) {
    int64_t e = d.c_at(slot[0], slot[1], slot[2]);
    if (e != 0) w = w.append(basic_triple(d.g, slot[0], slot[1], slot[2]).pow(e));
  }
  return w;
}

namespace {

std::string u_blocker(int i, int j, int64_t v, size_t relator) {
  return "u(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v) +
         " in relator " + std::to_string(relator);
}

}  // namespace

ObstructionReport obstruction_check(const ProPPresentation& P) {
  if (!is_prime(P.p) || P.p == 2) throw DomainError("obstruction patterns require an odd prime");
  if (P.g < 1) throw DomainError("presentation needs at least one generator");

  ObstructionReport rep;
  for (const auto& r : P.relators) {
    if (r.g > P.g) throw DomainError("relator uses a generator outside the presentation");
    FreeWord w = r;
    w.g = P.g;
    if (filtration_level(w, P.p) < 2) throw DomainError("relator sits at filtration level 1");
    rep.decomps.push_back(canonical_decompose(w, P.p));
  }

  const int g = P.g;
  auto scan_u = [&](const CanonicalDecomposition& d, size_t relator, int a, int b,
                    std::string& blocker) {
    if (int64_t v = d.u(a, b); v != 0) {
      blocker = u_blocker(a, b, v, relator);
      return false;
    }
    return true;
  };

  for (size_t ri = 0; ri < rep.decomps.size(); ++ri) {
    const CanonicalDecomposition& d = rep.decomps[ri];

    // Distinct pattern: triple exponents c_ijk with k outside {i, j}.
    for (int i = 1; i <= g; ++i)
      for (int j = i + 1; j <= g; ++j)
        for (int k = 1; k < j; ++k) {
          if (k == i) continue;
          int64_t cv = d.c_at(i, j, k);
          if (cv == 0) continue;
          std::string blocker;
          bool ok = scan_u(d, ri, i, j, blocker) && scan_u(d, ri, k, j, blocker) &&
                    scan_u(d, ri, k, i, blocker);
          for (int l = 1; l <= g && ok; ++l) {
            if (l == i || l == j || l == k) continue;
            ok = scan_u(d, ri, k, l, blocker) && scan_u(d, ri, j, l, blocker);
          }
          for (size_t si = 0; si < rep.decomps.size() && ok; ++si) {
            if (si == ri) continue;
            ok = scan_u(rep.decomps[si], si, k, i, blocker) &&
                 scan_u(rep.decomps[si], si, i, j, blocker);
          }
          if (ok)
            rep.hits.push_back({"distinct-triple-commutator", ri, i, j, k, cv,
                                "exponents u(i,l) for l outside the triple are not constrained "
                                "by this pattern"});
          else
            rep.near_misses.push_back({"distinct-triple-commutator", ri, i, j, k, blocker});
        }

    // Repeated pattern: c_iji or c_ijj.
    for (int i = 1; i <= g; ++i)
      for (int j = i + 1; j <= g; ++j)
        for (int k : {i, j}) {
          int64_t cv = d.c_at(i, j, k);
          if (cv == 0) continue;
          std::string blocker;
          bool ok = scan_u(d, ri, i, j, blocker);
          for (int l = 1; l <= g && ok; ++l) {
            if (l == i || l == j) continue;
            ok = scan_u(d, ri, i, l, blocker) && scan_u(d, ri, j, l, blocker);
          }
          for (size_t si = 0; si < rep.decomps.size() && ok; ++si) {
            if (si == ri) continue;
            ok = scan_u(rep.decomps[si], si, i, j, blocker);
          }
          if (ok)
            rep.hits.push_back({"repeated-triple-commutator", ri, i, j, k, cv, ""});
          else
            rep.near_misses.push_back({"repeated-triple-commutator", ri, i, j, k, blocker});
        }
  }
  rep.not_realizable = !rep.hits.empty();
  return rep;
}

}  // namespace mk
