#include "masseykit/group_algebra.hpp"

namespace mk {

namespace {
int64_t reduce_coeff(int64_t v, int64_t mod) { return mod ? mod_reduce(v, mod) : v; }
}

AlgebraElem AlgebraElem::unit(const GroupPtr& g, int elem, int64_t mod) {
  AlgebraElem e(g, mod);
  e.c[elem] = reduce_coeff(1, mod);
  return e;
}

AlgebraElem AlgebraElem::add(const AlgebraElem& o) const {
  AlgebraElem r = *this;
  for (int i = 0; i < G->n; ++i) r.c[i] = reduce_coeff(r.c[i] + o.c[i], mod);
  return r;
}

AlgebraElem AlgebraElem::sub(const AlgebraElem& o) const {
  AlgebraElem r = *this;
  for (int i = 0; i < G->n; ++i) r.c[i] = reduce_coeff(r.c[i] - o.c[i], mod);
  return r;
}

AlgebraElem AlgebraElem::neg() const {
  AlgebraElem r = *this;
  for (auto& x : r.c) x = reduce_coeff(-x, mod);
  return r;
}

AlgebraElem AlgebraElem::scale(int64_t s) const {
  AlgebraElem r = *this;
  for (auto& x : r.c) x = reduce_coeff(x * s, mod);
  return r;
}

AlgebraElem AlgebraElem::mul(const AlgebraElem& o) const {
  AlgebraElem r(G, mod);
  for (int a = 0; a < G->n; ++a) {
    if (c[a] == 0) continue;
    for (int b = 0; b < G->n; ++b) {
      if (o.c[b] == 0) continue;
      int ab = G->mul(a, b);
      r.c[ab] = reduce_coeff(r.c[ab] + c[a] * o.c[b], mod);
    }
  }
  return r;
}

AlgebraElem AlgebraElem::reduce_mod(int64_t m) const {
  AlgebraElem r = *this;
  r.mod = m;
  for (auto& x : r.c) x = reduce_coeff(x, m);
  return r;
}

int64_t AlgebraElem::augmentation() const {
  int64_t s = 0;
  for (auto x : c) s += x;
  return reduce_coeff(s, mod);
}

bool AlgebraElem::is_zero() const { return vec_is_zero(c); }

std::string AlgebraElem::str() const {
  std::string s;
  for (int i = 0; i < G->n; ++i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(c[i]) + "*" + G->names[i];
  }
  return s.empty() ? "0" : s;
}

AlgebraElem difference_elem(const GroupPtr& G, int g, int64_t mod) {
  AlgebraElem e(G, mod);
  e.c[g] = reduce_coeff(e.c[g] + 1, mod);
  e.c[G->id] = reduce_coeff(e.c[G->id] - 1, mod);
  return e;
}

AlgebraElem norm_elem(const GroupPtr& G, int g, int64_t mod) {
  AlgebraElem e(G, mod);
  int x = G->id;
  do {
    e.c[x] = reduce_coeff(e.c[x] + 1, mod);
    x = G->mul(x, g);
  } while (x != G->id);
  return e;
}

AlgebraElem full_norm_elem(const GroupPtr& G, int64_t mod) {
  AlgebraElem e(G, mod);
  for (auto& x : e.c) x = reduce_coeff(1, mod);
  return e;
}

AlgebraElem telescoping_elem(const GroupPtr& G, int g, int64_t mod) {
  AlgebraElem e(G, mod);
  int ord = G->order_of(g);
  int x = G->id;
  for (int i = 0; i <= ord - 2; ++i) {
    e.c[x] = reduce_coeff(e.c[x] + (ord - 1 - i), mod);
    x = G->mul(x, g);
  }
  return e;
}

TranslationOperators translation_operators(const GroupPtr& G, int g, int64_t mod) {
  return {difference_elem(G, g, mod), norm_elem(G, g, mod)};
}

}  // namespace mk
