#pragma once

#include "masseykit/group.hpp"

namespace mk {

// Element of the group ring Z[G] (mod == 0) or (Z/mod)[G].
struct AlgebraElem {
  GroupPtr G;
  int64_t mod = 0;  // 0 means exact integer coefficients
  Vec c;            // one coefficient per group element

  AlgebraElem() = default;
  AlgebraElem(GroupPtr g, int64_t m) : G(std::move(g)), mod(m), c(G->n, 0) {}

  static AlgebraElem unit(const GroupPtr& g, int elem, int64_t mod = 0);
  static AlgebraElem zero(const GroupPtr& g, int64_t mod = 0) { return AlgebraElem(g, mod); }

  AlgebraElem add(const AlgebraElem& o) const;
  AlgebraElem sub(const AlgebraElem& o) const;
  AlgebraElem neg() const;
  AlgebraElem scale(int64_t s) const;
  // Convolution product in the group ring.
  AlgebraElem mul(const AlgebraElem& o) const;
  AlgebraElem reduce_mod(int64_t m) const;
  int64_t augmentation() const;
  bool is_zero() const;
  bool operator==(const AlgebraElem& o) const { return mod == o.mod && c == o.c; }
  std::string str() const;
};

// g - 1.
AlgebraElem difference_elem(const GroupPtr& G, int g, int64_t mod = 0);
// 1 + g + ... + g^(ord-1).
AlgebraElem norm_elem(const GroupPtr& G, int g, int64_t mod = 0);
// Sum of all group elements.
AlgebraElem full_norm_elem(const GroupPtr& G, int64_t mod = 0);
// T with (g - 1) T = N_g - ord(g): T = sum_{i=0}^{ord-2} (ord-1-i) g^i.
AlgebraElem telescoping_elem(const GroupPtr& G, int g, int64_t mod = 0);

// The (difference, norm) operator pair attached to a group element.
struct TranslationOperators {
  AlgebraElem difference;
  AlgebraElem norm;
};
TranslationOperators translation_operators(const GroupPtr& G, int g, int64_t mod = 0);

}  // namespace mk
