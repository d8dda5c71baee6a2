#include "masseykit/character.hpp"

namespace mk {

CyclicCharacter CyclicCharacter::from_generator_values(const GroupPtr& G, int n,
                                                       const std::map<int, int>& gen_values) {
  if (n < 1) throw DomainError("character denominator must be positive");
  CyclicCharacter ch;
  ch.G = G;
  ch.n = n;
  ch.val.assign(G->n, -1);
  ch.val[G->id] = 0;
  std::vector<int> frontier{G->id};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int g : frontier)
      for (auto& [s, v] : gen_values) {
        int gs = G->mul(g, s);
        int want = mod_reduce(ch.val[g] + v, n);
        if (ch.val[gs] < 0) {
          ch.val[gs] = want;
          next.push_back(gs);
        }
      }
    frontier = std::move(next);
  }
  for (int v : ch.val)
    if (v < 0) throw DomainError("character generators do not generate the group");
  ch.check();
  return ch;
}

CyclicCharacter CyclicCharacter::for_generator(const GroupPtr& G, int s) {
  std::map<int, int> vals;
  for (int g : G->gens) vals[g] = 0;
  vals[s] = 1;
  return from_generator_values(G, G->order_of(s), vals);
}

std::vector<int> CyclicCharacter::delta_cocycle() const {
  std::vector<int> d((size_t)G->n * G->n);
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h) {
      int carry = val[g] + val[h] - val[G->mul(g, h)];
      if (carry != 0 && carry != n) throw DomainError("character carry out of range");
      d[(size_t)g * G->n + h] = carry == 0 ? 0 : 1;
    }
  return d;
}

void CyclicCharacter::check() const {
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h)
      if (mod_reduce(val[g] + val[h], n) != val[G->mul(g, h)])
        throw DomainError("character values are not a homomorphism");
}

}  // namespace mk
