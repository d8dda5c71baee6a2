#pragma once

#include <map>

#include "masseykit/group.hpp"

namespace mk {

// Homomorphism G -> (1/n)Z/Z, stored as numerators val[g] in [0, n).
// delta_cocycle() is the integer-valued 2-cocycle of carries
//   (g, h) -> (val[g] + val[h] - val[g h]) / n  in {0, 1},
// representing the image of the character under the connecting map to H^2(G, Z).
struct CyclicCharacter {
  GroupPtr G;
  int n = 1;  // denominator
  std::vector<int> val;

  // Extends the given values on generators by products; throws if the
  // assignment is not a homomorphism.
  static CyclicCharacter from_generator_values(const GroupPtr& G, int n,
                                               const std::map<int, int>& gen_values);
  // Character of a chosen generator s: s -> 1/ord(s), all other listed
  // generators -> 0.
  static CyclicCharacter for_generator(const GroupPtr& G, int s);

  int operator()(int g) const { return val[g]; }
  // Carry table, indexed g * |G| + h, values in {0, 1}.
  std::vector<int> delta_cocycle() const;
  void check() const;
};

}  // namespace mk
