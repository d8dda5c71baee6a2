#pragma once

#include <memory>
#include <string>
#include <vector>

#include "masseykit/matrix.hpp"
#include "masseykit/modring.hpp"

namespace mk {

inline constexpr int kMaxGroupOrder = 256;

// Finite group as a validated Cayley table.  Elements are indices 0..n-1.
struct FiniteGroup {
  int n = 0;
  std::vector<int> table;  // table[a*n + b] = a*b
  std::vector<int> inv;
  int id = 0;
  std::vector<int> gens;
  std::vector<std::string> names;
  std::string label;

  int mul(int a, int b) const { return table[a * n + b]; }
  int invof(int a) const { return inv[a]; }
  int pow_elem(int a, int64_t e) const;
  int order_of(int a) const;
  bool is_abelian() const;
  int exponent() const;
  std::vector<int> cyclic_subgroup(int g) const;
  std::vector<int> subgroup_closure(std::vector<int> elems) const;
  bool is_subgroup(const std::vector<int>& elems) const;
  bool is_normal(const std::vector<int>& elems) const;
  std::vector<int> center() const;

  // Checks associativity, identity, inverses and that gens generate.
  void validate() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                          std::vector<int> gens = {});
GroupPtr group_from_permutations(int degree, const std::vector<std::vector<int>>& gens);
// Closure of invertible matrices over Z/p (used for unitriangular generators).
GroupPtr group_from_matrices(int dim, int64_t p, const std::vector<Mat>& gens);

GroupPtr cyclic_group(int n);
GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B);
// Abelian group Z/f1 x ... x Z/fr.
GroupPtr abelian_group(const std::vector<int>& factors);
// Full upper unitriangular group over F_p; dim in {3,4}, order p^3 / p^6.
GroupPtr unitriangular_group(int dim, int64_t p);
// Dim-4 unitriangular group with the (1,4) coordinate collapsed; order p^5.
GroupPtr u4bar_group(int64_t p);

// All isomorphism types of abelian groups of order <= bound.
std::vector<GroupPtr> abelian_groups_up_to(int bound);

struct SubgroupView {
  GroupPtr parent;
  GroupPtr sub;
  std::vector<int> elements;  // parent indices, position = sub index
  std::vector<int> to_sub;    // parent index -> sub index or -1
};
SubgroupView make_subgroup(const GroupPtr& G, std::vector<int> elements);

struct QuotientView {
  GroupPtr parent;
  GroupPtr quot;
  std::vector<int> proj;  // parent index -> quotient index
};
QuotientView make_quotient(const GroupPtr& G, const std::vector<int>& normal_elems);

// Representatives r_1..r_m of the right cosets H\G (G = union of H r_i),
// with rep 0 the identity, plus coset_of: element -> rep index.
struct RightTransversal {
  std::vector<int> reps;
  std::vector<int> coset_of;
};
RightTransversal right_transversal(const SubgroupView& H);

}  // namespace mk
