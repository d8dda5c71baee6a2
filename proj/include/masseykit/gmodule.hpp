#pragma once

#include <map>

#include "masseykit/group_algebra.hpp"

namespace mk {

// Finitely generated module (Z/p^k)^rank with a G-action given by invertible
// matrices, one per group element.
struct GModule {
  GroupPtr G;
  ModRing R;
  int rank = 0;
  std::vector<Mat> action;  // action[g]: rank x rank over Z/p^k

  static GModule trivial(const GroupPtr& G, ModRing R, int rank = 1);
  // Group ring (Z/p^k)[G] with the left translation action.
  static GModule regular(const GroupPtr& G, ModRing R);
  // Extends matrices given on generators along the Cayley graph; verifies
  // the extension is a homomorphism on the full table.
  static GModule from_generator_action(const GroupPtr& G, ModRing R,
                                       const std::map<int, Mat>& gen_action);

  Vec act_elem(int g, const Vec& v) const { return action[g].apply(v); }
  Vec act(const AlgebraElem& x, const Vec& v) const;
  // Matrix of v -> x . v for a group-ring element x.
  Mat algebra_matrix(const AlgebraElem& x) const;
  bool is_trivial_action() const;
  void check() const;
};

using ModulePtr = std::shared_ptr<const GModule>;

ModulePtr trivial_module(const GroupPtr& G, int64_t p, int k = 1, int rank = 1);
ModulePtr regular_module(const GroupPtr& G, int64_t p, int k = 1);

// Generators of the fixed submodule M^G.
std::vector<Vec> fixed_points(const GModule& M);

// Subquotient ker(top)/im(bottom) for the cyclic-action pair attached to g:
//   degree  0:  ker(g - 1) / im(N_g)
//   degree -1:  ker(N_g)  / im(g - 1)
struct TateCohomology {
  std::vector<Vec> basis;  // kernel generators independent modulo the image
  std::shared_ptr<RowSpan> image;
  bool is_zero() const { return basis.empty(); }
  // Canonical representative modulo the image subgroup.
  Vec reduce(const Vec& v) const { return image->reduce(v); }
};
TateCohomology tate_cohomology(const GModule& M, int g, int degree);

// Solves (g - 1) e = target; requires target in ker(N_g).
std::optional<Vec> hilbert90_solve(const GModule& M, int g, const Vec& target);

}  // namespace mk
