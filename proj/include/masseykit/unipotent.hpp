#pragma once

#include <optional>
#include <map>

#include "masseykit/massey.hpp"

namespace mk {

// Coordinate calculus for unitriangular matrix groups over F_p.  Elements
// are tuples of the strict upper triangle entries in row major order:
//   dim 3:          (12, 13, 23)
//   dim 4:          (12, 13, 14, 23, 24, 34)
//   dim 4 reduced:  (12, 13, 23, 24, 34)
// The reduced variant drops the top corner slot; it is the quotient of the
// full dim 4 model by its centre, and its product law never consults the
// missing entry.  Working on tuples keeps the large models usable even when
// their order exceeds the finite group bound.
struct UnipotentModel {
  int dim = 0;
  bool reduced = false;
  int64_t p = 0;

  size_t tuple_size() const;
  int64_t order() const;
  // Position of the (i,j) entry inside the tuple, 1-based matrix indices.
  // Throws DomainError for entries the model does not carry.
  int slot(int i, int j) const;
  Vec identity_tuple() const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec inverse(const Vec& a) const;
  // The actual matrix, for the non reduced models.
  Mat matrix_of(const Vec& a) const;
};

UnipotentModel unipotent_model(int dim, int64_t p, bool reduced = false);

// The model group materialized as a FiniteGroup together with the element to
// tuple correspondence.  Construction certifies the coordinate product law
// against the multiplication table on every pair; it throws when the order
// exceeds the finite group bound.
struct UnipotentGroupModel {
  UnipotentModel model;
  GroupPtr group;
  std::vector<Vec> coords;
  std::map<Vec, int> index;

  int elem_of(const Vec& tuple) const;
};

UnipotentGroupModel materialize(const UnipotentModel& m);

// Homomorphism from a finite group into a unipotent model, stored as one
// coordinate tuple per source element.
struct UnipotentHom {
  GroupPtr source;
  UnipotentModel model;
  std::vector<Vec> images;

  // The (i,j) entry as a scalar 1-cochain mod p on the source.
  Cochain entry(int i, int j) const;
  bool is_hom() const;
  // Throws DomainError unless the images are multiplicative on all pairs and
  // every adjacent entry is a homomorphism.
  void check() const;
};

// Lift of a character pair along a bounding cochain: g maps to the dim 3
// tuple (chi_a(g), -phi(g), chi_b(g)).  Requires d(phi) = chi_a cup chi_b
// exactly; the returned map is verified multiplicative on all pairs.
UnipotentHom heisenberg_lift(const Cochain& chi_a, const Cochain& chi_b, const Cochain& phi);

// Reduced dim 4 hom assembled from a three fold defining system: the tuple
// cells give the adjacent entries and the inner cells, negated, give the
// (1,3) and (2,4) entries.  Verified multiplicative, which is equivalent to
// the defining system conditions.
UnipotentHom reduced_hom(const DefiningSystem& D);

// Obstruction cocycle of a reduced dim 4 hom against the zero section of the
// centre extension: c(g,h) = e12(g) e24(h) + e13(g) e34(h).  Always a
// 2-cocycle when the input is a hom.
Cochain pullback_extension_class(const UnipotentHom& rbar);

// A central extension of Q by Z/p presented by a normalized 2-cocycle with
// trivial coefficients: the extension group multiplies as
// (q1,t1)(q2,t2) = (q1 q2, t1 + t2 + c(q1,q2)).
struct CentralExtension {
  GroupPtr Q;
  int64_t p = 0;
  Cochain cocycle;
};

// The centre extension of the materialized reduced dim 4 model, with the
// zero section cocycle.  Small p only (the reduced group must fit the
// finite group bound).
CentralExtension reduced_centre_extension(int64_t p);

struct WeakEmbeddingReport {
  bool exists = false;
  // The cocycle pulled back along phi; the lift exists exactly when it
  // bounds.
  Cochain obstruction;
  // On existence, x with x(gh) = x(g) + x(h) + obstruction(g,h): the pair
  // map g -> (phi(g), x(g)) is then a homomorphism into the extension.
  std::optional<Cochain> section_fix;
};

// Decides whether the homomorphism phi: G -> Q (images per element) lifts
// through the central extension, and returns the correcting cochain when it
// does.  The self check on the returned cochain runs over all pairs.
WeakEmbeddingReport solve_weak_embedding(const GroupPtr& G, const std::vector<int>& phi,
                                         const CentralExtension& ext);

struct FullLiftReport {
  bool exists = false;
  Cochain obstruction;
  // Full dim 4 hom extending the reduced one; verified on all pairs.
  std::optional<UnipotentHom> lift;
};

// Lifts a reduced dim 4 hom to the full model by solving for the missing
// corner entry.  Works at the coordinate level for any prime p.
FullLiftReport lift_to_u4(const UnipotentHom& rbar);
FullLiftReport lift_to_u4(const UnipotentHom& rbar, const MasseyContext& ctx);

// All reduced dim 4 homs whose adjacent entries are the given characters,
// one per defining system for the triple.  Empty when either cup obstruction
// fails to bound.  Throws ResourceError when the candidate space exceeds the
// enumeration bound.
std::vector<UnipotentHom> strip_extensions(const MasseyContext& ctx, const Cochain& c1,
                                           const Cochain& c2, const Cochain& c3);

struct StripLiftReport {
  bool any_extension = false;
  bool lifts = false;
  size_t extensions_tried = 0;
  std::optional<UnipotentHom> witness;
};

// Searches the reduced extensions of the strip for one that lifts to the
// full model, stopping at the first success.  The triple product of the
// strip vanishes exactly when this search succeeds.
StripLiftReport strip_lift_search(const MasseyContext& ctx, const Cochain& c1,
                                  const Cochain& c2, const Cochain& c3);

}  // namespace mk
