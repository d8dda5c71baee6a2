#pragma once

#include "masseykit/character.hpp"
#include "masseykit/gmodule.hpp"

namespace mk {

struct Budget {
  int max_order_deg2 = 64;    // largest |G| for degree-2 cohomology
  int max_order_compare = 32;  // largest |G| for resolution comparison maps
};

// Inhomogeneous cochain G^degree -> M, degree <= 3, values flattened with the
// module coordinate fastest.  The coboundary uses the action-on-first-argument
// convention: (df)(g0,..,gn) = g0.f(g1,..,gn) + sum (-1)^i f(..g_{i-1}g_i..)
//                              + (-1)^{n+1} f(g0,..,g_{n-1}).
struct Cochain {
  GroupPtr G;
  ModulePtr M;
  int degree = 0;
  Vec v;

  static Cochain zero(const GroupPtr& G, const ModulePtr& M, int degree);
  static Cochain from_values(const GroupPtr& G, const ModulePtr& M, int degree, Vec values);
  // Degree-1 cochain with one scalar value per group element (rank-1 module).
  static Cochain scalar1(const GroupPtr& G, const ModulePtr& M, const Vec& values);

  size_t dim() const;
  int rank() const { return M->rank; }
  size_t idx(int g) const { return (size_t)g * M->rank; }
  size_t idx(int g, int h) const { return ((size_t)g * G->n + h) * M->rank; }
  size_t idx(int g, int h, int k) const { return (((size_t)g * G->n + h) * G->n + k) * M->rank; }
  // Scalar accessors for rank-1 modules.
  int64_t s1(int g) const { return v[idx(g)]; }
  int64_t s2(int g, int h) const { return v[idx(g, h)]; }
  Vec value(size_t base) const { return Vec(v.begin() + base, v.begin() + base + M->rank); }

  Cochain add(const Cochain& o) const;
  Cochain sub(const Cochain& o) const;
  Cochain neg() const;
  Cochain scale(int64_t c) const;
  bool is_zero() const { return vec_is_zero(v); }
  bool operator==(const Cochain& o) const { return degree == o.degree && v == o.v; }
  // Degree-1 cochain that is a homomorphism G -> M (trivial action).
  bool is_hom() const;
};

Cochain coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);

// Cup product of trivial-action rank-1 cochains, total degree <= 3:
// (a cup b)(s_1..s_i, t_1..t_j) = a(s_1..s_i) b(t_1..t_j).
Cochain cup(const Cochain& a, const Cochain& b);

// (x cup delta_chi)(g,h) = carry_chi(g,h) . x for a module element x.
Cochain cup_delta(const Vec& x, const CyclicCharacter& chi, const ModulePtr& M);

// Solver for d f = z with f of the given degree (0 or 1).
class CoboundarySolver {
 public:
  CoboundarySolver(GroupPtr G, ModulePtr M, int source_degree);
  std::optional<Cochain> solve(const Cochain& z) const;
  bool solvable(const Cochain& z) const;

 private:
  GroupPtr G_;
  ModulePtr M_;
  int deg_;
  size_t src_dim_, dst_dim_;
  std::shared_ptr<RowSpan> span_;
};

// Basis data for H^n(G, M), n in {1, 2}; prime modulus only.
struct CohomologyBasis {
  GroupPtr G;
  ModulePtr M;
  int n = 0;
  size_t z_dim = 0, b_dim = 0, h_dim = 0;
  std::vector<Cochain> reps;  // cocycle representatives of an H^n basis

  // Coordinates of [z] in the rep basis; throws DomainError if z is not a
  // cocycle (equivalently not in the span of boundaries and reps).
  Vec class_of(const Cochain& z) const;
  bool is_coboundary(const Cochain& z) const;
  // Witness f with d f = z for a coboundary z.
  std::optional<Cochain> bound(const Cochain& z) const;
  // Cocycle with the given class coordinates.
  Cochain rep_combination(const Vec& coords) const;

  std::shared_ptr<RowSpan> class_span;  // spans boundaries + reps, augmented
  std::shared_ptr<CoboundarySolver> bound_solver;
  size_t cdim = 0;
};

CohomologyBasis cohomology(const GroupPtr& G, const ModulePtr& M, int n, Budget budget = {});

Cochain restrict_cochain(const Cochain& c, const SubgroupView& H);
// Transfer map C^n(H, M) -> C^n(G, M) for trivial-action M; on cohomology,
// corestriction-after-restriction multiplies by the index [G:H].
Cochain corestrict_cochain(const Cochain& c, const SubgroupView& H);
Cochain inflate_cochain(const Cochain& c, const QuotientView& Q);

}  // namespace mk
