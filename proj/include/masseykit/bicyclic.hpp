#pragma once

#include <array>

#include "masseykit/cochain.hpp"

namespace mk {

// Group together with a chosen pair of commuting generators.
struct BicyclicGroup {
  GroupPtr G;
  int s = 0, t = 0;  // generator elements
  int m = 0, n = 0;  // their orders
};

// Validates that s and t commute and generate G.
BicyclicGroup make_bicyclic(const GroupPtr& G, int s, int t);

// The explicit free resolution of Z over Z[G] in homological degrees <= 4:
//
//   Z[G]^5 --d_3--> Z[G]^4 --d_2--> Z[G]^3 --d_1--> Z[G]^2 --d_0--> Z[G] --eps--> Z
//
// d_i maps the module with basis e_0..e_{i+1} to the one with basis
// e_0..e_i.  Writing S_j for N_s (j even) or D_s (j odd) and T_l for N_t
// (l even) or D_t (l odd),
//
//   d_i e_j = S_j e_{j-1} + (-1)^j T_{i+1-j} e_j,
//
// with out-of-range targets dropped.  The construction requires s and t to
// commute; d o d = 0 is verified exactly over Z[G] at build time.
struct BicyclicResolution {
  BicyclicGroup B;
  // d[i][row][col]: coefficient of e_row in d_i(e_col); (i+1) x (i+2).
  std::array<std::vector<std::vector<AlgebraElem>>, 4> d;
};

BicyclicResolution build_resolution(const BicyclicGroup& B);

// Matrix of the dualized map Hom(P_i, M) -> Hom(P_{i+1}, M), f -> f o d_i,
// with Hom(P_i, M) identified with M^(i+1); shape (i+2)r x (i+1)r.
Mat dual_matrix(const BicyclicResolution& R, const GModule& M, int i);

// A 2-cochain of the dualized complex: f(e_0), f(e_1), f(e_2) in M.
struct TripleCochain {
  Vec x, y, z;
  Vec stacked() const;
  static TripleCochain unstack(const Vec& v, int rank);
};

// Z^2, B^2 and representatives for H^2 = Z^2/B^2 of the dualized complex,
// over the full coefficient ring Z/p^k.
struct BicyclicH2 {
  BicyclicGroup B;
  ModulePtr M;
  std::vector<Vec> z2_basis;  // stacked triples
  std::vector<Vec> b2_basis;
  std::vector<TripleCochain> h2_reps;
  std::shared_ptr<RowSpan> b2_span;     // span of B^2
  std::shared_ptr<RowSpan> class_span;  // [basis of B^2 + reps | identity]
  std::shared_ptr<Mat> d1_dual;         // Hom(P_1, M) -> Hom(P_2, M)
  double z2_log_size = 0, b2_log_size = 0, h2_log_size = 0;

  // The four membership conditions: D_t x = 0, D_s z = 0, D_s x = N_t y,
  // D_t z = -N_s y.
  bool is_cocycle(const TripleCochain& c) const;
  bool is_coboundary(const TripleCochain& c) const;
  // Witness (c, d) with x = N_t c, y = D_s c - D_t d, z = N_s d.
  std::optional<std::pair<Vec, Vec>> bound(const TripleCochain& c) const;
  bool same_class(const TripleCochain& a, const TripleCochain& b) const;
  // Canonical representative of the coset c + B^2; equal exactly for equal
  // classes.  Throws DomainError on non-cocycles.
  Vec class_rep(const TripleCochain& c) const;
  // Coefficients g with c = sum g_j rep_j modulo B^2; throws DomainError on
  // non-cocycles.  Canonical for field moduli; over Z/p^k with k > 1 the
  // decomposition is not unique, so compare classes with class_rep or
  // same_class instead.
  Vec class_coords(const TripleCochain& c) const;
};

BicyclicH2 explicit_h2(const BicyclicResolution& R, const ModulePtr& M);

// v(x, y) = D_t x - D_s y; lands in the norm-killed submodule.
Vec map_v(const BicyclicResolution& R, const GModule& M, const Vec& x, const Vec& y);

// The cokernel of v restricted to the norm-killed submodule, i.e. the home
// of the eta invariant.
struct EtaContext {
  BicyclicGroup B;
  ModulePtr M;
  std::shared_ptr<RowSpan> im_v;
  std::vector<Vec> norm_killed;  // generators of ker(N_G)
  double coker_log_size = 0;

  Vec reduce(const Vec& y) const;
  bool is_zero(const Vec& y) const { return vec_is_zero(reduce(y)); }
};

EtaContext eta_context(const BicyclicResolution& R, const ModulePtr& M);

// u(x, z) = [(x, 0, z)] for G-fixed x and z; throws if not fixed.
TripleCochain map_u(const BicyclicH2& H, const Vec& x, const Vec& z);

// eta([(x, y, z)]) = [y] in coker(v); validates the cocycle conditions and
// that y is norm-killed.
Vec eta_class(const EtaContext& ctx, const BicyclicH2& H, const TripleCochain& c);

// Chain maps between the bar resolution and the explicit resolution in
// degrees <= 3, constructed by lifting and certified exactly; they induce
// mutually inverse isomorphisms on H^2.  Field coefficients only (the bar
// side uses the mod-p cochain machinery).
struct BarComparison {
  BicyclicGroup B;
  ModulePtr M;
  // Images F_k of bar basis cells inside P_k = R^(k+1), R = (Z/p)[G];
  // flattened group-algebra coordinates, indexed by the bar cell.
  std::vector<Vec> f1, f2, f3;   // sizes |G|, |G|^2, |G|^3
  // Images G_k(e_c) inside bar degree k, as dense coefficient vectors over
  // the Z-basis g0 [g1|...|gk].
  std::vector<Vec> g1, g2, g3;

  // f -> f o F_2: bicyclic 2-cochain to bar 2-cochain.
  Cochain to_bar(const TripleCochain& c) const;
  // z -> z o G_2: bar 2-cochain to bicyclic 2-cochain.
  TripleCochain from_bar(const Cochain& z) const;
};

BarComparison compare_with_bar(const BicyclicResolution& R, const ModulePtr& M,
                               Budget budget = {});

}  // namespace mk
