#pragma once

#include "masseykit/bicyclic.hpp"

namespace mk {

// Synthetic datum realizing the paired norm hypotheses over a bicyclic
// group G = <s, t>: a module element alpha fixed by t with N_s alpha = b,
// and gamma fixed by s with N_t gamma = b.  The common value b is fixed by
// all of G.
struct SyntheticKummerDatum {
  BicyclicGroup B;
  ModulePtr M;
  int64_t p = 0;
  int k = 1;
  uint64_t seed = 0;
  Vec alpha, gamma, b;

  // Weighted orbit sums sum_{i=0}^{p-2} (p-1-i) s^i(alpha), and the t-side
  // analog built from gamma.
  Vec A0() const;
  Vec C0() const;
};

// Random datum over the regular module (Z/p^k)[(Z/p)^2], pure in the seed.
SyntheticKummerDatum synth_datum(int64_t p, int k, uint64_t seed);

// Same sampling over a chosen module and bicyclic structure.  Resamples
// alpha when the gamma norm equation is unsolvable and throws ResourceError
// when every attempt fails.
SyntheticKummerDatum synth_datum(const BicyclicGroup& B, const ModulePtr& M, uint64_t seed,
                                 int retries = 32);

// The assembled triple A = f_a + A0, B = gamma - alpha, C = f_c + C0 with
// chosen fixed scalars, in the (x, y, z) slots of the explicit degree-2
// presentation.
struct ABCTriple {
  Vec A, B, C;
  Vec f_a, f_c;
  TripleCochain triple() const { return TripleCochain{A, B, C}; }
};

// Builds the triple and certifies the operator identities
//   D_s A = N_t B,   D_t C = -N_s B,   D_t A = 0,   D_s C = 0,
// which together are exactly the degree-2 cocycle conditions.  The scalars
// must be fixed by the whole group.
ABCTriple build_abc(const SyntheticKummerDatum& d, const Vec& f_a, const Vec& f_c);

// Result of the coboundary normalization: scalars that make the triple a
// coboundary, the solution e of the difference equation B = D_{st} e, and
// the witness pair (C1, C2) = (t(e), -e) whose boundary is the triple.
struct NormalizeReport {
  Vec f_a, f_c, e;
  Vec C1, C2;
  ABCTriple abc;
};

// Full normalization pipeline.  Verifies N_{st} B = 0, solves the
// difference equation for e, derives f_a = N_t(e) - A0 and
// f_c = N_s(-e) - C0, certifies both scalars are fixed by the group, and
// checks the witness equations
//   N_t C1 = A,   D_s C1 - D_t C2 = B,   N_s C2 = C
// exactly.  Throws DomainError when the difference equation has no
// solution, which cannot happen over the regular module.
NormalizeReport normalize_coboundary(const SyntheticKummerDatum& d);

}  // namespace mk
