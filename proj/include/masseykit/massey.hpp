#pragma once

#include <map>
#include <optional>

#include "masseykit/cochain.hpp"

namespace mk {

// Triangular array a_ij of 1-cochains, 1 <= i < j <= n+1, attached to the
// tuple (a_{12}, a_{23}, ..., a_{n,n+1}) of its diagonal cells.  The side
// conditions are
//
//   (1)  a_{i,i+1} is a 1-cocycle (the i-th tuple entry), and
//   (2)  d a_{ij} = sum_{l=i+1}^{j-1} a_{il} cup a_{lj}  whenever i+1 < j.
//
// Without the corner cell (1, n+1) this is a defining system for the n-fold
// product of the tuple; with the corner present and satisfying (2) it is a
// complete system, certifying that the product contains zero.
struct DefiningSystem {
  GroupPtr G;
  ModulePtr M;
  int n = 0;
  bool complete = false;
  std::map<std::pair<int, int>, Cochain> cells;

  const Cochain& at(int i, int j) const;
  bool has(int i, int j) const { return cells.count({i, j}) > 0; }
  void set(int i, int j, Cochain c);
  std::vector<Cochain> tuple() const;
};

// Shared bases and solvers for one coefficient choice (G, F_p).
struct MasseyContext {
  GroupPtr G;
  ModulePtr M;
  CohomologyBasis h1, h2;

  bool is_hom(const Cochain& c) const;
};

MasseyContext make_massey_context(const GroupPtr& G, int64_t p, Budget budget = {});

struct SystemCheck {
  Cochain value;    // sum_{k=2}^{n} a_{1k} cup a_{k,n+1}
  Vec value_class;  // its coordinates in the degree-2 basis
};

// Re-checks both side conditions (throwing DomainError that names the first
// offending cell) and returns the corner-sum cocycle with its class.  For a
// complete system the class is necessarily zero.
SystemCheck validate_defining_system(const DefiningSystem& D, const MasseyContext& ctx);

// The corner sum alone, no validation.
Cochain system_value(const DefiningSystem& D);

struct MasseyReport {
  bool defined = false;
  Vec value;                       // class coordinates, when defined
  std::vector<Vec> indeterminacy;  // basis of chi1 cup H^1 + H^1 cup chi3
  bool vanishes = false;
  std::optional<DefiningSystem> witness;  // validated complete system
};

// <chi1, chi2, chi3>: defined iff both consecutive cups bound; the value set
// is then the coset value + indeterminacy, and vanishing means it contains
// zero, certified by the witness system.
MasseyReport triple_massey(const MasseyContext& ctx, const Cochain& chi1,
                           const Cochain& chi2, const Cochain& chi3);
MasseyReport triple_massey(const GroupPtr& G, int64_t p, const Cochain& chi1,
                           const Cochain& chi2, const Cochain& chi3,
                           Budget budget = {});

// Pointwise binomial coefficient (chi choose k); requires 1 <= k < p so the
// polynomial has invertible denominators.  Satisfies
//   d (chi choose k) = - sum_{l=1}^{k-1} (chi choose l) cup (chi choose k-l).
Cochain binomial_cochain(const Cochain& chi, int k);

// The complete system {-(chi choose j-i)} for the k-tuple (-chi, ..., -chi).
DefiningSystem binomial_system(const Cochain& chi, int k);

enum class StagedPattern { b_first, a_b_a };

struct StagedResult {
  std::optional<DefiningSystem> system;  // complete system on success
  int failed_stage = 0;                  // first-row index j that failed; 0 on success
  std::string detail;
};

// First-column induction over the binomial block: builds a complete system
// for (-chi_b, -chi_a, ..., -chi_a) (k copies of -chi_a; pattern b_first) or
// (-chi_a, -chi_b, -chi_a, ..., -chi_a) (k+1 copies; pattern a_b_a).  Each
// stage solves d a_{1j} = sum a_{1l} cup a_{lj} directly, else corrects
// a_{1,j-1} inside the subspace {phi cup (-chi_a)}; when even that fails the
// result carries the failing stage.  Requires chi_a cup chi_b = 0 and k < p.
StagedResult staged_extension(const MasseyContext& ctx, const Cochain& chi_b,
                              const Cochain& chi_a, int k, StagedPattern pattern);

std::vector<Cochain> reverse_tuple(std::vector<Cochain> vals);

}  // namespace mk
