#include "masseykit/massey.hpp"

#include <algorithm>
#include <string>

namespace mk {

namespace {

std::string cell_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

const Cochain& DefiningSystem::at(int i, int j) const {
  auto it = cells.find({i, j});
  if (it == cells.end())
    throw DomainError("defining system has no cell " + cell_name(i, j));
  return it->second;
}

void DefiningSystem::set(int i, int j, Cochain c) {
  if (!(1 <= i && i < j && j <= n + 1))
    throw DomainError("defining system cell " + cell_name(i, j) + " out of range");
  cells[{i, j}] = std::move(c);
}

std::vector<Cochain> DefiningSystem::tuple() const {
  std::vector<Cochain> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(at(i, i + 1));
  return out;
}

bool MasseyContext::is_hom(const Cochain& c) const {
  return c.G == G && c.degree == 1 && c.M->rank == 1 && c.M->R == M->R &&
         c.is_hom();
}

MasseyContext make_massey_context(const GroupPtr& G, int64_t p, Budget budget) {
  if (!is_prime(p)) throw DomainError("massey context requires a prime modulus");
  MasseyContext ctx;
  ctx.G = G;
  ctx.M = trivial_module(G, p);
  ctx.h1 = cohomology(G, ctx.M, 1, budget);
  ctx.h2 = cohomology(G, ctx.M, 2, budget);
  return ctx;
}

Cochain system_value(const DefiningSystem& D) {
  Cochain V = Cochain::zero(D.G, D.M, 2);
  for (int k = 2; k <= D.n; ++k) V = V.add(cup(D.at(1, k), D.at(k, D.n + 1)));
  return V;
}

SystemCheck validate_defining_system(const DefiningSystem& D, const MasseyContext& ctx) {
  if (D.n < 1) throw DomainError("defining system needs n >= 1");
  for (int i = 1; i <= D.n; ++i)
    for (int j = i + 1; j <= D.n + 1; ++j) {
      bool corner = i == 1 && j == D.n + 1 && D.n > 1;
      if (corner) {
        if (D.has(i, j) != D.complete)
          throw DomainError(D.complete
                                ? "complete system is missing the corner cell " + cell_name(i, j)
                                : "system carries the corner cell " + cell_name(i, j) +
                                      " but is not marked complete");
      } else if (!D.has(i, j)) {
        throw DomainError("defining system is missing cell " + cell_name(i, j));
      }
    }
  for (int i = 1; i <= D.n; ++i)
    if (!is_cocycle(D.at(i, i + 1)))
      throw DomainError("tuple cell " + cell_name(i, i + 1) + " is not a cocycle");
  for (int i = 1; i <= D.n - 1; ++i)
    for (int j = i + 2; j <= D.n + 1; ++j) {
      if (!D.has(i, j)) continue;
      Cochain rhs = Cochain::zero(D.G, D.M, 2);
      for (int l = i + 1; l < j; ++l) rhs = rhs.add(cup(D.at(i, l), D.at(l, j)));
      if (!(coboundary(D.at(i, j)) == rhs))
        throw DomainError("side condition fails at cell " + cell_name(i, j));
    }
  SystemCheck out{system_value(D), {}};
  if (!is_cocycle(out.value)) throw DomainError("corner sum is not a cocycle");
  out.value_class = ctx.h2.class_of(out.value);
  return out;
}

MasseyReport triple_massey(const MasseyContext& ctx, const Cochain& chi1,
                           const Cochain& chi2, const Cochain& chi3) {
  for (const Cochain* c : {&chi1, &chi2, &chi3})
    if (!ctx.is_hom(*c))
      throw DomainError("triple product entries must be scalar homomorphism 1-cochains");
  MasseyReport rep;
  auto a13 = ctx.h2.bound(cup(chi1, chi2));
  auto a24 = ctx.h2.bound(cup(chi2, chi3));
  rep.defined = a13.has_value() && a24.has_value();
  if (!rep.defined) return rep;

  Cochain V = cup(chi1, *a24).add(cup(*a13, chi3));
  rep.value = ctx.h2.class_of(V);

  const int64_t p = ctx.M->R.m;
  const size_t d = ctx.h1.reps.size();
  const size_t h = ctx.h2.h_dim;
  std::vector<Vec> left(d), right(d);
  for (size_t i = 0; i < d; ++i) {
    left[i] = ctx.h2.class_of(cup(chi1, ctx.h1.reps[i]));
    right[i] = ctx.h2.class_of(cup(ctx.h1.reps[i], chi3));
  }
  if (h == 0) {
    rep.vanishes = true;
  } else {
    EchelonReducer red(p, h);
    for (size_t i = 0; i < d; ++i) {
      if (red.add_row(left[i])) rep.indeterminacy.push_back(left[i]);
      if (red.add_row(right[i])) rep.indeterminacy.push_back(right[i]);
    }
    rep.vanishes = vec_is_zero(red.reduce(rep.value));
  }
  if (!rep.vanishes) return rep;

  // Witness: shift a24 and a13 by homomorphisms realizing the value inside
  // the indeterminacy, then bound the corrected corner sum.
  Cochain a13w = *a13, a24w = *a24;
  if (h > 0 && !vec_is_zero(rep.value)) {
    Mat A(ModRing(p, 1), h, 2 * d);
    for (size_t i = 0; i < d; ++i)
      for (size_t r = 0; r < h; ++r) {
        A.at(r, i) = left[i][r];
        A.at(r, d + i) = right[i][r];
      }
    auto sol = solve_affine(A, rep.value);
    if (!sol) throw DomainError("massey witness: value escaped its own indeterminacy");
    for (size_t i = 0; i < d; ++i) {
      a24w = a24w.sub(ctx.h1.reps[i].scale(sol->particular[i]));
      a13w = a13w.sub(ctx.h1.reps[i].scale(sol->particular[d + i]));
    }
  }
  Cochain Vw = cup(chi1, a24w).add(cup(a13w, chi3));
  auto a14 = ctx.h2.bound(Vw);
  if (!a14) throw DomainError("massey witness: corrected corner sum failed to bound");

  DefiningSystem W;
  W.G = ctx.G;
  W.M = ctx.M;
  W.n = 3;
  W.complete = true;
  W.set(1, 2, chi1);
  W.set(2, 3, chi2);
  W.set(3, 4, chi3);
  W.set(1, 3, a13w);
  W.set(2, 4, a24w);
  W.set(1, 4, *a14);
  validate_defining_system(W, ctx);
  rep.witness = std::move(W);
  return rep;
}

MasseyReport triple_massey(const GroupPtr& G, int64_t p, const Cochain& chi1,
                           const Cochain& chi2, const Cochain& chi3, Budget budget) {
  return triple_massey(make_massey_context(G, p, budget), chi1, chi2, chi3);
}

Cochain binomial_cochain(const Cochain& chi, int k) {
  if (chi.degree != 1 || chi.M->rank != 1)
    throw DomainError("binomial cochain requires a scalar degree-1 cochain");
  if (!chi.M->R.is_field())
    throw DomainError("binomial cochain requires a prime modulus");
  const int64_t p = chi.M->R.m;
  if (k < 1 || k >= p) throw DomainError("binomial cochain requires 1 <= k < p");
  if (!chi.is_hom()) throw DomainError("binomial cochain requires a homomorphism");
  Vec vals(chi.G->n);
  for (int g = 0; g < chi.G->n; ++g) vals[g] = binomial_mod(chi.s1(g), k, p);
  return Cochain::scalar1(chi.G, chi.M, vals);
}

DefiningSystem binomial_system(const Cochain& chi, int k) {
  DefiningSystem D;
  D.G = chi.G;
  D.M = chi.M;
  D.n = k;
  D.complete = true;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k + 1; ++j)
      D.set(i, j, binomial_cochain(chi, j - i).neg());
  return D;
}

StagedResult staged_extension(const MasseyContext& ctx, const Cochain& chi_b,
                              const Cochain& chi_a, int k, StagedPattern pattern) {
  const int64_t p = ctx.M->R.m;
  if (!ctx.is_hom(chi_a) || !ctx.is_hom(chi_b))
    throw DomainError("staged extension entries must be scalar homomorphism 1-cochains");
  if (k < 1 || k >= p) throw DomainError("staged extension requires 1 <= k < p");
  if (!ctx.h2.is_coboundary(cup(chi_a, chi_b)))
    throw DomainError("staged extension requires chi_a cup chi_b to vanish");

  DefiningSystem D;
  D.G = ctx.G;
  D.M = ctx.M;
  D.complete = true;
  if (pattern == StagedPattern::b_first) {
    D.n = k + 1;
    for (int i = 2; i <= D.n; ++i)
      for (int j = i + 1; j <= D.n + 1; ++j)
        D.set(i, j, binomial_cochain(chi_a, j - i).neg());
    D.set(1, 2, chi_b.neg());
  } else {
    StagedResult inner = staged_extension(ctx, chi_b, chi_a, k, StagedPattern::b_first);
    if (!inner.system) {
      inner.failed_stage += 1;
      inner.detail = "inner construction: " + inner.detail;
      return inner;
    }
    D.n = k + 2;
    for (const auto& [ij, c] : inner.system->cells)
      D.set(ij.first + 1, ij.second + 1, c);
    D.set(1, 2, chi_a.neg());
  }

  // First-row induction: each stage j needs d a_{1j} = sum_{l} a_{1l} cup a_{lj}.
  const int N = D.n + 1;
  for (int j = 3; j <= N; ++j) {
    Cochain T = Cochain::zero(ctx.G, ctx.M, 2);
    for (int l = 2; l < j; ++l) T = T.add(cup(D.at(1, l), D.at(l, j)));
    if (!is_cocycle(T))
      throw DomainError("staged extension: stage target is not a cocycle");
    if (auto direct = ctx.h2.bound(T)) {
      D.set(1, j, std::move(*direct));
      continue;
    }
    if (j == 3) return {std::nullopt, 3, "initial stage target does not bound"};
    const Cochain& adj = D.at(j - 1, j);  // equals -chi_a at every correction stage
    Vec t = ctx.h2.class_of(T);
    const size_t d = ctx.h1.reps.size();
    const size_t h = ctx.h2.h_dim;
    Mat C(ModRing(p, 1), h, d == 0 ? 1 : d);
    for (size_t i = 0; i < d; ++i) {
      Vec col = ctx.h2.class_of(cup(ctx.h1.reps[i], adj));
      for (size_t r = 0; r < h; ++r) C.at(r, i) = col[r];
    }
    Vec target(h);
    for (size_t r = 0; r < h; ++r) target[r] = mod_reduce(-t[r], p);
    auto sol = solve_affine(C, target);
    if (!sol)
      return {std::nullopt, j, "stage value class lies outside the correction space"};
    Cochain phi = Cochain::zero(ctx.G, ctx.M, 1);
    for (size_t i = 0; i < d; ++i) phi = phi.add(ctx.h1.reps[i].scale(sol->particular[i]));
    D.set(1, j - 1, D.at(1, j - 1).add(phi));
    T = T.add(cup(phi, adj));
    auto fixed = ctx.h2.bound(T);
    if (!fixed) throw DomainError("staged extension: corrected target failed to bound");
    D.set(1, j, std::move(*fixed));
  }
  return {std::move(D), 0, ""};
}

std::vector<Cochain> reverse_tuple(std::vector<Cochain> vals) {
  std::reverse(vals.begin(), vals.end());
  return vals;
}

}  // namespace mk
