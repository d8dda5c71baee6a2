#include "masseykit/kummer.hpp"

#include <random>
#include <sstream>

namespace mk {

namespace {

struct Operators {
  AlgebraElem Ds, Dt, Ns, Nt;
};

Operators operators_of(const SyntheticKummerDatum& d) {
  const auto& G = d.B.G;
  int64_t m = d.M->R.m;
  return {difference_elem(G, d.B.s, m), difference_elem(G, d.B.t, m), norm_elem(G, d.B.s, m),
          norm_elem(G, d.B.t, m)};
}

bool is_group_fixed(const GModule& M, const BicyclicGroup& B, const Vec& v) {
  return M.act_elem(B.s, v) == v && M.act_elem(B.t, v) == v;
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

Vec SyntheticKummerDatum::A0() const {
  return M->act(telescoping_elem(B.G, B.s, M->R.m), alpha);
}

Vec SyntheticKummerDatum::C0() const {
  return M->act(telescoping_elem(B.G, B.t, M->R.m), gamma);
}

SyntheticKummerDatum synth_datum(int64_t p, int k, uint64_t seed) {
  if (!is_prime(p)) throw DomainError("datum modulus base must be prime");
  if (k < 1) throw DomainError("datum modulus exponent must be positive");
  auto G = abelian_group({(int)p, (int)p});
  BicyclicGroup B = make_bicyclic(G, G->gens[0], G->gens[1]);
  return synth_datum(B, regular_module(G, p, k), seed);
}

SyntheticKummerDatum synth_datum(const BicyclicGroup& B, const ModulePtr& M, uint64_t seed,
                                 int retries) {
  if (M->G != B.G) throw DomainError("module and bicyclic structure live on different groups");
  if (B.m != B.n || !is_prime(B.m))
    throw DomainError("datum needs both generators of the same prime order");
  SyntheticKummerDatum d;
  d.B = B;
  d.M = M;
  d.p = B.m;
  d.k = p_valuation(M->R.m, M->R.p);
  d.seed = seed;

  const int64_t m = M->R.m;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> coeff(0, m - 1);
  auto combine = [&](const std::vector<Vec>& gens) {
    Vec v(M->rank, 0);
    for (const auto& g : gens) v = vec_add(v, vec_scale(coeff(rng), g, m), m);
    return v;
  };

  // alpha ranges over the t-fixed submodule; gamma solves the paired norm
  // equation inside the s-fixed submodule.
  std::vector<Vec> t_fixed = kernel_generators(M->algebra_matrix(difference_elem(B.G, B.t, m)));
  AlgebraElem Ns = norm_elem(B.G, B.s, m);
  Mat Nt = M->algebra_matrix(norm_elem(B.G, B.t, m));
  Mat Ds = M->algebra_matrix(difference_elem(B.G, B.s, m));
  Mat stacked(M->R, 2 * (size_t)M->rank, (size_t)M->rank);
  for (int i = 0; i < M->rank; ++i)
    for (int j = 0; j < M->rank; ++j) {
      stacked.at(i, j) = Nt.at(i, j);
      stacked.at(M->rank + i, j) = Ds.at(i, j);
    }

  for (int attempt = 0; attempt < retries; ++attempt) {
    d.alpha = combine(t_fixed);
    d.b = M->act(Ns, d.alpha);
    if (!is_group_fixed(*M, B, d.b)) continue;
    Vec rhs(2 * (size_t)M->rank, 0);
    for (int i = 0; i < M->rank; ++i) rhs[i] = d.b[i];
    auto sol = solve_affine(stacked, rhs);
    if (!sol) continue;
    d.gamma = sol->particular;
    for (const auto& kvec : sol->kernel) d.gamma = vec_add(d.gamma, vec_scale(coeff(rng), kvec, m), m);
    return d;
  }
  throw ResourceError("datum sampling exhausted its retry budget");
}

ABCTriple build_abc(const SyntheticKummerDatum& d, const Vec& f_a, const Vec& f_c) {
  const GModule& M = *d.M;
  const int64_t m = M.R.m;
  if ((int)f_a.size() != M.rank || (int)f_c.size() != M.rank)
    throw DomainError("scalar vector has wrong rank");
  if (!is_group_fixed(M, d.B, f_a)) throw DomainError("first scalar is not fixed by the group");
  if (!is_group_fixed(M, d.B, f_c)) throw DomainError("second scalar is not fixed by the group");

  ABCTriple t;
  t.f_a = f_a;
  t.f_c = f_c;
  t.A = vec_add(f_a, d.A0(), m);
  t.B = vec_sub(d.gamma, d.alpha, m);
  t.C = vec_add(f_c, d.C0(), m);

  Operators op = operators_of(d);
  if (M.act(op.Ds, t.A) != M.act(op.Nt, t.B))
    throw DomainError("datum violates the first operator identity");
  if (M.act(op.Dt, t.C) != vec_scale(-1, M.act(op.Ns, t.B), m))
    throw DomainError("datum violates the second operator identity");
  if (!vec_is_zero(M.act(op.Dt, t.A)) || !vec_is_zero(M.act(op.Ds, t.C)))
    throw DomainError("datum violates the side fixedness conditions");
  return t;
}

NormalizeReport normalize_coboundary(const SyntheticKummerDatum& d) {
  const GModule& M = *d.M;
  const int64_t m = M.R.m;
  Vec zero(M.rank, 0);
  ABCTriple base = build_abc(d, zero, zero);

  int st = d.B.G->mul(d.B.s, d.B.t);
  if (!vec_is_zero(M.act(norm_elem(d.B.G, st, m), base.B)))
    throw DomainError("middle entry is not killed by the joint norm");
  auto e = hilbert90_solve(M, st, base.B);
  if (!e) {
    TateCohomology obstruction = tate_cohomology(M, st, -1);
    throw DomainError("difference equation for the middle entry has no solution; offending class " +
                      vec_str(obstruction.reduce(base.B)));
  }

  Operators op = operators_of(d);
  NormalizeReport r;
  r.e = *e;
  r.f_a = vec_sub(M.act(op.Nt, r.e), d.A0(), m);
  r.f_c = vec_sub(M.act(op.Ns, vec_scale(-1, r.e, m)), d.C0(), m);
  if (!is_group_fixed(M, d.B, r.f_a))
    throw DomainError("derived first scalar is not fixed by the group");
  if (!is_group_fixed(M, d.B, r.f_c))
    throw DomainError("derived second scalar is not fixed by the group");
  r.abc = build_abc(d, r.f_a, r.f_c);

  r.C1 = M.act_elem(d.B.t, r.e);
  r.C2 = vec_scale(-1, r.e, m);
  if (M.act(op.Nt, r.C1) != r.abc.A) throw DomainError("witness fails the first boundary equation");
  if (vec_sub(M.act(op.Ds, r.C1), M.act(op.Dt, r.C2), m) != r.abc.B)
    throw DomainError("witness fails the middle boundary equation");
  if (M.act(op.Ns, r.C2) != r.abc.C) throw DomainError("witness fails the third boundary equation");
  return r;
}

}  // namespace mk
