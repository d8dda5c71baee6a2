#include "masseykit/cochain.hpp"

#include <cassert>

namespace mk {

Cochain Cochain::zero(const GroupPtr& G, const ModulePtr& M, int degree) {
  if (degree < 0 || degree > 3) throw DomainError("cochain degree out of range [0,3]");
  Cochain c;
  c.G = G;
  c.M = M;
  c.degree = degree;
  size_t cells = 1;
  for (int i = 0; i < degree; ++i) cells *= (size_t)G->n;
  c.v.assign(cells * M->rank, 0);
  return c;
}

Cochain Cochain::from_values(const GroupPtr& G, const ModulePtr& M, int degree, Vec values) {
  Cochain c = zero(G, M, degree);
  if (values.size() != c.v.size()) throw DomainError("cochain value vector has wrong size");
  for (auto& x : values) x = M->R.reduce(x);
  c.v = std::move(values);
  return c;
}

Cochain Cochain::scalar1(const GroupPtr& G, const ModulePtr& M, const Vec& values) {
  if (M->rank != 1) throw DomainError("scalar1 needs a rank-1 module");
  return from_values(G, M, 1, values);
}

size_t Cochain::dim() const { return v.size(); }

Cochain Cochain::add(const Cochain& o) const {
  Cochain r = *this;
  r.v = vec_add(v, o.v, M->R.m);
  return r;
}

Cochain Cochain::sub(const Cochain& o) const {
  Cochain r = *this;
  r.v = vec_sub(v, o.v, M->R.m);
  return r;
}

Cochain Cochain::neg() const { return zero(G, M, degree).sub(*this); }

Cochain Cochain::scale(int64_t c) const {
  Cochain r = *this;
  r.v = vec_scale(c, v, M->R.m);
  return r;
}

bool Cochain::is_hom() const {
  if (degree != 1 || !M->is_trivial_action()) return false;
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h)
      for (int i = 0; i < M->rank; ++i)
        if (v[idx(G->mul(g, h)) + i] != M->R.reduce(v[idx(g) + i] + v[idx(h) + i])) return false;
  return true;
}

Cochain coboundary(const Cochain& c) {
  const auto& G = *c.G;
  const auto& M = *c.M;
  const int64_t m = M.R.m;
  const int r = M.rank;
  Cochain d = Cochain::zero(c.G, c.M, c.degree + 1);
  switch (c.degree) {
    case 0:
      for (int g = 0; g < G.n; ++g) {
        Vec gv = M.act_elem(g, c.v);
        for (int i = 0; i < r; ++i) d.v[d.idx(g) + i] = mod_reduce(gv[i] - c.v[i], m);
      }
      break;
    case 1:
      for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) {
          Vec gv = M.act_elem(g, c.value(c.idx(h)));
          size_t out = d.idx(g, h);
          size_t igh = c.idx(G.mul(g, h)), ig = c.idx(g);
          for (int i = 0; i < r; ++i)
            d.v[out + i] = mod_reduce(gv[i] - c.v[igh + i] + c.v[ig + i], m);
        }
      break;
    case 2:
      for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) {
          int gh = G.mul(g, h);
          for (int k = 0; k < G.n; ++k) {
            Vec gv = M.act_elem(g, c.value(c.idx(h, k)));
            size_t out = d.idx(g, h, k);
            size_t i1 = c.idx(gh, k), i2 = c.idx(g, G.mul(h, k)), i3 = c.idx(g, h);
            for (int i = 0; i < r; ++i)
              d.v[out + i] = mod_reduce(gv[i] - c.v[i1 + i] + c.v[i2 + i] - c.v[i3 + i], m);
          }
        }
      break;
    default:
      throw DomainError("coboundary input degree must be <= 2");
  }
  return d;
}

bool is_cocycle(const Cochain& c) {
  if (c.degree != 2) return coboundary(c).is_zero();
  // Degree 2 is checked by streaming: materializing the degree 3 table costs
  // n^3 cells, which is prohibitive for groups near the order bound.
  const auto& G = *c.G;
  const auto& M = *c.M;
  const int64_t m = M.R.m;
  const int r = M.rank;
  if (M.is_trivial_action() && r == 1) {
    for (int g = 0; g < G.n; ++g)
      for (int h = 0; h < G.n; ++h) {
        int gh = G.mul(g, h);
        int64_t chg = c.v[c.idx(g, h)];
        for (int k = 0; k < G.n; ++k)
          if (mod_reduce(c.v[c.idx(h, k)] - c.v[c.idx(gh, k)] + c.v[c.idx(g, G.mul(h, k))] - chg,
                         m) != 0)
            return false;
      }
    return true;
  }
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) {
      int gh = G.mul(g, h);
      size_t i3 = c.idx(g, h);
      for (int k = 0; k < G.n; ++k) {
        Vec gv = M.act_elem(g, c.value(c.idx(h, k)));
        size_t i1 = c.idx(gh, k), i2 = c.idx(g, G.mul(h, k));
        for (int i = 0; i < r; ++i)
          if (mod_reduce(gv[i] - c.v[i1 + i] + c.v[i2 + i] - c.v[i3 + i], m) != 0) return false;
      }
    }
  return true;
}

Cochain cup(const Cochain& a, const Cochain& b) {
  if (a.M->rank != 1 || b.M->rank != 1 || !a.M->is_trivial_action() || !b.M->is_trivial_action())
    throw DomainError("cup requires trivial-action rank-1 cochains");
  if (a.M->R.m != b.M->R.m) throw DomainError("cup modulus mismatch");
  if (a.degree + b.degree > 3) throw DomainError("cup total degree exceeds 3");
  const auto& G = *a.G;
  const int64_t m = a.M->R.m;
  Cochain r = Cochain::zero(a.G, a.M, a.degree + b.degree);
  size_t na = 1, nb = 1;
  for (int i = 0; i < a.degree; ++i) na *= (size_t)G.n;
  for (int i = 0; i < b.degree; ++i) nb *= (size_t)G.n;
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j) r.v[i * nb + j] = a.v[i] * b.v[j] % m;
  return r;
}

Cochain cup_delta(const Vec& x, const CyclicCharacter& chi, const ModulePtr& M) {
  auto carries = chi.delta_cocycle();
  Cochain r = Cochain::zero(chi.G, M, 2);
  for (int g = 0; g < chi.G->n; ++g)
    for (int h = 0; h < chi.G->n; ++h) {
      if (!carries[(size_t)g * chi.G->n + h]) continue;
      size_t out = r.idx(g, h);
      for (int i = 0; i < M->rank; ++i) r.v[out + i] = M->R.reduce(x[i]);
    }
  return r;
}

CoboundarySolver::CoboundarySolver(GroupPtr G, ModulePtr M, int source_degree)
    : G_(std::move(G)), M_(std::move(M)), deg_(source_degree) {
  if (deg_ != 0 && deg_ != 1) throw DomainError("CoboundarySolver source degree must be 0 or 1");
  const size_t n = (size_t)G_->n, r = (size_t)M_->rank;
  src_dim_ = (deg_ == 0 ? 1 : n) * r;
  dst_dim_ = (deg_ == 0 ? n : n * n) * r;
  span_ = std::make_shared<RowSpan>(M_->R, dst_dim_ + src_dim_);
  Cochain basis = Cochain::zero(G_, M_, deg_);
  for (size_t t = 0; t < src_dim_; ++t) {
    basis.v[t] = 1;
    Cochain db = coboundary(basis);
    basis.v[t] = 0;
    Vec row(dst_dim_ + src_dim_, 0);
    std::copy(db.v.begin(), db.v.end(), row.begin());
    row[dst_dim_ + t] = 1;
    span_->insert(std::move(row));
  }
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& z) const {
  if (z.v.size() != dst_dim_ || z.degree != deg_ + 1)
    throw DomainError("CoboundarySolver::solve target shape mismatch");
  Vec probe(dst_dim_ + src_dim_, 0);
  std::copy(z.v.begin(), z.v.end(), probe.begin());
  Vec res = span_->reduce(std::move(probe));
  for (size_t t = 0; t < dst_dim_; ++t)
    if (res[t] != 0) return std::nullopt;
  Vec f(src_dim_);
  for (size_t t = 0; t < src_dim_; ++t) f[t] = mod_reduce(-res[dst_dim_ + t], M_->R.m);
  return Cochain::from_values(G_, M_, deg_, std::move(f));
}

bool CoboundarySolver::solvable(const Cochain& z) const { return solve(z).has_value(); }

CohomologyBasis cohomology(const GroupPtr& G, const ModulePtr& M, int n, Budget budget) {
  if (n != 1 && n != 2) throw DomainError("cohomology degree must be 1 or 2");
  if (!M->R.is_field())
    throw DomainError("bar-cochain cohomology supports prime modulus only");
  if (n == 2 && G->n > budget.max_order_deg2)
    throw ResourceError("degree-2 cohomology budget exceeded: order " + std::to_string(G->n) +
                        " > " + std::to_string(budget.max_order_deg2));
  const int gn = G->n, r = M->rank;
  const int64_t p = M->R.p;
  CohomologyBasis out;
  out.G = G;
  out.M = M;
  out.n = n;
  Cochain model = Cochain::zero(G, M, n);
  out.cdim = model.dim();

  // Cocycle constraints, one sparse row per (n+1)-tuple and coordinate.
  EchelonReducer constraints(p, out.cdim);
  std::vector<std::pair<size_t, int64_t>> entries;
  if (n == 1) {
    for (int a = 0; a < gn; ++a)
      for (int b = 0; b < gn; ++b) {
        int ab = G->mul(a, b);
        for (int i = 0; i < r; ++i) {
          entries.clear();
          for (int j = 0; j < r; ++j) {
            int64_t co = M->action[a].at(i, j);
            if (co) entries.push_back({model.idx(b) + j, co});
          }
          entries.push_back({model.idx(ab) + i, -1});
          entries.push_back({model.idx(a) + i, 1});
          constraints.add_row_sparse(entries);
        }
      }
  } else {
    for (int a = 0; a < gn; ++a)
      for (int b = 0; b < gn; ++b) {
        int ab = G->mul(a, b);
        for (int c = 0; c < gn; ++c) {
          int bc = G->mul(b, c);
          for (int i = 0; i < r; ++i) {
            entries.clear();
            for (int j = 0; j < r; ++j) {
              int64_t co = M->action[a].at(i, j);
              if (co) entries.push_back({model.idx(b, c) + j, co});
            }
            entries.push_back({model.idx(ab, c) + i, -1});
            entries.push_back({model.idx(a, bc) + i, 1});
            entries.push_back({model.idx(a, b) + i, -1});
            constraints.add_row_sparse(entries);
          }
        }
      }
  }
  std::vector<Vec> zbasis = constraints.kernel_basis();
  out.z_dim = zbasis.size();

  // Coboundaries of a basis of C^(n-1).
  std::vector<Vec> bgens;
  EchelonReducer bred(p, out.cdim);
  Cochain lower = Cochain::zero(G, M, n - 1);
  for (size_t t = 0; t < lower.v.size(); ++t) {
    lower.v[t] = 1;
    Cochain db = coboundary(lower);
    lower.v[t] = 0;
    if (bred.add_row(db.v)) bgens.push_back(db.v);
  }
  out.b_dim = bgens.size();

  for (auto& z : zbasis) {
    if (bred.add_row(z)) out.reps.push_back(Cochain::from_values(G, M, n, z));
  }
  out.h_dim = out.reps.size();
  if (out.h_dim != out.z_dim - out.b_dim)
    throw DomainError("cohomology dimension bookkeeping failed");

  // Class solver: span of boundary basis then reps, augmented with identity.
  size_t span_cols = out.b_dim + out.h_dim;
  out.class_span = std::make_shared<RowSpan>(M->R, out.cdim + span_cols);
  size_t colidx = 0;
  auto add_col = [&](const Vec& col) {
    Vec row(out.cdim + span_cols, 0);
    std::copy(col.begin(), col.end(), row.begin());
    row[out.cdim + colidx] = 1;
    out.class_span->insert(std::move(row));
    ++colidx;
  };
  for (auto& bgen : bgens) add_col(bgen);
  for (auto& rep : out.reps) add_col(rep.v);
  out.bound_solver = std::make_shared<CoboundarySolver>(G, M, n - 1);
  return out;
}

Vec CohomologyBasis::class_of(const Cochain& z) const {
  if (z.v.size() != cdim || z.degree != n) throw DomainError("class_of: shape mismatch");
  size_t span_cols = b_dim + h_dim;
  Vec probe(cdim + span_cols, 0);
  std::copy(z.v.begin(), z.v.end(), probe.begin());
  Vec res = class_span->reduce(std::move(probe));
  for (size_t t = 0; t < cdim; ++t)
    if (res[t] != 0) throw DomainError("class_of: input is not a cocycle");
  Vec coords(h_dim);
  for (size_t t = 0; t < h_dim; ++t)
    coords[t] = mod_reduce(-res[cdim + b_dim + t], M->R.m);
  return coords;
}

bool CohomologyBasis::is_coboundary(const Cochain& z) const {
  return vec_is_zero(class_of(z));
}

std::optional<Cochain> CohomologyBasis::bound(const Cochain& z) const {
  return bound_solver->solve(z);
}

Cochain CohomologyBasis::rep_combination(const Vec& coords) const {
  Cochain c = Cochain::zero(G, M, n);
  for (size_t t = 0; t < coords.size(); ++t)
    c = c.add(reps[t].scale(coords[t]));
  return c;
}

Cochain restrict_cochain(const Cochain& c, const SubgroupView& H) {
  if (H.parent != c.G) throw DomainError("restriction: subgroup of a different group");
  ModulePtr subM;
  if (c.M->is_trivial_action()) {
    subM = std::make_shared<GModule>(GModule::trivial(H.sub, c.M->R, c.M->rank));
  } else {
    GModule m;
    m.G = H.sub;
    m.R = c.M->R;
    m.rank = c.M->rank;
    for (int e : H.elements) m.action.push_back(c.M->action[e]);
    subM = std::make_shared<GModule>(std::move(m));
  }
  Cochain r = Cochain::zero(H.sub, subM, c.degree);
  const int hn = H.sub->n, rk = c.M->rank;
  switch (c.degree) {
    case 0:
      r.v = c.v;
      break;
    case 1:
      for (int a = 0; a < hn; ++a)
        for (int i = 0; i < rk; ++i) r.v[r.idx(a) + i] = c.v[c.idx(H.elements[a]) + i];
      break;
    case 2:
      for (int a = 0; a < hn; ++a)
        for (int b = 0; b < hn; ++b)
          for (int i = 0; i < rk; ++i)
            r.v[r.idx(a, b) + i] = c.v[c.idx(H.elements[a], H.elements[b]) + i];
      break;
    default:
      throw DomainError("restriction degree must be <= 2");
  }
  return r;
}

Cochain corestrict_cochain(const Cochain& c, const SubgroupView& H) {
  if (c.G != H.sub) throw DomainError("corestriction: cochain must live on the subgroup");
  if (!c.M->is_trivial_action())
    throw DomainError("corestriction implemented for trivial-action modules");
  const auto& G = *H.parent;
  auto T = right_transversal(H);
  ModulePtr bigM = std::make_shared<GModule>(GModule::trivial(H.parent, c.M->R, c.M->rank));
  Cochain r = Cochain::zero(H.parent, bigM, c.degree);
  const int rk = c.M->rank;
  const int64_t m = c.M->R.m;
  // h-part of rep.g relative to the transversal: rep.g = h . rep', h in H.
  auto hpart = [&](int rep, int g, int* next_rep) {
    int x = G.mul(rep, g);
    *next_rep = T.reps[T.coset_of[x]];
    int h = G.mul(x, G.invof(*next_rep));
    int hs = H.to_sub[h];
    if (hs < 0) throw DomainError("transversal decomposition escaped the subgroup");
    return hs;
  };
  switch (c.degree) {
    case 1:
      for (int g = 0; g < G.n; ++g)
        for (int rep : T.reps) {
          int nxt;
          int h = hpart(rep, g, &nxt);
          for (int i = 0; i < rk; ++i)
            r.v[r.idx(g) + i] = mod_reduce(r.v[r.idx(g) + i] + c.v[c.idx(h) + i], m);
        }
      break;
    case 2:
      for (int g1 = 0; g1 < G.n; ++g1)
        for (int g2 = 0; g2 < G.n; ++g2)
          for (int rep : T.reps) {
            int rep2;
            int h1 = hpart(rep, g1, &rep2);
            int rep3;
            int h2 = hpart(rep2, g2, &rep3);
            size_t out = r.idx(g1, g2);
            for (int i = 0; i < rk; ++i)
              r.v[out + i] = mod_reduce(r.v[out + i] + c.v[c.idx(h1, h2) + i], m);
          }
      break;
    default:
      throw DomainError("corestriction degree must be 1 or 2");
  }
  return r;
}

Cochain inflate_cochain(const Cochain& c, const QuotientView& Q) {
  if (c.G != Q.quot) throw DomainError("inflation: cochain must live on the quotient");
  ModulePtr bigM;
  if (c.M->is_trivial_action()) {
    bigM = std::make_shared<GModule>(GModule::trivial(Q.parent, c.M->R, c.M->rank));
  } else {
    GModule m;
    m.G = Q.parent;
    m.R = c.M->R;
    m.rank = c.M->rank;
    for (int g = 0; g < Q.parent->n; ++g) m.action.push_back(c.M->action[Q.proj[g]]);
    bigM = std::make_shared<GModule>(std::move(m));
  }
  Cochain r = Cochain::zero(Q.parent, bigM, c.degree);
  const int gn = Q.parent->n, rk = c.M->rank;
  switch (c.degree) {
    case 0:
      r.v = c.v;
      break;
    case 1:
      for (int g = 0; g < gn; ++g)
        for (int i = 0; i < rk; ++i) r.v[r.idx(g) + i] = c.v[c.idx(Q.proj[g]) + i];
      break;
    case 2:
      for (int g = 0; g < gn; ++g)
        for (int h = 0; h < gn; ++h)
          for (int i = 0; i < rk; ++i)
            r.v[r.idx(g, h) + i] = c.v[c.idx(Q.proj[g], Q.proj[h]) + i];
      break;
    default:
      throw DomainError("inflation degree must be <= 2");
  }
  return r;
}

}  // namespace mk
