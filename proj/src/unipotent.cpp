#include "masseykit/unipotent.hpp"

#include <queue>
#include <string>

namespace mk {

namespace {

constexpr int64_t kStripSearchBound = 6561;

void require_scalar_field(const Cochain& c, const char* what) {
  if (c.degree != 1 || c.M->rank != 1 || !c.M->R.is_field() || !is_prime(c.M->R.p))
    throw DomainError(std::string(what) + " must be a scalar 1-cochain over a prime field");
}

// All F_p-combinations of the degree one representatives.
std::vector<Cochain> span_homs(const MasseyContext& ctx) {
  std::vector<Cochain> out{Cochain::zero(ctx.G, ctx.M, 1)};
  int64_t p = ctx.M->R.m;
  for (const auto& rep : ctx.h1.reps) {
    std::vector<Cochain> next;
    next.reserve(out.size() * (size_t)p);
    for (const auto& c : out)
      for (int64_t v = 0; v < p; ++v) next.push_back(c.add(rep.scale(v)));
    out = std::move(next);
  }
  return out;
}

UnipotentHom assemble_reduced(const GroupPtr& G, int64_t p, const Cochain& c1, const Cochain& c2,
                              const Cochain& c3, const Cochain& a13, const Cochain& a24) {
  UnipotentHom h;
  h.source = G;
  h.model = unipotent_model(4, p, true);
  h.images.resize(G->n);
  for (int g = 0; g < G->n; ++g)
    h.images[g] = {c1.s1(g), mod_reduce(-a13.s1(g), p), c2.s1(g), mod_reduce(-a24.s1(g), p),
                   c3.s1(g)};
  return h;
}

}  // namespace

size_t UnipotentModel::tuple_size() const { return dim == 3 ? 3 : (reduced ? 5 : 6); }

int64_t UnipotentModel::order() const { return ipow(p, (int64_t)tuple_size()); }

int UnipotentModel::slot(int i, int j) const {
  if (dim == 3) {
    if (i == 1 && j == 2) return 0;
    if (i == 1 && j == 3) return 1;
    if (i == 2 && j == 3) return 2;
  } else if (!reduced) {
    if (i == 1 && j == 2) return 0;
    if (i == 1 && j == 3) return 1;
    if (i == 1 && j == 4) return 2;
    if (i == 2 && j == 3) return 3;
    if (i == 2 && j == 4) return 4;
    if (i == 3 && j == 4) return 5;
  } else {
    if (i == 1 && j == 2) return 0;
    if (i == 1 && j == 3) return 1;
    if (i == 2 && j == 3) return 2;
    if (i == 2 && j == 4) return 3;
    if (i == 3 && j == 4) return 4;
  }
  throw DomainError("model has no slot for entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
}

Vec UnipotentModel::identity_tuple() const { return Vec(tuple_size(), 0); }

Vec UnipotentModel::mul(const Vec& a, const Vec& b) const {
  if (a.size() != tuple_size() || b.size() != tuple_size())
    throw DomainError("tuple size mismatch in unipotent product");
  auto r = [&](int64_t x) { return mod_reduce(x, p); };
  if (dim == 3)
    return {r(a[0] + b[0]), r(a[1] + b[1] + a[0] * b[2]), r(a[2] + b[2])};
  if (!reduced)
    return {r(a[0] + b[0]),
            r(a[1] + b[1] + a[0] * b[3]),
            r(a[2] + b[2] + a[0] * b[4] + a[1] * b[5]),
            r(a[3] + b[3]),
            r(a[4] + b[4] + a[3] * b[5]),
            r(a[5] + b[5])};
  return {r(a[0] + b[0]), r(a[1] + b[1] + a[0] * b[2]), r(a[2] + b[2]),
          r(a[3] + b[3] + a[2] * b[4]), r(a[4] + b[4])};
}

Vec UnipotentModel::inverse(const Vec& a) const {
  if (a.size() != tuple_size()) throw DomainError("tuple size mismatch in unipotent inverse");
  auto r = [&](int64_t x) { return mod_reduce(x, p); };
  if (dim == 3) return {r(-a[0]), r(-a[1] + a[0] * a[2]), r(-a[2])};
  if (!reduced)
    return {r(-a[0]),
            r(-a[1] + a[0] * a[3]),
            r(-a[2] + a[0] * a[4] + a[1] * a[5] - a[0] * a[3] * a[5]),
            r(-a[3]),
            r(-a[4] + a[3] * a[5]),
            r(-a[5])};
  return {r(-a[0]), r(-a[1] + a[0] * a[2]), r(-a[2]), r(-a[3] + a[2] * a[4]), r(-a[4])};
}

Mat UnipotentModel::matrix_of(const Vec& a) const {
  if (reduced) throw DomainError("reduced model tuples do not form full matrices");
  if (a.size() != tuple_size()) throw DomainError("tuple size mismatch");
  Mat m = Mat::identity(ModRing(p, 1), dim);
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) m.at(i - 1, j - 1) = a[slot(i, j)];
  return m;
}

UnipotentModel unipotent_model(int dim, int64_t p, bool reduced) {
  if (dim != 3 && dim != 4) throw DomainError("unipotent model dim must be 3 or 4");
  if (reduced && dim != 4) throw DomainError("only the dim 4 model has a reduced variant");
  if (!is_prime(p)) throw DomainError("unipotent model modulus must be prime");
  UnipotentModel m;
  m.dim = dim;
  m.reduced = reduced;
  m.p = p;
  return m;
}

UnipotentGroupModel materialize(const UnipotentModel& m) {
  UnipotentGroupModel out;
  out.model = m;
  if (m.dim == 3)
    out.group = unitriangular_group(3, m.p);
  else if (!m.reduced)
    out.group = unitriangular_group(4, m.p);
  else
    out.group = u4bar_group(m.p);
  const auto& G = out.group;

  std::vector<Vec> gen_tuples;
  for (int k = 0; k + 1 < m.dim; ++k) {
    Vec t = m.identity_tuple();
    t[m.slot(k + 1, k + 2)] = 1;
    gen_tuples.push_back(std::move(t));
  }
  if (gen_tuples.size() != G->gens.size())
    throw DomainError("generator count mismatch in the unipotent bridge");

  out.coords.assign(G->n, {});
  std::vector<char> seen(G->n, 0);
  out.coords[G->id] = m.identity_tuple();
  seen[G->id] = 1;
  std::queue<int> q;
  q.push(G->id);
  while (!q.empty()) {
    int g = q.front();
    q.pop();
    for (size_t k = 0; k < gen_tuples.size(); ++k) {
      int h = G->mul(g, G->gens[k]);
      if (!seen[h]) {
        seen[h] = 1;
        out.coords[h] = m.mul(out.coords[g], gen_tuples[k]);
        q.push(h);
      }
    }
  }
  for (int g = 0; g < G->n; ++g) {
    if (!seen[g]) throw DomainError("unipotent bridge did not reach every element");
    if (!out.index.emplace(out.coords[g], g).second)
      throw DomainError("unipotent bridge assigned a tuple twice");
  }
  for (int a = 0; a < G->n; ++a)
    for (int b = 0; b < G->n; ++b)
      if (m.mul(out.coords[a], out.coords[b]) != out.coords[G->mul(a, b)])
        throw DomainError("coordinate product law disagrees with the group table");
  return out;
}

int UnipotentGroupModel::elem_of(const Vec& tuple) const {
  if (tuple.size() != model.tuple_size()) throw DomainError("tuple size mismatch");
  Vec t = tuple;
  for (auto& x : t) x = mod_reduce(x, model.p);
  auto it = index.find(t);
  if (it == index.end()) throw DomainError("tuple is not an element of the model");
  return it->second;
}

Cochain UnipotentHom::entry(int i, int j) const {
  int s = model.slot(i, j);
  Vec vals(source->n);
  for (int g = 0; g < source->n; ++g) vals[g] = images[g][s];
  return Cochain::scalar1(source, trivial_module(source, model.p), vals);
}

bool UnipotentHom::is_hom() const {
  if ((int)images.size() != source->n) return false;
  for (const auto& t : images)
    if (t.size() != model.tuple_size()) return false;
  if (images[source->id] != model.identity_tuple()) return false;
  for (int g = 0; g < source->n; ++g)
    for (int h = 0; h < source->n; ++h)
      if (model.mul(images[g], images[h]) != images[source->mul(g, h)]) return false;
  return true;
}

void UnipotentHom::check() const {
  if (!is_hom()) throw DomainError("unipotent images are not multiplicative");
  for (int i = 1; i < model.dim; ++i)
    if (!entry(i, i + 1).is_hom())
      throw DomainError("adjacent entry is not a homomorphism");
}

UnipotentHom heisenberg_lift(const Cochain& chi_a, const Cochain& chi_b, const Cochain& phi) {
  require_scalar_field(chi_a, "chi_a");
  require_scalar_field(chi_b, "chi_b");
  require_scalar_field(phi, "phi");
  const auto& G = chi_a.G;
  int64_t p = chi_a.M->R.m;
  if (chi_b.G != G || phi.G != G || chi_b.M->R.m != p || phi.M->R.m != p)
    throw DomainError("heisenberg lift inputs live over different groups or moduli");
  if (!chi_a.is_hom() || !chi_b.is_hom())
    throw DomainError("heisenberg lift characters must be homomorphisms");
  if (!(coboundary(phi) == cup(chi_a, chi_b)))
    throw DomainError("phi does not bound chi_a cup chi_b");

  UnipotentHom h;
  h.source = G;
  h.model = unipotent_model(3, p);
  h.images.resize(G->n);
  for (int g = 0; g < G->n; ++g)
    h.images[g] = {chi_a.s1(g), mod_reduce(-phi.s1(g), p), chi_b.s1(g)};
  h.check();
  return h;
}

UnipotentHom reduced_hom(const DefiningSystem& D) {
  if (D.n != 3) throw DomainError("reduced hom needs a three fold defining system");
  const ModRing& R = D.M->R;
  if (D.M->rank != 1 || !R.is_field() || !is_prime(R.p))
    throw DomainError("reduced hom needs scalar prime field coefficients");
  UnipotentHom h = assemble_reduced(D.G, R.p, D.at(1, 2), D.at(2, 3), D.at(3, 4), D.at(1, 3),
                                    D.at(2, 4));
  h.check();
  return h;
}

Cochain pullback_extension_class(const UnipotentHom& rbar) {
  if (rbar.model.dim != 4 || !rbar.model.reduced)
    throw DomainError("extension pullback needs a reduced dim 4 hom");
  Cochain c = cup(rbar.entry(1, 2), rbar.entry(2, 4)).add(cup(rbar.entry(1, 3), rbar.entry(3, 4)));
  if (!is_cocycle(c)) throw DomainError("pullback of the section cocycle failed to be a cocycle");
  return c;
}

CentralExtension reduced_centre_extension(int64_t p) {
  UnipotentGroupModel Q = materialize(unipotent_model(4, p, true));
  CentralExtension ext;
  ext.Q = Q.group;
  ext.p = p;
  ext.cocycle = Cochain::zero(Q.group, trivial_module(Q.group, p), 2);
  int s12 = Q.model.slot(1, 2), s13 = Q.model.slot(1, 3);
  int s24 = Q.model.slot(2, 4), s34 = Q.model.slot(3, 4);
  for (int x = 0; x < Q.group->n; ++x)
    for (int y = 0; y < Q.group->n; ++y)
      ext.cocycle.v[ext.cocycle.idx(x, y)] =
          mod_reduce(Q.coords[x][s12] * Q.coords[y][s24] + Q.coords[x][s13] * Q.coords[y][s34], p);
  return ext;
}

WeakEmbeddingReport solve_weak_embedding(const GroupPtr& G, const std::vector<int>& phi,
                                         const CentralExtension& ext) {
  if (!is_prime(ext.p)) throw DomainError("extension kernel order must be prime");
  if (ext.cocycle.degree != 2 || ext.cocycle.G != ext.Q || ext.cocycle.M->rank != 1 ||
      ext.cocycle.M->R.m != ext.p)
    throw DomainError("extension cocycle must be a scalar 2-cochain on Q mod p");
  if (!is_cocycle(ext.cocycle)) throw DomainError("extension data is not a 2-cocycle");
  for (int q = 0; q < ext.Q->n; ++q)
    if (ext.cocycle.s2(ext.Q->id, q) != 0 || ext.cocycle.s2(q, ext.Q->id) != 0)
      throw DomainError("extension cocycle must be normalized");
  if ((int)phi.size() != G->n) throw DomainError("phi must list one image per element");
  for (int g = 0; g < G->n; ++g)
    if (phi[g] < 0 || phi[g] >= ext.Q->n) throw DomainError("phi image out of range");
  if (phi[G->id] != ext.Q->id) throw DomainError("phi must send identity to identity");
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h)
      if (ext.Q->mul(phi[g], phi[h]) != phi[G->mul(g, h)])
        throw DomainError("phi is not a homomorphism");

  auto M = trivial_module(G, ext.p);
  WeakEmbeddingReport rep;
  rep.obstruction = Cochain::zero(G, M, 2);
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h)
      rep.obstruction.v[rep.obstruction.idx(g, h)] = ext.cocycle.s2(phi[g], phi[h]);

  CoboundarySolver solver(G, M, 1);
  auto x = solver.solve(rep.obstruction.neg());
  rep.exists = x.has_value();
  if (rep.exists) {
    for (int g = 0; g < G->n; ++g)
      for (int h = 0; h < G->n; ++h)
        if (x->s1(G->mul(g, h)) !=
            mod_reduce(x->s1(g) + x->s1(h) + rep.obstruction.s2(g, h), ext.p))
          throw DomainError("embedding correction failed its pairing check");
    rep.section_fix = std::move(*x);
  }
  return rep;
}

namespace {

FullLiftReport lift_with(const UnipotentHom& rbar, const std::optional<Cochain>& x) {
  FullLiftReport rep;
  rep.obstruction = pullback_extension_class(rbar);
  if (!x) return rep;
  rep.exists = true;
  UnipotentHom full;
  full.source = rbar.source;
  full.model = unipotent_model(4, rbar.model.p);
  full.images.resize(rbar.source->n);
  for (int g = 0; g < rbar.source->n; ++g) {
    const Vec& r = rbar.images[g];
    full.images[g] = {r[0], r[1], x->s1(g), r[2], r[3], r[4]};
  }
  full.check();
  rep.lift = std::move(full);
  return rep;
}

}  // namespace

FullLiftReport lift_to_u4(const UnipotentHom& rbar) {
  Cochain obstruction = pullback_extension_class(rbar);
  CoboundarySolver solver(rbar.source, obstruction.M, 1);
  auto x = solver.solve(obstruction.neg());
  return lift_with(rbar, x);
}

FullLiftReport lift_to_u4(const UnipotentHom& rbar, const MasseyContext& ctx) {
  if (ctx.G != rbar.source || ctx.M->R.m != rbar.model.p)
    throw DomainError("context does not match the hom");
  Cochain obstruction = pullback_extension_class(rbar);
  return lift_with(rbar, ctx.h2.bound(obstruction.neg()));
}

std::vector<UnipotentHom> strip_extensions(const MasseyContext& ctx, const Cochain& c1,
                                           const Cochain& c2, const Cochain& c3) {
  for (const Cochain* c : {&c1, &c2, &c3})
    if (!ctx.is_hom(*c)) throw DomainError("strip entries must be scalar homomorphism cochains");
  int64_t p = ctx.M->R.m;
  int64_t space = ipow(p, 2 * (int64_t)ctx.h1.reps.size());
  if (space > kStripSearchBound)
    throw ResourceError("strip candidate space exceeds the enumeration bound");
  std::vector<UnipotentHom> out;
  auto b13 = ctx.h2.bound(cup(c1, c2));
  auto b24 = ctx.h2.bound(cup(c2, c3));
  if (!b13 || !b24) return out;
  auto homs = span_homs(ctx);
  out.reserve(homs.size() * homs.size());
  for (const auto& s13 : homs)
    for (const auto& s24 : homs)
      out.push_back(assemble_reduced(ctx.G, p, c1, c2, c3, b13->add(s13), b24->add(s24)));
  return out;
}

StripLiftReport strip_lift_search(const MasseyContext& ctx, const Cochain& c1, const Cochain& c2,
                                  const Cochain& c3) {
  for (const Cochain* c : {&c1, &c2, &c3})
    if (!ctx.is_hom(*c)) throw DomainError("strip entries must be scalar homomorphism cochains");
  int64_t p = ctx.M->R.m;
  int64_t space = ipow(p, 2 * (int64_t)ctx.h1.reps.size());
  if (space > kStripSearchBound)
    throw ResourceError("strip candidate space exceeds the enumeration bound");
  StripLiftReport rep;
  auto b13 = ctx.h2.bound(cup(c1, c2));
  auto b24 = ctx.h2.bound(cup(c2, c3));
  if (!b13 || !b24) return rep;
  rep.any_extension = true;
  auto homs = span_homs(ctx);
  for (const auto& s13 : homs) {
    Cochain a13 = b13->add(s13);
    Cochain e13 = a13.neg();
    Cochain left = cup(e13, c3);
    for (const auto& s24 : homs) {
      Cochain a24 = b24->add(s24);
      ++rep.extensions_tried;
      Cochain obstruction = cup(c1, a24.neg()).add(left);
      auto x = ctx.h2.bound(obstruction.neg());
      if (!x) continue;
      UnipotentHom rbar = assemble_reduced(ctx.G, p, c1, c2, c3, a13, a24);
      FullLiftReport full = lift_with(rbar, x);
      rep.lifts = true;
      rep.witness = std::move(full.lift);
      return rep;
    }
  }
  return rep;
}

}  // namespace mk
