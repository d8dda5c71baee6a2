#include "masseykit/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mk {

int FiniteGroup::pow_elem(int a, int64_t e) const {
  if (e < 0) return pow_elem(invof(a), -e);
  int r = id;
  while (e-- > 0) r = mul(r, a);
  return r;
}

int FiniteGroup::order_of(int a) const {
  int r = a, o = 1;
  while (r != id) { r = mul(r, a); ++o; }
  return o;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (int a = 0; a < n; ++a) e = (int)std::lcm(e, order_of(a));
  return e;
}

std::vector<int> FiniteGroup::cyclic_subgroup(int g) const {
  std::vector<int> r{id};
  int x = g;
  while (x != id) { r.push_back(x); x = mul(x, g); }
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<int> FiniteGroup::subgroup_closure(std::vector<int> elems) const {
  std::set<int> seen{id};
  for (int e : elems) seen.insert(e);
  std::vector<int> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : seen)
        for (int x : {mul(a, g), mul(g, a), invof(a)})
          if (!seen.count(x)) { seen.insert(x); next.push_back(x); }
    frontier = std::move(next);
  }
  return std::vector<int>(seen.begin(), seen.end());
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(id)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(mul(a, b))) return false;
  for (int a : s)
    if (!s.count(invof(a))) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  for (int g = 0; g < n; ++g)
    for (int h : s)
      if (!s.count(mul(mul(g, h), invof(g)))) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> z;
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b) central = mul(a, b) == mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

void FiniteGroup::validate() const {
  if (n < 1 || n > kMaxGroupOrder)
    throw DomainError("group order out of range [1," + std::to_string(kMaxGroupOrder) + "]");
  if ((int)table.size() != n * n) throw DomainError("group table size mismatch");
  for (int x : table)
    if (x < 0 || x >= n) throw DomainError("group table entry out of range");
  for (int a = 0; a < n; ++a)
    if (mul(id, a) != a || mul(a, id) != a) throw DomainError("group identity law fails");
  for (int a = 0; a < n; ++a)
    if (mul(a, inv[a]) != id || mul(inv[a], a) != id) throw DomainError("group inverse law fails");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw DomainError("group associativity fails");
  // Latin-square property (left/right translations bijective).
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) seen[mul(a, b)] = 1;
    for (int b = 0; b < n; ++b)
      if (!seen[b]) throw DomainError("group table is not a Latin square");
  }
  std::vector<int> cl = subgroup_closure(gens);
  if ((int)cl.size() != n) throw DomainError("declared generators do not generate the group");
}

namespace {

GroupPtr finish(FiniteGroup g) {
  if (g.names.empty()) {
    g.names.resize(g.n);
    for (int i = 0; i < g.n; ++i) g.names[i] = "g" + std::to_string(i);
  }
  g.validate();
  return std::make_shared<FiniteGroup>(std::move(g));
}

void fill_inverses(FiniteGroup& g) {
  g.inv.assign(g.n, -1);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.table[a * g.n + b] == g.id) { g.inv[a] = b; break; }
  for (int a = 0; a < g.n; ++a)
    if (g.inv[a] < 0) throw DomainError("group element without inverse");
}

// Generic BFS closure over an arbitrary element type with multiplication.
template <class Elem, class Mul>
GroupPtr closure_group(std::vector<Elem> gens, const Elem& one, Mul mul_fn,
                       std::vector<std::string> (*namer)(const std::vector<Elem>&),
                       const std::string& label) {
  std::map<Elem, int> index;
  std::vector<Elem> elems;
  auto intern = [&](const Elem& e) {
    auto it = index.find(e);
    if (it != index.end()) return it->second;
    if ((int)elems.size() >= kMaxGroupOrder)
      throw DomainError("generated group exceeds order " + std::to_string(kMaxGroupOrder));
    index[e] = (int)elems.size();
    elems.push_back(e);
    return (int)elems.size() - 1;
  };
  intern(one);
  std::vector<int> gen_idx;
  for (auto& g : gens) gen_idx.push_back(intern(g));
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Elem prod = mul_fn(elems[i], gens[gi]);
      intern(prod);
    }
  FiniteGroup g;
  g.n = (int)elems.size();
  g.id = 0;
  g.gens = gen_idx;
  g.label = label;
  g.table.resize((size_t)g.n * g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      auto it = index.find(mul_fn(elems[a], elems[b]));
      if (it == index.end()) throw DomainError("generated set is not closed");
      g.table[a * g.n + b] = it->second;
    }
  fill_inverses(g);
  if (namer) g.names = namer(elems);
  return finish(std::move(g));
}

std::vector<std::string> perm_names(const std::vector<std::vector<int>>& elems) {
  std::vector<std::string> r;
  for (auto& p : elems) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    r.push_back(s + "]");
  }
  return r;
}

std::vector<std::string> vec_names(const std::vector<Vec>& elems) {
  std::vector<std::string> r;
  for (auto& v : elems) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    r.push_back(s);
  }
  return r;
}

}  // namespace

GroupPtr group_from_table(const std::vector<std::vector<int>>& table, std::vector<int> gens) {
  FiniteGroup g;
  g.n = (int)table.size();
  if (g.n < 1 || g.n > kMaxGroupOrder) throw DomainError("group order out of range");
  g.table.reserve((size_t)g.n * g.n);
  for (auto& row : table) {
    if ((int)row.size() != g.n) throw DomainError("group table is not square");
    for (int x : row) g.table.push_back(x);
  }
  g.id = -1;
  for (int e = 0; e < g.n; ++e) {
    bool ok = true;
    for (int a = 0; a < g.n && ok; ++a) ok = g.table[e * g.n + a] == a && g.table[a * g.n + e] == a;
    if (ok) { g.id = e; break; }
  }
  if (g.id < 0) throw DomainError("group table has no identity");
  fill_inverses(g);
  if (gens.empty()) {
    gens.resize(g.n);
    std::iota(gens.begin(), gens.end(), 0);
  }
  g.gens = std::move(gens);
  g.label = "table-group(" + std::to_string(g.n) + ")";
  return finish(std::move(g));
}

GroupPtr group_from_permutations(int degree, const std::vector<std::vector<int>>& gens) {
  if (degree < 1) throw DomainError("permutation degree must be positive");
  std::vector<int> one(degree);
  std::iota(one.begin(), one.end(), 0);
  for (auto& p : gens) {
    if ((int)p.size() != degree) throw DomainError("permutation length != degree");
    std::vector<char> seen(degree, 0);
    for (int x : p) {
      if (x < 0 || x >= degree || seen[x]) throw DomainError("not a permutation");
      seen[x] = 1;
    }
  }
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  return closure_group<std::vector<int>>(gens, one, compose, perm_names,
                                         "perm-group(deg " + std::to_string(degree) + ")");
}

GroupPtr group_from_matrices(int dim, int64_t p, const std::vector<Mat>& gens) {
  ModRing R(p, 1);
  std::vector<Vec> flat;
  for (auto& M : gens) {
    if ((int)M.rows != dim || (int)M.cols != dim || M.R.m != R.m)
      throw DomainError("matrix generator shape/ring mismatch");
    flat.push_back(M.a);
  }
  Vec one = Mat::identity(R, dim).a;
  auto mulm = [dim, R](const Vec& a, const Vec& b) {
    Vec r((size_t)dim * dim, 0);
    for (int i = 0; i < dim; ++i)
      for (int t = 0; t < dim; ++t) {
        int64_t v = a[i * dim + t];
        if (!v) continue;
        for (int j = 0; j < dim; ++j)
          r[i * dim + j] = (r[i * dim + j] + v * b[t * dim + j]) % R.m;
      }
    return r;
  };
  return closure_group<Vec>(flat, one, mulm, vec_names,
                            "matrix-group(dim " + std::to_string(dim) + ", p " + std::to_string(p) + ")");
}

GroupPtr cyclic_group(int n) {
  if (n == 1) return group_from_table({{0}}, {0});
  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = (i + 1) % n;
  auto g = group_from_permutations(n, {shift});
  const_cast<FiniteGroup&>(*g).label = "Z/" + std::to_string(n);
  return g;
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B) {
  FiniteGroup g;
  int na = A->n, nb = B->n;
  if (na * nb > kMaxGroupOrder) throw DomainError("product order exceeds bound");
  g.n = na * nb;
  g.id = A->id * nb + B->id;
  g.table.resize((size_t)g.n * g.n);
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          g.table[(a1 * nb + b1) * g.n + (a2 * nb + b2)] = A->mul(a1, a2) * nb + B->mul(b1, b2);
  fill_inverses(g);
  for (int x : A->gens) g.gens.push_back(x * nb + B->id);
  for (int y : B->gens) g.gens.push_back(A->id * nb + y);
  g.names.resize(g.n);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) g.names[a * nb + b] = "(" + A->names[a] + "," + B->names[b] + ")";
  g.label = A->label + " x " + B->label;
  return finish(std::move(g));
}

GroupPtr abelian_group(const std::vector<int>& factors) {
  if (factors.empty()) return cyclic_group(1);
  GroupPtr g = cyclic_group(factors[0]);
  for (size_t i = 1; i < factors.size(); ++i) g = direct_product(g, cyclic_group(factors[i]));
  return g;
}

GroupPtr unitriangular_group(int dim, int64_t p) {
  if (dim != 3 && dim != 4) throw DomainError("unitriangular_group: dim must be 3 or 4");
  ModRing R(p, 1);
  std::vector<Mat> gens;
  for (int i = 0; i + 1 < dim; ++i) {
    Mat e = Mat::identity(R, dim);
    e.at(i, i + 1) = 1;
    gens.push_back(e);
  }
  auto g = group_from_matrices(dim, p, gens);
  int64_t expect = ipow(p, dim == 3 ? 3 : 6);
  if (g->n != expect) throw DomainError("unitriangular closure has unexpected order");
  const_cast<FiniteGroup&>(*g).label = "U" + std::to_string(dim) + "(F" + std::to_string(p) + ")";
  return g;
}

GroupPtr u4bar_group(int64_t p) {
  // Coordinates (a12, a13, a23, a24, a34); the (1,4) entry is collapsed, and
  // the product law below is the 4x4 unitriangular product on the surviving
  // coordinates (independent of the (1,4) slot).
  ModRing R(p, 1);
  auto mulc = [R](const Vec& u, const Vec& v) {
    return Vec{R.reduce(u[0] + v[0]),
               R.reduce(u[1] + u[0] * v[2] + v[1]),
               R.reduce(u[2] + v[2]),
               R.reduce(u[3] + u[2] * v[4] + v[3]),
               R.reduce(u[4] + v[4])};
  };
  std::vector<Vec> gens = {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 1}};
  auto g = closure_group<Vec>(gens, Vec(5, 0), mulc, vec_names,
                              "U4bar(F" + std::to_string(p) + ")");
  if (g->n != ipow(p, 5)) throw DomainError("u4bar closure has unexpected order");
  return g;
}

std::vector<GroupPtr> abelian_groups_up_to(int bound) {
  // Isomorphism types: per prime power in the order, one partition of the
  // exponent; assemble invariant-style factor lists.
  std::vector<GroupPtr> out;
  std::vector<std::vector<std::vector<int>>> partitions(9);  // partitions of 0..8
  std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> parts =
      [&](int left, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& sink) {
        if (left == 0) { sink.push_back(cur); return; }
        for (int c = std::min(left, maxpart); c >= 1; --c) {
          cur.push_back(c);
          parts(left - c, c, cur, sink);
          cur.pop_back();
        }
      };
  for (int e = 0; e <= 8; ++e) {
    std::vector<int> cur;
    parts(e, e == 0 ? 1 : e, cur, partitions[e]);
    if (e == 0) partitions[0] = {{}};
  }
  for (int order = 1; order <= bound; ++order) {
    // Factor the order.
    std::vector<std::pair<int, int>> pf;
    int t = order;
    for (int q = 2; q * q <= t; ++q)
      if (t % q == 0) {
        int e = 0;
        while (t % q == 0) { t /= q; ++e; }
        pf.push_back({q, e});
      }
    if (t > 1) pf.push_back({t, 1});
    // Cartesian product of partitions per prime.
    std::vector<std::vector<int>> factor_lists{{}};
    for (auto& [q, e] : pf) {
      std::vector<std::vector<int>> next;
      for (auto& base : factor_lists)
        for (auto& part : partitions[e]) {
          auto f = base;
          for (int x : part) f.push_back((int)ipow(q, x));
          next.push_back(std::move(f));
        }
      factor_lists = std::move(next);
    }
    for (auto& f : factor_lists) {
      std::sort(f.begin(), f.end());
      out.push_back(abelian_group(f));
      std::string lbl;
      for (int x : f) lbl += (lbl.empty() ? "Z/" : " x Z/") + std::to_string(x);
      const_cast<FiniteGroup&>(*out.back()).label = lbl.empty() ? "Z/1" : lbl;
    }
  }
  return out;
}

SubgroupView make_subgroup(const GroupPtr& G, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!G->is_subgroup(elements)) throw DomainError("element set is not a subgroup");
  SubgroupView v;
  v.parent = G;
  v.elements = elements;
  v.to_sub.assign(G->n, -1);
  int h = (int)elements.size();
  for (int i = 0; i < h; ++i) v.to_sub[elements[i]] = i;
  std::vector<std::vector<int>> table(h, std::vector<int>(h));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) table[i][j] = v.to_sub[G->mul(elements[i], elements[j])];
  v.sub = group_from_table(table);
  auto& sg = const_cast<FiniteGroup&>(*v.sub);
  sg.label = "subgroup(" + std::to_string(h) + ") of " + G->label;
  for (int i = 0; i < h; ++i) sg.names[i] = G->names[elements[i]];
  return v;
}

QuotientView make_quotient(const GroupPtr& G, const std::vector<int>& normal_elems) {
  std::vector<int> N = normal_elems;
  std::sort(N.begin(), N.end());
  if (!G->is_subgroup(N)) throw DomainError("quotient kernel is not a subgroup");
  if (!G->is_normal(N)) throw DomainError("quotient kernel is not normal");
  QuotientView qv;
  qv.parent = G;
  qv.proj.assign(G->n, -1);
  std::vector<int> reps;
  for (int g = 0; g < G->n; ++g) {
    if (qv.proj[g] >= 0) continue;
    int idx = (int)reps.size();
    reps.push_back(g);
    for (int h : N) qv.proj[G->mul(g, h)] = idx;
  }
  int q = (int)reps.size();
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i][j] = qv.proj[G->mul(reps[i], reps[j])];
  qv.quot = group_from_table(table);
  auto& qg = const_cast<FiniteGroup&>(*qv.quot);
  qg.label = G->label + " / N(" + std::to_string(N.size()) + ")";
  for (int i = 0; i < q; ++i) qg.names[i] = G->names[reps[i]] + "N";
  return qv;
}

RightTransversal right_transversal(const SubgroupView& H) {
  const FiniteGroup& G = *H.parent;
  RightTransversal t;
  t.coset_of.assign(G.n, -1);
  t.reps.push_back(G.id);
  for (int h : H.elements) t.coset_of[h] = 0;
  for (int g = 0; g < G.n; ++g) {
    if (t.coset_of[g] >= 0) continue;
    int idx = (int)t.reps.size();
    t.reps.push_back(g);
    for (int h : H.elements) t.coset_of[G.mul(h, g)] = idx;
  }
  return t;
}

}  // namespace mk
