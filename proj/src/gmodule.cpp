#include "masseykit/gmodule.hpp"

namespace mk {

GModule GModule::trivial(const GroupPtr& G, ModRing R, int rank) {
  GModule m;
  m.G = G;
  m.R = R;
  m.rank = rank;
  m.action.assign(G->n, Mat::identity(R, rank));
  return m;
}

GModule GModule::regular(const GroupPtr& G, ModRing R) {
  GModule m;
  m.G = G;
  m.R = R;
  m.rank = G->n;
  m.action.reserve(G->n);
  for (int g = 0; g < G->n; ++g) {
    Mat A(R, G->n, G->n);
    for (int h = 0; h < G->n; ++h) A.at(G->mul(g, h), h) = 1;  // g . e_h = e_{gh}
    m.action.push_back(std::move(A));
  }
  return m;
}

GModule GModule::from_generator_action(const GroupPtr& G, ModRing R,
                                       const std::map<int, Mat>& gen_action) {
  GModule m;
  m.G = G;
  m.R = R;
  m.rank = gen_action.empty() ? 0 : (int)gen_action.begin()->second.rows;
  for (auto& [g, A] : gen_action)
    if ((int)A.rows != m.rank || (int)A.cols != m.rank || A.R.m != R.m)
      throw DomainError("generator action shape/ring mismatch");
  std::vector<char> known(G->n, 0);
  m.action.assign(G->n, Mat::identity(R, m.rank));
  known[G->id] = 1;
  std::vector<int> frontier{G->id};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int g : frontier)
      for (auto& [s, A] : gen_action) {
        int gs = G->mul(g, s);
        if (!known[gs]) {
          m.action[gs] = m.action[g].mul(A);  // rho(g s) = rho(g) rho(s)
          known[gs] = 1;
          next.push_back(gs);
        }
      }
    frontier = std::move(next);
  }
  for (char k : known)
    if (!k) throw DomainError("action generators do not generate the group");
  m.check();
  return m;
}

Vec GModule::act(const AlgebraElem& x, const Vec& v) const {
  Vec r(rank, 0);
  for (int g = 0; g < G->n; ++g) {
    if (x.c[g] == 0) continue;
    Vec gv = action[g].apply(v);
    for (int i = 0; i < rank; ++i) r[i] = mod_reduce(r[i] + x.c[g] * gv[i], R.m);
  }
  return r;
}

Mat GModule::algebra_matrix(const AlgebraElem& x) const {
  Mat A(R, rank, rank);
  for (int g = 0; g < G->n; ++g) {
    if (x.c[g] == 0) continue;
    int64_t c = R.reduce(x.c[g]);
    for (size_t t = 0; t < A.a.size(); ++t) A.a[t] = (A.a[t] + c * action[g].a[t]) % R.m;
  }
  return A;
}

bool GModule::is_trivial_action() const {
  Mat I = Mat::identity(R, rank);
  for (auto& A : action)
    if (!(A == I)) return false;
  return true;
}

void GModule::check() const {
  for (int g = 0; g < G->n; ++g)
    for (int h = 0; h < G->n; ++h)
      if (!(action[G->mul(g, h)] == action[g].mul(action[h])))
        throw DomainError("module action is not a homomorphism");
}

ModulePtr trivial_module(const GroupPtr& G, int64_t p, int k, int rank) {
  return std::make_shared<GModule>(GModule::trivial(G, ModRing(p, k), rank));
}

ModulePtr regular_module(const GroupPtr& G, int64_t p, int k) {
  return std::make_shared<GModule>(GModule::regular(G, ModRing(p, k)));
}

std::vector<Vec> fixed_points(const GModule& M) {
  // Stack (rho(s) - I) over the generators.
  const auto& gens = M.G->gens;
  Mat stacked(M.R, gens.size() * M.rank, M.rank);
  Mat I = Mat::identity(M.R, M.rank);
  for (size_t t = 0; t < gens.size(); ++t) {
    Mat d = M.action[gens[t]].sub(I);
    for (int i = 0; i < M.rank; ++i)
      for (int j = 0; j < M.rank; ++j) stacked.at(t * M.rank + i, j) = d.at(i, j);
  }
  return kernel_generators(stacked);
}

TateCohomology tate_cohomology(const GModule& M, int g, int degree) {
  if (degree != 0 && degree != -1) throw DomainError("tate_cohomology: degree must be 0 or -1");
  AlgebraElem diff = difference_elem(M.G, g, M.R.m);
  AlgebraElem norm = norm_elem(M.G, g, M.R.m);
  Mat top = M.algebra_matrix(degree == 0 ? diff : norm);
  Mat bottom = M.algebra_matrix(degree == 0 ? norm : diff);
  TateCohomology t;
  t.image = std::make_shared<RowSpan>(M.R, M.rank);
  for (int j = 0; j < M.rank; ++j) t.image->insert(bottom.col(j));
  for (auto& k : kernel_generators(top)) {
    Vec red = t.image->reduce(k);
    if (!vec_is_zero(red)) {
      t.basis.push_back(k);
      t.image->insert(red);
    }
  }
  // Rebuild the image span without the adjoined kernel generators so that
  // reduce() is reduction modulo the image only.
  auto image_only = std::make_shared<RowSpan>(M.R, M.rank);
  for (int j = 0; j < M.rank; ++j) image_only->insert(bottom.col(j));
  t.image = image_only;
  return t;
}

std::optional<Vec> hilbert90_solve(const GModule& M, int g, const Vec& target) {
  AlgebraElem norm = norm_elem(M.G, g, M.R.m);
  if (!vec_is_zero(M.act(norm, target))) return std::nullopt;  // precondition
  Mat D = M.algebra_matrix(difference_elem(M.G, g, M.R.m));
  auto sol = solve_affine(D, target);
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace mk
