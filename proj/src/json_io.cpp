#include "masseykit/json_io.hpp"

#include <fstream>

namespace mk {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw DomainError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw DomainError(std::string("missing field '") + key + "'");
  return *it;
}

int64_t int_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_number_integer()) throw DomainError(std::string("field '") + key + "' must be an integer");
  return f.get<int64_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_array()) throw DomainError(std::string("field '") + key + "' must be an array");
  return f;
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array of integers");
  std::vector<int> r;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw DomainError(std::string(what) + " must be an array of integers");
    r.push_back(e.get<int>());
  }
  return r;
}

Mat mat_from_json(const ModRing& R, const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw DomainError(std::string(what) + " must be a nonempty array of rows");
  size_t cols = 0;
  std::vector<Vec> rows;
  for (const Json& rj : j) {
    if (!rj.is_array()) throw DomainError(std::string(what) + " rows must be arrays");
    Vec row;
    for (const Json& e : rj) {
      if (!e.is_number_integer()) throw DomainError(std::string(what) + " entries must be integers");
      row.push_back(mod_reduce(e.get<int64_t>(), R.m));
    }
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0)
      throw DomainError(std::string(what) + " rows must be nonempty and of equal length");
    rows.push_back(std::move(row));
  }
  Mat m(R, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t c = 0; c < cols; ++c) m.at(i, c) = rows[i][c];
  return m;
}

// m = p^k with p prime; throws otherwise.
std::pair<int64_t, int> prime_power(int64_t m) {
  if (m < 2) throw DomainError("modulus must be at least 2");
  int64_t p = 2;
  while (p * p <= m && m % p != 0) ++p;
  if (m % p != 0) p = m;
  int k = 0;
  int64_t rest = m;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw DomainError("modulus " + std::to_string(m) + " is not a prime power");
  return {p, k};
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("in '" + path + "': " + e.what());
  }
}

GroupPtr group_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw DomainError("field 'kind' must be a string");
  std::string k = kind.get<std::string>();
  if (k == "permutation") {
    int degree = (int)int_field(j, "degree");
    std::vector<std::vector<int>> gens;
    for (const Json& g : array_field(j, "generators")) gens.push_back(int_list(g, "permutation"));
    if (gens.empty()) throw DomainError("permutation group needs at least one generator");
    return group_from_permutations(degree, gens);
  }
  if (k == "table") {
    std::vector<std::vector<int>> table;
    for (const Json& row : array_field(j, "table")) table.push_back(int_list(row, "table row"));
    for (const auto& row : table)
      for (int x : row)
        if (x < 0 || x >= (int)table.size())
          throw DomainError("table entry " + std::to_string(x) + " is out of range");
    std::vector<int> gens;
    if (j.contains("generators")) gens = int_list(j.at("generators"), "field 'generators'");
    for (int x : gens)
      if (x < 0 || x >= (int)table.size())
        throw DomainError("generator index " + std::to_string(x) + " is out of range");
    return group_from_table(table, gens);
  }
  if (k == "unitriangular") {
    int dim = (int)int_field(j, "dim");
    int64_t p = int_field(j, "p");
    if (!is_prime(p)) throw DomainError("field 'p' must be prime");
    ModRing R(p, 1);
    std::vector<Mat> gens;
    for (const Json& g : array_field(j, "generators"))
      gens.push_back(mat_from_json(R, g, "matrix generator"));
    if (gens.empty()) throw DomainError("matrix group needs at least one generator");
    return group_from_matrices(dim, p, gens);
  }
  throw DomainError("unknown group kind '" + k + "'");
}

Json group_to_json(const GroupPtr& G) {
  Json j;
  j["kind"] = "table";
  Json table = Json::array();
  for (int a = 0; a < G->n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < G->n; ++b) row.push_back(G->mul(a, b));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  j["generators"] = G->gens;
  return j;
}

ModulePtr module_from_json(const GroupPtr& G, const Json& j) {
  int rank = (int)int_field(j, "rank");
  if (rank < 1) throw DomainError("field 'rank' must be positive");
  auto [p, k] = prime_power(int_field(j, "modulus"));
  ModRing R(p, k);
  if (!j.contains("action") || j.at("action").empty())
    return std::make_shared<GModule>(GModule::trivial(G, R, rank));
  const Json& act = j.at("action");
  if (!act.is_object()) throw DomainError("field 'action' must be an object");
  std::map<int, Mat> gen_action;
  for (auto it = act.begin(); it != act.end(); ++it) {
    int g;
    try {
      size_t used = 0;
      g = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw DomainError("action key '" + it.key() + "' is not an element index");
    }
    if (g < 0 || g >= G->n) throw DomainError("action key " + std::to_string(g) + " is out of range");
    Mat m = mat_from_json(R, it.value(), "action matrix");
    if ((int)m.rows != rank || (int)m.cols != rank)
      throw DomainError("action matrix for element " + std::to_string(g) + " is not rank x rank");
    gen_action.emplace(g, std::move(m));
  }
  return std::make_shared<GModule>(GModule::from_generator_action(G, R, gen_action));
}

Json module_to_json(const GModule& M) {
  Json j;
  j["rank"] = M.rank;
  j["modulus"] = M.R.m;
  Json act = Json::object();
  if (!M.is_trivial_action())
    for (int g : M.G->gens) act[std::to_string(g)] = mat_to_json(M.action[g]);
  j["action"] = std::move(act);
  return j;
}

CyclicCharacter character_from_json(const GroupPtr& G, const Json& j) {
  int64_t p = int_field(j, "p");
  if (p < 2) throw DomainError("field 'p' must be at least 2");
  std::vector<int> vals = int_list(array_field(j, "values-on-generators"), "field 'values-on-generators'");
  if (vals.size() != G->gens.size())
    throw DomainError("expected " + std::to_string(G->gens.size()) +
                      " generator values, got " + std::to_string(vals.size()));
  std::map<int, int> gen_values;
  for (size_t i = 0; i < vals.size(); ++i)
    gen_values[G->gens[i]] = (int)mod_reduce(vals[i], p);
  return CyclicCharacter::from_generator_values(G, (int)p, gen_values);
}

Json character_to_json(const CyclicCharacter& chi) {
  Json j;
  Json vals = Json::array();
  for (int g : chi.G->gens) vals.push_back(chi.val[g]);
  j["values-on-generators"] = std::move(vals);
  j["p"] = chi.n;
  return j;
}

Cochain character_cochain(const CyclicCharacter& chi, const ModulePtr& M) {
  if (M->rank != 1 || !M->is_trivial_action() || M->R.m != chi.n)
    throw DomainError("character cochains need a trivial rank-1 module matching the denominator");
  Vec v(chi.val.begin(), chi.val.end());
  return Cochain::scalar1(chi.G, M, v);
}

ProPPresentation presentation_from_json(const Json& j) {
  ProPPresentation P;
  P.g = (int)int_field(j, "generators");
  P.p = int_field(j, "p");
  if (P.g < 1) throw DomainError("field 'generators' must be positive");
  const Json& rel = array_field(j, "relators");
  size_t n = 0;
  for (const Json& w : rel) {
    ++n;
    if (!w.is_string()) throw DomainError("relators must be strings");
    FreeWord r = parse_word(w.get<std::string>());
    if (r.g > P.g)
      throw DomainError("relator " + std::to_string(n) + " uses generator x" + std::to_string(r.g) +
                        " beyond the declared count " + std::to_string(P.g));
    r.g = P.g;
    P.relators.push_back(std::move(r));
  }
  return P;
}

Json presentation_to_json(const ProPPresentation& P) {
  Json j;
  j["generators"] = P.g;
  j["p"] = P.p;
  Json rel = Json::array();
  for (const FreeWord& w : P.relators) rel.push_back(w.str());
  j["relators"] = std::move(rel);
  return j;
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int64_t x : v) a.push_back(x);
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected an array of integers");
  Vec r;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw DomainError("expected an array of integers");
    r.push_back(e.get<int64_t>());
  }
  return r;
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json defining_system_to_json(const DefiningSystem& D) {
  Json j;
  j["n"] = D.n;
  j["complete"] = D.complete;
  Json cells = Json::array();
  for (const auto& [ij, c] : D.cells) {
    Json cell;
    cell["i"] = ij.first;
    cell["j"] = ij.second;
    cell["values"] = vec_to_json(c.v);
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  return j;
}

Json massey_report_to_json(const MasseyReport& r) {
  Json j;
  j["defined"] = r.defined;
  if (r.defined) {
    j["value"] = vec_to_json(r.value);
    Json ind = Json::array();
    for (const Vec& v : r.indeterminacy) ind.push_back(vec_to_json(v));
    j["indeterminacy"] = std::move(ind);
  }
  j["vanishes"] = r.vanishes;
  if (r.witness) j["witness"] = defining_system_to_json(*r.witness);
  return j;
}

Json unipotent_hom_to_json(const UnipotentHom& h) {
  Json j;
  j["dim"] = h.model.dim;
  j["reduced"] = h.model.reduced;
  j["p"] = h.model.p;
  Json images = Json::object();
  for (int g : h.source->gens)
    images[std::to_string(g)] = h.model.reduced ? vec_to_json(h.images[g])
                                                : Json(mat_to_json(h.model.matrix_of(h.images[g])));
  j["images-on-generators"] = std::move(images);
  return j;
}

Json decomposition_to_json(const CanonicalDecomposition& d) {
  Json j;
  j["p"] = d.p;
  j["generators"] = d.g;
  j["a"] = vec_to_json(d.a);
  Json b = Json::array();
  for (const auto& [ij, e] : d.b) {
    if (e == 0) continue;
    Json t;
    t["i"] = ij.first;
    t["j"] = ij.second;
    t["exponent"] = e;
    b.push_back(std::move(t));
  }
  j["b"] = std::move(b);
  Json c = Json::array();
  for (const auto& [ijk, e] : d.c) {
    if (e == 0) continue;
    Json t;
    t["i"] = ijk[0];
    t["j"] = ijk[1];
    t["k"] = ijk[2];
    t["exponent"] = e;
    c.push_back(std::move(t));
  }
  j["c"] = std::move(c);
  return j;
}

Json obstruction_report_to_json(const ObstructionReport& r) {
  Json j;
  Json hits = Json::array();
  for (const Obstruction& h : r.hits) {
    Json t;
    t["pattern"] = h.pattern;
    t["relator"] = h.relator;
    t["i"] = h.i;
    t["j"] = h.j;
    t["k"] = h.k;
    t["exponent"] = h.c_value;
    t["note"] = h.note;
    hits.push_back(std::move(t));
  }
  j["hits"] = std::move(hits);
  Json near = Json::array();
  for (const ObstructionNearMiss& m : r.near_misses) {
    Json t;
    t["pattern"] = m.pattern;
    t["relator"] = m.relator;
    t["i"] = m.i;
    t["j"] = m.j;
    t["k"] = m.k;
    t["blocker"] = m.blocker;
    near.push_back(std::move(t));
  }
  j["near-misses"] = std::move(near);
  if (!r.hits.empty()) j["obstruction"] = r.hits.front().pattern;
  j["verdict"] = r.not_realizable ? "not realizable" : "no obstruction found";
  return j;
}

}  // namespace mk
