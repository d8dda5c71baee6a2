// Command line front end: every subcommand prints one JSON report on standard
// output and a short human summary on standard error.  Exit codes: 0 success,
// 1 domain or input errors, 2 resource budget exceeded.

#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "masseykit/group_algebra.hpp"
#include "masseykit/json_io.hpp"
#include "masseykit/kummer.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using mk::Json;
using mk::Vec;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw mk::DomainError("cannot parse integer '" + s + "' in " + what);
  }
}

// Built-in groups: cyclic:N, abelian:N1xN2x..., u3:P, u4:P, u4bar:P.
mk::GroupPtr group_from_preset(const std::string& preset) {
  auto parts = split(preset, ':');
  if (parts.size() != 2) throw mk::DomainError("preset must look like kind:data, got '" + preset + "'");
  const std::string& kind = parts[0];
  if (kind == "cyclic") return mk::cyclic_group((int)parse_int(parts[1], "preset"));
  if (kind == "abelian") {
    std::vector<int> factors;
    for (const std::string& f : split(parts[1], 'x')) factors.push_back((int)parse_int(f, "preset"));
    return mk::abelian_group(factors);
  }
  if (kind == "u3") return mk::unitriangular_group(3, parse_int(parts[1], "preset"));
  if (kind == "u4") return mk::unitriangular_group(4, parse_int(parts[1], "preset"));
  if (kind == "u4bar") return mk::u4bar_group(parse_int(parts[1], "preset"));
  throw mk::DomainError("unknown preset kind '" + kind + "'");
}

struct Options {
  int64_t p = 0;
  uint64_t seed = 42;
  int budget = 0;  // 0 keeps the library defaults
  bool compact = false;

  std::string group_file, preset;
  std::string module_file;
  std::string chars;  // comma separated character tokens
  std::string strip;
  std::string nfold_file;
  std::string word;
  std::string presentation_file;
  std::vector<std::string> relators;
  int degree = 2;
  int gens = 0;
  int k = 1;
  int s_index = -1, t_index = -1;
};

mk::Budget make_budget(const Options& o) {
  mk::Budget b;
  if (o.budget > 0) {
    b.max_order_deg2 = o.budget;
    b.max_order_compare = o.budget;
  }
  return b;
}

mk::GroupPtr load_group(const Options& o) {
  if (!o.group_file.empty() && !o.preset.empty())
    throw mk::DomainError("give either --group or --preset, not both");
  mk::GroupPtr G;
  if (!o.group_file.empty())
    G = mk::group_from_json(mk::load_json_file(o.group_file));
  else if (!o.preset.empty())
    G = group_from_preset(o.preset);
  else
    throw mk::DomainError("a group is required: pass --group FILE or --preset KIND:DATA");
  if (o.budget > 0 && G->n > o.budget)
    throw mk::ResourceError("group order " + std::to_string(G->n) + " exceeds the budget " +
                            std::to_string(o.budget));
  return G;
}

// A character token is either a file path or inline colon separated values
// on the generators, for example 1:0:2.
mk::CyclicCharacter parse_char_token(const mk::GroupPtr& G, int64_t p, const std::string& token) {
  if (token.empty()) throw mk::DomainError("empty character token");
  Json doc;
  if (token.find_first_not_of("0123456789:-") == std::string::npos) {
    Json vals = Json::array();
    for (const std::string& v : split(token, ':')) vals.push_back(parse_int(v, "character token"));
    doc = Json{{"values-on-generators", vals}, {"p", p}};
  } else {
    doc = mk::load_json_file(token);
  }
  mk::CyclicCharacter chi = mk::character_from_json(G, doc);
  if (chi.n != p)
    throw mk::DomainError("character denominator " + std::to_string(chi.n) +
                          " does not match --p " + std::to_string(p));
  return chi;
}

std::vector<mk::Cochain> parse_chars(const mk::GroupPtr& G, const mk::ModulePtr& M, int64_t p,
                                     const std::string& list, size_t expect) {
  std::vector<mk::Cochain> out;
  for (const std::string& token : split(list, ','))
    out.push_back(mk::character_cochain(parse_char_token(G, p, token), M));
  if (out.size() != expect)
    throw mk::DomainError("expected " + std::to_string(expect) + " characters, got " +
                          std::to_string(out.size()));
  return out;
}

void require_prime(int64_t p) {
  if (!mk::is_prime(p)) throw mk::DomainError("--p must be prime, got " + std::to_string(p));
}

// Accumulates the named identity checks listed in every report.
struct Checks {
  Json list = Json::array();
  bool all_ok = true;

  void add(const std::string& name, bool ok) {
    list.push_back(Json{{"name", name}, {"ok", ok}});
    all_ok &= ok;
  }
};

struct Handler {
  std::string name;
  // Fills inputs (echo of the config), results and checks; appends human
  // summary lines.
  std::function<void(const Options&, Json& inputs, Json& results, Checks&,
                     std::vector<std::string>& summary)>
      body;
};

int run_handler(const Options& o, const Handler& h) {
  Json report;
  report["tool"] = "masseykit";
  report["version"] = kVersion;
  report["command"] = h.name;
  Json inputs = Json::object();
  Json results = Json::object();
  Checks checks;
  std::vector<std::string> summary;
  int code = 0;
  try {
    h.body(o, inputs, results, checks, summary);
    report["inputs"] = std::move(inputs);
    report["results"] = std::move(results);
    report["checks"] = std::move(checks.list);
    if (!checks.all_ok) {
      report["error"] = "an identity check failed";
      code = 1;
    }
  } catch (const mk::ResourceError& e) {
    report["inputs"] = std::move(inputs);
    report["error"] = e.what();
    code = 2;
  } catch (const mk::DomainError& e) {
    report["inputs"] = std::move(inputs);
    report["error"] = e.what();
    code = 1;
  }
  std::cout << (o.compact ? report.dump() : report.dump(2)) << "\n";
  for (const std::string& line : summary) std::cerr << h.name << ": " << line << "\n";
  if (report.contains("error")) std::cerr << h.name << ": error: " << report["error"].get<std::string>() << "\n";
  return code;
}

std::string vec_str(const Vec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + "]";
}

void echo_common(const Options& o, Json& inputs, bool with_p = true, bool with_seed = false) {
  if (with_p) inputs["p"] = o.p;
  if (with_seed) inputs["seed"] = o.seed;
  inputs["budget"] = o.budget;
  if (!o.group_file.empty()) inputs["group"] = o.group_file;
  if (!o.preset.empty()) inputs["preset"] = o.preset;
}

// ---- subcommand bodies ----

void cmd_group(const Options& o, Json& inputs, Json& results, Checks& checks,
               std::vector<std::string>& summary) {
  echo_common(o, inputs, false);
  mk::GroupPtr G = load_group(o);
  G->validate();
  checks.add("associativity, identity, inverses and generation re-validated", true);
  results["order"] = G->n;
  results["abelian"] = G->is_abelian();
  results["exponent"] = G->exponent();
  results["generators"] = G->gens;
  Json orders = Json::array();
  for (int g : G->gens) orders.push_back(G->order_of(g));
  results["generator-orders"] = std::move(orders);
  results["center-order"] = (int64_t)G->center().size();
  results["document"] = mk::group_to_json(G);
  summary.push_back("order " + std::to_string(G->n) + ", " +
                    (G->is_abelian() ? "abelian" : "nonabelian") + ", exponent " +
                    std::to_string(G->exponent()));
}

void cmd_cohom(const Options& o, Json& inputs, Json& results, Checks& checks,
               std::vector<std::string>& summary) {
  echo_common(o, inputs);
  inputs["n"] = o.degree;
  require_prime(o.p);
  if (o.degree != 1 && o.degree != 2) throw mk::DomainError("--n must be 1 or 2");
  mk::GroupPtr G = load_group(o);
  mk::ModulePtr M;
  if (!o.module_file.empty()) {
    inputs["module"] = o.module_file;
    M = mk::module_from_json(G, mk::load_json_file(o.module_file));
    if (M->R.p != o.p)
      throw mk::DomainError("module modulus is not a power of --p");
  } else {
    M = mk::trivial_module(G, o.p);
  }
  mk::CohomologyBasis H = mk::cohomology(G, M, o.degree, make_budget(o));
  results["h-dim"] = (int64_t)H.h_dim;
  results["cocycle-dim"] = (int64_t)H.z_dim;
  results["coboundary-dim"] = (int64_t)H.b_dim;
  bool reps_ok = true, coords_ok = true;
  for (size_t i = 0; i < H.reps.size(); ++i) {
    reps_ok &= mk::is_cocycle(H.reps[i]);
    Vec e(H.h_dim, 0);
    e[i] = 1;
    coords_ok &= H.class_of(H.reps[i]) == e;
  }
  checks.add("basis representatives are cocycles", reps_ok);
  checks.add("representatives are independent modulo coboundaries", coords_ok);
  summary.push_back("dim H^" + std::to_string(o.degree) + " = " + std::to_string(H.h_dim) +
                    " over Z/" + std::to_string(M->R.m) + " (|G| = " + std::to_string(G->n) + ")");
}

void cmd_cup(const Options& o, Json& inputs, Json& results, Checks& checks,
             std::vector<std::string>& summary) {
  echo_common(o, inputs);
  inputs["chars"] = o.chars;
  require_prime(o.p);
  mk::GroupPtr G = load_group(o);
  mk::ModulePtr M = mk::trivial_module(G, o.p);
  auto cs = parse_chars(G, M, o.p, o.chars, 2);
  mk::Cochain prod = mk::cup(cs[0], cs[1]);
  checks.add("cup of cocycles is a cocycle", mk::is_cocycle(prod));
  Vec pointwise(G->n);
  for (int g = 0; g < G->n; ++g) pointwise[g] = mk::mod_reduce(cs[0].s1(g) * cs[1].s1(g), o.p);
  mk::Cochain mixed = mk::Cochain::scalar1(G, M, pointwise);
  mk::Cochain anti = prod.add(mk::cup(cs[1], cs[0])).add(mk::coboundary(mixed));
  checks.add("graded anticommutativity witness vanishes", anti.is_zero());
  mk::CohomologyBasis H2 = mk::cohomology(G, M, 2, make_budget(o));
  Vec cls = H2.class_of(prod);
  results["class"] = mk::vec_to_json(cls);
  results["is-coboundary"] = H2.is_coboundary(prod);
  results["h2-dim"] = (int64_t)H2.h_dim;
  summary.push_back("class " + vec_str(cls) +
                    (H2.is_coboundary(prod) ? " (a coboundary)" : " (not a coboundary)"));
}

void cmd_massey(const Options& o, Json& inputs, Json& results, Checks& checks,
                std::vector<std::string>& summary) {
  echo_common(o, inputs);
  inputs["chars"] = o.chars;
  require_prime(o.p);
  mk::GroupPtr G = load_group(o);
  mk::MasseyContext ctx = mk::make_massey_context(G, o.p, make_budget(o));

  if (!o.nfold_file.empty()) {
    inputs["nfold"] = o.nfold_file;
    Json pat = mk::load_json_file(o.nfold_file);
    std::string pattern = pat.contains("pattern") ? pat["pattern"].get<std::string>() : "";
    int k = pat.contains("k") ? pat["k"].get<int>() : 0;
    mk::StagedPattern sp;
    if (pattern == "b-first")
      sp = mk::StagedPattern::b_first;
    else if (pattern == "a-b-a")
      sp = mk::StagedPattern::a_b_a;
    else
      throw mk::DomainError("pattern must be b-first or a-b-a");
    auto cs = parse_chars(G, ctx.M, o.p, o.chars, 2);  // chi_a, chi_b
    mk::StagedResult res = mk::staged_extension(ctx, cs[1], cs[0], k, sp);
    results["pattern"] = pattern;
    results["k"] = k;
    results["complete-system-found"] = res.system.has_value();
    if (res.system) {
      mk::SystemCheck sc = mk::validate_defining_system(*res.system, ctx);
      checks.add("complete system validates with zero corner class", mk::vec_is_zero(sc.value_class));
      results["system"] = mk::defining_system_to_json(*res.system);
      summary.push_back("nfold " + pattern + " k=" + std::to_string(k) + ": complete system found");
    } else {
      results["failed-stage"] = res.failed_stage;
      results["detail"] = res.detail;
      summary.push_back("nfold " + pattern + " k=" + std::to_string(k) + ": failed at stage " +
                        std::to_string(res.failed_stage) + " (" + res.detail + ")");
    }
    return;
  }

  auto cs = parse_chars(G, ctx.M, o.p, o.chars, 3);
  mk::MasseyReport rep = mk::triple_massey(ctx, cs[0], cs[1], cs[2]);
  Json rj = mk::massey_report_to_json(rep);
  for (auto it = rj.begin(); it != rj.end(); ++it) results[it.key()] = it.value();
  checks.add("defined means both consecutive cup products bound", true);
  if (rep.defined) {
    mk::Cochain val = ctx.h2.rep_combination(rep.value);
    checks.add("reported value class is a cocycle class", mk::is_cocycle(val));
  }
  if (rep.witness) {
    mk::SystemCheck sc = mk::validate_defining_system(*rep.witness, ctx);
    checks.add("vanishing witness validates with zero corner class", mk::vec_is_zero(sc.value_class));
  }
  if (!rep.defined)
    summary.push_back("product is not defined");
  else
    summary.push_back(std::string("defined, ") + (rep.vanishes ? "vanishes" : "does not vanish") +
                      "; value " + vec_str(rep.value) + ", indeterminacy dim " +
                      std::to_string(rep.indeterminacy.size()));
}

void cmd_lift(const Options& o, Json& inputs, Json& results, Checks& checks,
              std::vector<std::string>& summary) {
  echo_common(o, inputs);
  inputs["strip"] = o.strip;
  require_prime(o.p);
  mk::GroupPtr G = load_group(o);
  mk::MasseyContext ctx = mk::make_massey_context(G, o.p, make_budget(o));
  auto cs = parse_chars(G, ctx.M, o.p, o.strip, 3);
  mk::StripLiftReport rep = mk::strip_lift_search(ctx, cs[0], cs[1], cs[2]);
  results["exists"] = rep.lifts;
  results["any-extension"] = rep.any_extension;
  results["extensions-tried"] = (int64_t)rep.extensions_tried;
  if (rep.witness) {
    checks.add("witness is a homomorphism on all pairs", rep.witness->is_hom());
    bool strip_ok = true;
    for (int i = 1; i <= 3; ++i) strip_ok &= rep.witness->entry(i, i + 1) == cs[i - 1];
    checks.add("witness strip entries match the characters", strip_ok);
    results["witness"] = mk::unipotent_hom_to_json(*rep.witness);
  }
  mk::MasseyReport massey = mk::triple_massey(ctx, cs[0], cs[1], cs[2]);
  checks.add("lift existence agrees with triple product vanishing",
             rep.lifts == (massey.defined && massey.vanishes));
  summary.push_back(std::string(rep.lifts ? "lift exists" : "no lift") + " (" +
                    std::to_string(rep.extensions_tried) + " extensions tried)");
}

void cmd_bicyclic_h2(const Options& o, Json& inputs, Json& results, Checks& checks,
                     std::vector<std::string>& summary) {
  echo_common(o, inputs);
  inputs["k"] = o.k;
  require_prime(o.p);
  mk::GroupPtr G = load_group(o);
  int s = o.s_index >= 0 ? o.s_index : (G->gens.size() > 0 ? G->gens[0] : G->id);
  int t = o.t_index >= 0 ? o.t_index : (G->gens.size() > 1 ? G->gens[1] : G->id);
  inputs["s"] = s;
  inputs["t"] = t;
  mk::BicyclicGroup B = mk::make_bicyclic(G, s, t);
  mk::BicyclicResolution R = mk::build_resolution(B);
  checks.add("boundary maps compose to zero", true);  // certified during construction
  mk::ModulePtr M = mk::trivial_module(G, o.p, o.k);
  mk::BicyclicH2 H = mk::explicit_h2(R, M);
  results["z2-log-size"] = H.z2_log_size;
  results["b2-log-size"] = H.b2_log_size;
  results["h2-log-size"] = H.h2_log_size;
  results["h2-reps"] = (int64_t)H.h2_reps.size();
  bool reps_ok = true;
  for (const auto& rep : H.h2_reps) reps_ok &= H.is_cocycle(rep) && !H.is_coboundary(rep);
  checks.add("representatives satisfy the four membership conditions", reps_ok);
  if (o.k == 1) {
    mk::BarComparison cmp = mk::compare_with_bar(R, M, make_budget(o));
    mk::CohomologyBasis bar = mk::cohomology(G, M, 2, make_budget(o));
    checks.add("bar dimension matches the resolution", bar.h_dim == H.h2_reps.size());
    bool inverse_ok = true;
    for (const auto& rep : H.h2_reps)
      inverse_ok &= H.same_class(cmp.from_bar(cmp.to_bar(rep)), rep);
    for (const auto& rep : bar.reps)
      inverse_ok &= bar.class_of(cmp.to_bar(cmp.from_bar(rep))) == bar.class_of(rep);
    checks.add("chain maps induce mutually inverse isomorphisms", inverse_ok);
    results["bar-h2-dim"] = (int64_t)bar.h_dim;
  }
  summary.push_back("|H2| = " + std::to_string(o.p) + "^" + std::to_string(H.h2_reps.size()) +
                    " over Z/" + std::to_string(M->R.m));
}

void cmd_kummer_demo(const Options& o, Json& inputs, Json& results, Checks& checks,
                     std::vector<std::string>& summary) {
  echo_common(o, inputs, true, true);
  inputs["k"] = o.k;
  require_prime(o.p);
  mk::SyntheticKummerDatum d = mk::synth_datum(o.p, o.k, o.seed);
  const mk::GModule& M = *d.M;
  const mk::BicyclicGroup& B = d.B;
  auto [Ds, Ns] = mk::translation_operators(B.G, B.s);
  auto [Dt, Nt] = mk::translation_operators(B.G, B.t);

  results["alpha"] = mk::vec_to_json(d.alpha);
  results["gamma"] = mk::vec_to_json(d.gamma);
  results["common-norm"] = mk::vec_to_json(d.b);
  checks.add("alpha is fixed by t", mk::vec_is_zero(M.act(Dt, d.alpha)));
  checks.add("gamma is fixed by s", mk::vec_is_zero(M.act(Ds, d.gamma)));
  checks.add("s-norm of alpha is the common value", M.act(Ns, d.alpha) == d.b);
  checks.add("t-norm of gamma is the common value", M.act(Nt, d.gamma) == d.b);
  bool b_fixed = true;
  for (int g : B.G->gens) b_fixed &= M.act_elem(g, d.b) == d.b;
  checks.add("common value is fixed by the whole group", b_fixed);

  Vec A0 = d.A0(), C0 = d.C0();
  Vec lhs = M.act(Ds, A0);
  Vec rhs = mk::vec_sub(d.b, mk::vec_scale(o.p, d.alpha, M.R.m), M.R.m);
  checks.add("weighted orbit sum telescopes: D_s A0 = b - p alpha", lhs == rhs);

  mk::ABCTriple abc = mk::build_abc(d, Vec(M.rank, 0), Vec(M.rank, 0));
  results["triple"] = Json{{"A", mk::vec_to_json(abc.A)},
                           {"B", mk::vec_to_json(abc.B)},
                           {"C", mk::vec_to_json(abc.C)}};
  checks.add("first operator identity: D_s A = N_t B", M.act(Ds, abc.A) == M.act(Nt, abc.B));
  checks.add("second operator identity: D_t C = -N_s B",
             M.act(Dt, abc.C) == mk::vec_scale(M.R.m - 1, M.act(Ns, abc.B), M.R.m));
  checks.add("side fixedness: D_t A = 0 and D_s C = 0",
             mk::vec_is_zero(M.act(Dt, abc.A)) && mk::vec_is_zero(M.act(Ds, abc.C)));

  mk::BicyclicResolution R = mk::build_resolution(B);
  mk::BicyclicH2 H = mk::explicit_h2(R, d.M);
  checks.add("triple satisfies the degree-2 cocycle conditions", H.is_cocycle(abc.triple()));

  mk::NormalizeReport norm = mk::normalize_coboundary(d);
  results["normalized-scalars"] = Json{{"f_a", mk::vec_to_json(norm.f_a)},
                                       {"f_c", mk::vec_to_json(norm.f_c)}};
  results["difference-solution"] = mk::vec_to_json(norm.e);
  results["witness"] = Json{{"C1", mk::vec_to_json(norm.C1)}, {"C2", mk::vec_to_json(norm.C2)}};
  const mk::ABCTriple& n = norm.abc;
  checks.add("normalized first witness equation: N_t C1 = A", M.act(Nt, norm.C1) == n.A);
  checks.add("normalized middle witness equation: D_s C1 - D_t C2 = B",
             mk::vec_sub(M.act(Ds, norm.C1), M.act(Dt, norm.C2), M.R.m) == n.B);
  checks.add("normalized third witness equation: N_s C2 = C", M.act(Ns, norm.C2) == n.C);
  checks.add("normalized triple is a coboundary", H.is_coboundary(n.triple()));
  mk::EtaContext eta = mk::eta_context(R, d.M);
  checks.add("eta class of the normalized triple vanishes",
             mk::vec_is_zero(mk::eta_class(eta, H, n.triple())));
  summary.push_back("p=" + std::to_string(o.p) + " k=" + std::to_string(o.k) + " seed=" +
                    std::to_string(o.seed) + ": " + std::to_string(checks.list.size()) +
                    " identities verified");
}

void cmd_zass_decompose(const Options& o, Json& inputs, Json& results, Checks& checks,
                        std::vector<std::string>& summary) {
  inputs["p"] = o.p;
  inputs["word"] = o.word;
  inputs["budget"] = o.budget;
  mk::FreeWord w = mk::parse_word(o.word);
  int level = mk::filtration_level(w, o.p);
  results["level"] = level;
  mk::CanonicalDecomposition d = mk::canonical_decompose(w, o.p);
  results["decomposition"] = mk::decomposition_to_json(d);
  mk::FreeWord re = mk::recompose(d);
  results["recomposed"] = re.str();
  checks.add("recomposition matches in the truncated algebra",
             mk::magnus_embed(re, o.p) == mk::magnus_embed(w, o.p));
  summary.push_back("level " + std::to_string(level) + ", " +
                    std::to_string(results["decomposition"]["b"].size()) + " pair and " +
                    std::to_string(results["decomposition"]["c"].size()) + " triple exponents");
}

void cmd_zass_level(const Options& o, Json& inputs, Json& results, Checks&,
                    std::vector<std::string>& summary) {
  inputs["p"] = o.p;
  inputs["word"] = o.word;
  inputs["budget"] = o.budget;
  mk::FreeWord w = mk::parse_word(o.word);
  int level = mk::filtration_level(w, o.p);
  results["level"] = level;
  results["meaning"] = level >= 4 ? "at least 4" : "exact";
  summary.push_back("level " + std::string(level >= 4 ? ">= " : "") + std::to_string(level));
}

void cmd_zass_obstruct(const Options& o, Json& inputs, Json& results, Checks& checks,
                       std::vector<std::string>& summary) {
  inputs["p"] = o.p;
  inputs["budget"] = o.budget;
  mk::ProPPresentation P;
  if (!o.presentation_file.empty()) {
    if (!o.relators.empty())
      throw mk::DomainError("give either --presentation or --relator, not both");
    inputs["presentation"] = o.presentation_file;
    P = mk::presentation_from_json(mk::load_json_file(o.presentation_file));
    if (o.p != 0 && o.p != P.p)
      throw mk::DomainError("--p disagrees with the presentation file");
  } else {
    if (o.relators.empty())
      throw mk::DomainError("a presentation is required: pass --presentation FILE or --relator WORD");
    inputs["relators"] = o.relators;
    P.p = o.p;
    P.g = o.gens;
    for (const std::string& r : o.relators) {
      mk::FreeWord w = mk::parse_word(r);
      P.g = std::max(P.g, w.g);
      P.relators.push_back(std::move(w));
    }
    for (mk::FreeWord& w : P.relators) w.g = P.g;
  }
  mk::ObstructionReport rep = mk::obstruction_check(P);
  Json rj = mk::obstruction_report_to_json(rep);
  for (auto it = rj.begin(); it != rj.end(); ++it) results[it.key()] = it.value();
  Json decomps = Json::array();
  for (const auto& d : rep.decomps) decomps.push_back(mk::decomposition_to_json(d));
  results["decompositions"] = std::move(decomps);
  checks.add("all relators sit at filtration level at least 2", true);
  if (rep.not_realizable)
    summary.push_back("not realizable (" + rep.hits.front().pattern + " on relator " +
                      std::to_string(rep.hits.front().relator) + ")");
  else
    summary.push_back("no obstruction found" +
                      (rep.near_misses.empty()
                           ? std::string()
                           : " (" + std::to_string(rep.near_misses.size()) + " near misses)"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite shadows of mod-p cohomology: Massey products, explicit resolutions, "
               "unipotent lifts and filtration obstructions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options o;
  app.add_option("--p", o.p, "prime modulus");
  app.add_option("--seed", o.seed, "random seed (default 42)");
  app.add_option("--budget", o.budget, "resource budget: max group order for cohomology work");
  app.add_flag("--json", o.compact, "compact single-line JSON output");

  std::map<const CLI::App*, Handler> handlers;
  auto wire = [&](CLI::App* sub, const std::string& name, auto body) {
    sub->fallthrough();
    handlers[sub] = Handler{name, body};
    return sub;
  };
  auto add_group_opts = [&](CLI::App* sub) {
    sub->add_option("--group", o.group_file, "group document (JSON file)");
    sub->add_option("--preset", o.preset, "built-in group: cyclic:N, abelian:N1xN2, u3:P, u4:P, u4bar:P");
  };

  CLI::App* group = app.add_subcommand("group", "validate and describe a finite group");
  add_group_opts(group);
  wire(group, "group", cmd_group);

  CLI::App* cohom = app.add_subcommand("cohom", "cohomology dimensions over Z/p");
  add_group_opts(cohom);
  cohom->add_option("--n", o.degree, "degree, 1 or 2 (default 2)");
  cohom->add_option("--module", o.module_file, "module document (JSON file); default trivial Z/p");
  wire(cohom, "cohom", cmd_cohom);

  CLI::App* cup = app.add_subcommand("cup", "cup product of two characters");
  add_group_opts(cup);
  cup->add_option("--chars", o.chars, "two characters, comma separated (file or inline values)")
      ->required();
  wire(cup, "cup", cmd_cup);

  CLI::App* massey = app.add_subcommand("massey", "triple Massey product of characters");
  add_group_opts(massey);
  massey->add_option("--chars", o.chars, "three characters (two with --nfold), comma separated")
      ->required();
  massey->add_option("--nfold", o.nfold_file,
                     "staged pattern document {\"pattern\":\"b-first\"|\"a-b-a\",\"k\":K}");
  wire(massey, "massey", cmd_massey);

  CLI::App* lift = app.add_subcommand("lift", "unipotent lift search for a character strip");
  add_group_opts(lift);
  lift->add_option("--strip", o.strip, "three characters, comma separated")->required();
  wire(lift, "lift", cmd_lift);

  CLI::App* bic = app.add_subcommand("bicyclic", "explicit resolution for bicyclic groups");
  bic->require_subcommand(1);
  bic->fallthrough();
  CLI::App* bich2 = bic->add_subcommand("h2", "degree-2 cohomology from the explicit resolution");
  add_group_opts(bich2);
  bich2->add_option("--k", o.k, "coefficient modulus exponent: Z/p^k (default 1)");
  bich2->add_option("--s", o.s_index, "element index of the first commuting generator");
  bich2->add_option("--t", o.t_index, "element index of the second commuting generator");
  wire(bich2, "bicyclic h2", cmd_bicyclic_h2);

  CLI::App* kummer = app.add_subcommand("kummer", "synthetic norm-datum pipeline");
  kummer->require_subcommand(1);
  kummer->fallthrough();
  CLI::App* kdemo = kummer->add_subcommand("demo", "sample a datum and verify every identity");
  kdemo->add_option("--k", o.k, "module modulus exponent: Z/p^k (default 1)");
  wire(kdemo, "kummer demo", cmd_kummer_demo);

  CLI::App* zass = app.add_subcommand("zassenhaus", "filtration levels, decompositions, obstructions");
  zass->require_subcommand(1);
  zass->fallthrough();
  CLI::App* zdec = zass->add_subcommand("decompose", "canonical basic-product decomposition");
  zdec->add_option("--word", o.word, "word in the generators x1, x2, ...")->required();
  wire(zdec, "zassenhaus decompose", cmd_zass_decompose);
  CLI::App* zlev = zass->add_subcommand("level", "filtration level of a word");
  zlev->add_option("--word", o.word, "word in the generators x1, x2, ...")->required();
  wire(zlev, "zassenhaus level", cmd_zass_level);
  CLI::App* zobs = zass->add_subcommand("obstruct", "scan a presentation for exclusion patterns");
  zobs->add_option("--presentation", o.presentation_file, "presentation document (JSON file)");
  zobs->add_option("--relator", o.relators, "relator word (repeatable)")->allow_extra_args(false);
  zobs->add_option("--gens", o.gens, "number of generators (default: largest used)");
  wire(zobs, "zassenhaus obstruct", cmd_zass_obstruct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message to stderr
    return 1;
  }

  for (auto& [sub, handler] : handlers)
    if (sub->parsed()) return run_handler(o, handler);
  return 1;
}
