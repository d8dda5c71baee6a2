#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "masseykit/json_io.hpp"
#include "masseykit/kummer.hpp"

namespace py = pybind11;

namespace {

struct PyGroup {
  mk::GroupPtr g;
};

mk::Cochain char_cochain(const PyGroup& G, int64_t p, const std::vector<int64_t>& values,
                         const mk::ModulePtr& M) {
  if (values.size() != G.g->gens.size())
    throw mk::DomainError("expected one value per group generator");
  std::map<int, int> gv;
  for (size_t i = 0; i < values.size(); ++i)
    gv[G.g->gens[i]] = (int)mk::mod_reduce(values[i], p);
  return mk::character_cochain(mk::CyclicCharacter::from_generator_values(G.g, (int)p, gv), M);
}

std::string massey_json(const PyGroup& G, int64_t p, const std::vector<int64_t>& c1,
                        const std::vector<int64_t>& c2, const std::vector<int64_t>& c3) {
  mk::MasseyContext ctx = mk::make_massey_context(G.g, p);
  mk::MasseyReport rep = mk::triple_massey(ctx, char_cochain(G, p, c1, ctx.M),
                                           char_cochain(G, p, c2, ctx.M),
                                           char_cochain(G, p, c3, ctx.M));
  return mk::massey_report_to_json(rep).dump();
}

std::string lift_json(const PyGroup& G, int64_t p, const std::vector<int64_t>& c1,
                      const std::vector<int64_t>& c2, const std::vector<int64_t>& c3) {
  mk::MasseyContext ctx = mk::make_massey_context(G.g, p);
  mk::StripLiftReport rep =
      mk::strip_lift_search(ctx, char_cochain(G, p, c1, ctx.M), char_cochain(G, p, c2, ctx.M),
                            char_cochain(G, p, c3, ctx.M));
  mk::Json j;
  j["exists"] = rep.lifts;
  j["any-extension"] = rep.any_extension;
  j["extensions-tried"] = (int64_t)rep.extensions_tried;
  if (rep.witness) j["witness"] = mk::unipotent_hom_to_json(*rep.witness);
  return j.dump();
}

std::vector<int64_t> cup_class(const PyGroup& G, int64_t p, const std::vector<int64_t>& c1,
                               const std::vector<int64_t>& c2) {
  mk::ModulePtr M = mk::trivial_module(G.g, p);
  mk::CohomologyBasis H2 = mk::cohomology(G.g, M, 2);
  return H2.class_of(mk::cup(char_cochain(G, p, c1, M), char_cochain(G, p, c2, M)));
}

std::string decompose_json(const std::string& word, int64_t p) {
  mk::FreeWord w = mk::parse_word(word);
  mk::CanonicalDecomposition d = mk::canonical_decompose(w, p);
  mk::Json j = mk::decomposition_to_json(d);
  j["level"] = mk::filtration_level(w, p);
  j["recomposed"] = mk::recompose(d).str();
  return j.dump();
}

std::string obstruct_json(const std::vector<std::string>& relators, int64_t p) {
  mk::ProPPresentation P;
  P.p = p;
  for (const std::string& r : relators) {
    mk::FreeWord w = mk::parse_word(r);
    P.g = std::max(P.g, w.g);
    P.relators.push_back(std::move(w));
  }
  for (mk::FreeWord& w : P.relators) w.g = P.g;
  return mk::obstruction_report_to_json(mk::obstruction_check(P)).dump();
}

std::string kummer_json(int64_t p, int k, uint64_t seed) {
  mk::SyntheticKummerDatum d = mk::synth_datum(p, k, seed);
  mk::NormalizeReport norm = mk::normalize_coboundary(d);
  mk::BicyclicResolution R = mk::build_resolution(d.B);
  mk::BicyclicH2 H = mk::explicit_h2(R, d.M);
  mk::Json j;
  j["alpha"] = mk::vec_to_json(d.alpha);
  j["gamma"] = mk::vec_to_json(d.gamma);
  j["common-norm"] = mk::vec_to_json(d.b);
  j["triple"] = mk::Json{{"A", mk::vec_to_json(norm.abc.A)},
                         {"B", mk::vec_to_json(norm.abc.B)},
                         {"C", mk::vec_to_json(norm.abc.C)}};
  j["witness"] = mk::Json{{"C1", mk::vec_to_json(norm.C1)}, {"C2", mk::vec_to_json(norm.C2)}};
  j["is-cocycle"] = H.is_cocycle(norm.abc.triple());
  j["is-coboundary"] = H.is_coboundary(norm.abc.triple());
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact finite shadows of mod-p cohomology: Massey products, explicit resolutions, "
            "unipotent lifts and filtration obstructions";
  m.attr("__version__") = "0.1.0";

  py::register_exception<mk::DomainError>(m, "DomainError");
  py::register_exception<mk::ResourceError>(m, "ResourceError");

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("order", [](const PyGroup& s) { return s.g->n; })
      .def_property_readonly("abelian", [](const PyGroup& s) { return s.g->is_abelian(); })
      .def_property_readonly("exponent", [](const PyGroup& s) { return s.g->exponent(); })
      .def_property_readonly("generators", [](const PyGroup& s) { return s.g->gens; })
      .def_property_readonly("identity", [](const PyGroup& s) { return s.g->id; })
      .def("mul", [](const PyGroup& s, int a, int b) {
        if (a < 0 || a >= s.g->n || b < 0 || b >= s.g->n)
          throw mk::DomainError("element index out of range");
        return s.g->mul(a, b);
      })
      .def("order_of", [](const PyGroup& s, int a) {
        if (a < 0 || a >= s.g->n) throw mk::DomainError("element index out of range");
        return s.g->order_of(a);
      })
      .def("to_json", [](const PyGroup& s) { return mk::group_to_json(s.g).dump(); })
      .def("__repr__", [](const PyGroup& s) {
        return "<Group order " + std::to_string(s.g->n) + ">";
      });

  m.def("cyclic", [](int n) { return PyGroup{mk::cyclic_group(n)}; }, py::arg("n"),
        "cyclic group Z/n");
  m.def("abelian", [](const std::vector<int>& factors) { return PyGroup{mk::abelian_group(factors)}; },
        py::arg("factors"), "direct product of cyclic groups");
  m.def("unitriangular", [](int dim, int64_t p) { return PyGroup{mk::unitriangular_group(dim, p)}; },
        py::arg("dim"), py::arg("p"), "upper unitriangular matrices over Z/p, dim 3 or 4");
  m.def("u4bar", [](int64_t p) { return PyGroup{mk::u4bar_group(p)}; }, py::arg("p"),
        "dim-4 unitriangular group with the corner entry collapsed");
  m.def("group_from_json", [](const std::string& text) {
    return PyGroup{mk::group_from_json(mk::parse_json_text(text))};
  }, py::arg("document"), "build a group from a JSON document string");

  m.def("cohomology_dim", [](const PyGroup& G, int64_t p, int n) {
    return (int64_t)mk::cohomology(G.g, mk::trivial_module(G.g, p), n).h_dim;
  }, py::arg("group"), py::arg("p"), py::arg("n"), "dim H^n(G, Z/p), n in {1, 2}");
  m.def("cup_class", &cup_class, py::arg("group"), py::arg("p"), py::arg("chi1"), py::arg("chi2"),
        "H^2 class coordinates of the cup product of two characters given by generator values");
  m.def("massey_json", &massey_json, py::arg("group"), py::arg("p"), py::arg("chi1"),
        py::arg("chi2"), py::arg("chi3"),
        "triple Massey product report as a JSON string; characters given by generator values");
  m.def("lift_json", &lift_json, py::arg("group"), py::arg("p"), py::arg("chi1"), py::arg("chi2"),
        py::arg("chi3"), "unipotent lift search report as a JSON string");
  m.def("filtration_level", [](const std::string& word, int64_t p) {
    return mk::filtration_level(mk::parse_word(word), p);
  }, py::arg("word"), py::arg("p"), "filtration level of a free word; 4 means at least 4");
  m.def("decompose_json", &decompose_json, py::arg("word"), py::arg("p"),
        "canonical basic-product decomposition as a JSON string");
  m.def("obstruct_json", &obstruct_json, py::arg("relators"), py::arg("p"),
        "presentation obstruction report as a JSON string");
  m.def("kummer_json", &kummer_json, py::arg("p"), py::arg("k"), py::arg("seed"),
        "sampled norm datum, normalized triple and coboundary witness as a JSON string");
}
