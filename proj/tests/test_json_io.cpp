#include "doctest.h"

#include <fstream>

#include "masseykit/json_io.hpp"

using namespace mk;

TEST_SUITE("json_io") {

TEST_CASE("group documents round trip through the table form") {
  for (auto& G : {cyclic_group(6), abelian_group({2, 4}), unitriangular_group(3, 2)}) {
    Json j = group_to_json(G);
    CHECK(j["kind"] == "table");
    GroupPtr H = group_from_json(j);
    REQUIRE(H->n == G->n);
    CHECK(H->id == G->id);
    CHECK(H->gens == G->gens);
    for (int a = 0; a < G->n; ++a)
      for (int b = 0; b < G->n; ++b) CHECK(H->mul(a, b) == G->mul(a, b));
  }

  Json bad = group_to_json(cyclic_group(4));
  bad["table"][1][2] = 9;
  CHECK_THROWS_AS(group_from_json(bad), DomainError);
  bad["table"][1][2] = 0;  // breaks associativity instead
  CHECK_THROWS_AS(group_from_json(bad), DomainError);
  Json badgen = group_to_json(cyclic_group(4));
  badgen["generators"] = {7};
  CHECK_THROWS_AS(group_from_json(badgen), DomainError);
  CHECK_THROWS_AS(group_from_json(Json{{"kind", "spline"}}), DomainError);
  CHECK_THROWS_AS(group_from_json(Json::array()), DomainError);
}

TEST_CASE("permutation documents build the expected closures") {
  Json j3 = {{"kind", "permutation"}, {"degree", 3}, {"generators", {{1, 2, 0}}}};
  GroupPtr C3 = group_from_json(j3);
  CHECK(C3->n == 3);
  CHECK(C3->order_of(C3->gens[0]) == 3);

  // Two commuting 3-cycles on disjoint points.
  Json j9 = {{"kind", "permutation"},
             {"degree", 6},
             {"generators", {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}}};
  GroupPtr E9 = group_from_json(j9);
  CHECK(E9->n == 9);
  CHECK(E9->is_abelian());
  CHECK(E9->exponent() == 3);

  Json notperm = j3;
  notperm["generators"] = {{0, 0, 1}};
  CHECK_THROWS_AS(group_from_json(notperm), DomainError);
  notperm["generators"] = {{0, 1, 3}};
  CHECK_THROWS_AS(group_from_json(notperm), DomainError);
  notperm["generators"] = {{0, 1}};
  CHECK_THROWS_AS(group_from_json(notperm), DomainError);
  notperm["generators"] = Json::array();
  CHECK_THROWS_AS(group_from_json(notperm), DomainError);
  Json nodeg = {{"kind", "permutation"}, {"generators", {{1, 0}}}};
  CHECK_THROWS_WITH_AS(group_from_json(nodeg), "missing field 'degree'", DomainError);
}

TEST_CASE("unitriangular documents generate the full group") {
  auto elem = [](int i, int j) {
    Json m = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    m[i - 1][j - 1] = 1;
    return m;
  };
  Json j = {{"kind", "unitriangular"},
            {"dim", 3},
            {"p", 3},
            {"generators", {elem(1, 2), elem(2, 3), elem(1, 3)}}};
  GroupPtr U = group_from_json(j);
  GroupPtr ref = unitriangular_group(3, 3);
  CHECK(U->n == 27);
  CHECK(U->n == ref->n);
  CHECK_FALSE(U->is_abelian());
  CHECK(U->exponent() == ref->exponent());
  CHECK(U->center().size() == ref->center().size());

  Json badp = j;
  badp["p"] = 4;
  CHECK_THROWS_WITH_AS(group_from_json(badp), "field 'p' must be prime", DomainError);
  Json badshape = j;
  badshape["generators"][0] = Json{{1, 0}, {0, 1}};
  CHECK_THROWS_AS(group_from_json(badshape), DomainError);
  Json ragged = j;
  ragged["generators"][0] = Json{{1, 0, 0}, {0, 1}, {0, 0, 1}};
  CHECK_THROWS_AS(group_from_json(ragged), DomainError);
}

TEST_CASE("module documents cover trivial and generator driven actions") {
  GroupPtr G = cyclic_group(2);
  ModulePtr T = module_from_json(G, {{"rank", 2}, {"modulus", 9}});
  CHECK(T->rank == 2);
  CHECK(T->R.m == 9);
  CHECK(T->is_trivial_action());

  Json swap_doc = {{"rank", 2}, {"modulus", 3}, {"action", {{"1", {{0, 1}, {1, 0}}}}}};
  ModulePtr S = module_from_json(G, swap_doc);
  CHECK_FALSE(S->is_trivial_action());
  CHECK(S->act_elem(1, Vec{1, 2}) == Vec{2, 1});
  Json round = module_to_json(*S);
  ModulePtr S2 = module_from_json(G, round);
  for (int g = 0; g < G->n; ++g) CHECK(S2->action[g].a == S->action[g].a);

  // An order-2 generator must not act with an order-3 matrix.
  Json nothom = swap_doc;
  nothom["action"]["1"] = {{1, 1}, {0, 1}};
  CHECK_THROWS_AS(module_from_json(G, nothom), DomainError);
  CHECK_THROWS_WITH_AS(module_from_json(G, Json{{"rank", 1}, {"modulus", 6}}),
                       "modulus 6 is not a prime power", DomainError);
  CHECK_THROWS_AS(module_from_json(G, Json{{"rank", 1}, {"modulus", 1}}), DomainError);
  CHECK_THROWS_AS(module_from_json(G, Json{{"rank", 0}, {"modulus", 3}}), DomainError);
  Json badkey = swap_doc;
  badkey["action"] = Json{{"x", {{1, 0}, {0, 1}}}};
  CHECK_THROWS_AS(module_from_json(G, badkey), DomainError);
  badkey["action"] = Json{{"5", {{1, 0}, {0, 1}}}};
  CHECK_THROWS_AS(module_from_json(G, badkey), DomainError);
  Json badmat = swap_doc;
  badmat["action"]["1"] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(module_from_json(G, badmat), DomainError);
}

TEST_CASE("character documents re-verify the extension on the table") {
  GroupPtr G = abelian_group({3, 3});
  Json doc = {{"values-on-generators", {1, 2}}, {"p", 3}};
  CyclicCharacter chi = character_from_json(G, doc);
  CHECK(chi.n == 3);
  CHECK(chi.val[G->gens[0]] == 1);
  CHECK(chi.val[G->gens[1]] == 2);
  for (int a = 0; a < G->n; ++a)
    for (int b = 0; b < G->n; ++b)
      CHECK((chi(a) + chi(b)) % 3 == chi(G->mul(a, b)));

  Json round = character_to_json(chi);
  CHECK(round["p"] == 3);
  CHECK(character_from_json(G, round).val == chi.val);

  ModulePtr M = trivial_module(G, 3);
  Cochain c = character_cochain(chi, M);
  CHECK(c.degree == 1);
  CHECK(c.is_hom());
  CHECK(c.s1(G->gens[1]) == 2);
  CHECK_THROWS_AS(character_cochain(chi, trivial_module(G, 5)), DomainError);
  CHECK_THROWS_AS(character_cochain(chi, trivial_module(G, 3, 1, 2)), DomainError);

  // An order-3 generator cannot map to 1 mod 2.
  CHECK_THROWS_AS(character_from_json(G, Json{{"values-on-generators", {1, 0}}, {"p", 2}}),
                  DomainError);
  CHECK_THROWS_AS(character_from_json(G, Json{{"values-on-generators", {1}}, {"p", 3}}),
                  DomainError);
  CHECK_THROWS_WITH_AS(character_from_json(G, Json{{"p", 3}}),
                       "missing field 'values-on-generators'", DomainError);
}

TEST_CASE("presentation documents parse through the word grammar") {
  Json doc = {{"generators", 2}, {"p", 5}, {"relators", {"[[x1,x2],x2]"}}};
  ProPPresentation P = presentation_from_json(doc);
  CHECK(P.g == 2);
  CHECK(P.p == 5);
  REQUIRE(P.relators.size() == 1);
  CHECK(filtration_level(P.relators[0], 5) == 3);
  CHECK(obstruction_check(P).not_realizable);

  Json round = presentation_to_json(P);
  ProPPresentation P2 = presentation_from_json(round);
  CHECK(P2.relators[0] == P.relators[0]);
  CHECK(magnus_embed(P2.relators[0], 5) == magnus_embed(P.relators[0], 5));

  Json overflow = {{"generators", 2}, {"p", 5}, {"relators", {"x3"}}};
  CHECK_THROWS_WITH_AS(presentation_from_json(overflow),
                       "relator 1 uses generator x3 beyond the declared count 2", DomainError);
  Json syntax = {{"generators", 2}, {"p", 5}, {"relators", {"[x1,x2"}}};
  try {
    presentation_from_json(syntax);
    FAIL("expected a syntax error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  CHECK_THROWS_AS(presentation_from_json(Json{{"generators", 0}, {"p", 5}, {"relators", Json::array()}}),
                  DomainError);
  CHECK_THROWS_AS(presentation_from_json(Json{{"generators", 2}, {"p", 5}, {"relators", {7}}}),
                  DomainError);
}

TEST_CASE("parse failures carry position info") {
  try {
    parse_json_text("{\"a\": ");
    FAIL("expected a parse error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }

  {
    std::ofstream out("json_io_broken.json");
    out << "{\"kind\": \"table\", }";
  }
  try {
    load_json_file("json_io_broken.json");
    FAIL("expected a parse error");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("json_io_broken.json") != std::string::npos);
    CHECK(msg.find("parse error") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(load_json_file("no_such_file.json"),
                       "cannot open file 'no_such_file.json'", DomainError);

  {
    std::ofstream out("json_io_group.json");
    out << group_to_json(cyclic_group(3)).dump();
  }
  CHECK(group_from_json(load_json_file("json_io_group.json"))->n == 3);
}

TEST_CASE("report fragments serialize the worked values") {
  GroupPtr G3 = cyclic_group(3);
  ModulePtr M3 = trivial_module(G3, 3);
  Cochain chi3 = character_cochain(CyclicCharacter::for_generator(G3, G3->gens[0]), M3);
  MasseyReport r3 = triple_massey(G3, 3, chi3, chi3, chi3);
  Json j3 = massey_report_to_json(r3);
  CHECK(j3["defined"] == true);
  CHECK(j3["vanishes"] == false);
  CHECK_FALSE(j3.contains("witness"));
  std::string dump = j3.dump();
  CHECK(dump.find("\"defined\":true") != std::string::npos);
  CHECK(dump.find("\"vanishes\":false") != std::string::npos);
  CHECK(dump == massey_report_to_json(triple_massey(G3, 3, chi3, chi3, chi3)).dump());

  GroupPtr G5 = cyclic_group(5);
  ModulePtr M5 = trivial_module(G5, 5);
  Cochain chi5 = character_cochain(CyclicCharacter::for_generator(G5, G5->gens[0]), M5);
  Json j5 = massey_report_to_json(triple_massey(G5, 5, chi5, chi5, chi5));
  CHECK(j5["vanishes"] == true);
  REQUIRE(j5.contains("witness"));
  CHECK(j5["witness"]["complete"] == true);
  CHECK(j5["witness"]["cells"].size() == 6);

  Json d = decomposition_to_json(canonical_decompose(parse_word("[[x1,x2],x2]"), 5));
  CHECK(d["b"].size() == 0);
  REQUIRE(d["c"].size() == 1);
  CHECK(d["c"][0]["i"] == 1);
  CHECK(d["c"][0]["j"] == 2);
  CHECK(d["c"][0]["k"] == 2);
  CHECK(d["c"][0]["exponent"] == 1);

  ProPPresentation P{2, 5, {parse_word("[[x1,x2],x2]")}};
  Json o = obstruction_report_to_json(obstruction_check(P));
  CHECK(o["obstruction"] == "repeated-triple-commutator");
  CHECK(o["verdict"] == "not realizable");
  ProPPresentation clean{2, 5, {parse_word("[x1,x2]")}};
  Json oc = obstruction_report_to_json(obstruction_check(clean));
  CHECK_FALSE(oc.contains("obstruction"));
  CHECK(oc["verdict"] == "no obstruction found");
}

TEST_CASE("unipotent witnesses serialize as matrices or tuples") {
  GroupPtr G = cyclic_group(4);
  MasseyContext ctx = make_massey_context(G, 2);
  Cochain chi = character_cochain(
      CyclicCharacter::from_generator_values(G, 2, {{G->gens[0], 1}}), ctx.M);
  StripLiftReport rep = strip_lift_search(ctx, chi, chi, chi);
  REQUIRE(rep.lifts);
  Json full = unipotent_hom_to_json(*rep.witness);
  CHECK(full["dim"] == 4);
  CHECK(full["reduced"] == false);
  Json img = full["images-on-generators"][std::to_string(G->gens[0])];
  REQUIRE(img.size() == 4);
  CHECK(img[0].size() == 4);
  CHECK(img[0][0] == 1);
  CHECK(img[1][1] == 1);

  GroupPtr G5 = cyclic_group(5);
  ModulePtr M5 = trivial_module(G5, 5);
  Cochain chi5 = character_cochain(CyclicCharacter::for_generator(G5, G5->gens[0]), M5);
  UnipotentHom red = reduced_hom(binomial_system(chi5, 3));
  Json rj = unipotent_hom_to_json(red);
  CHECK(rj["reduced"] == true);
  CHECK(rj["images-on-generators"][std::to_string(G5->gens[0])].size() == 5);
}

}  // TEST_SUITE
