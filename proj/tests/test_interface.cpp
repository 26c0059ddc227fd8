#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fcat/interface.hpp"

using namespace fcat;

namespace {

std::string sample() {
  std::ifstream in(FCAT_TEST_DATA "/two_object.fcat");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Command verb(const std::string& v, std::map<std::string, std::string> opts = {}, const std::string& theorem = {}) {
  Command c;
  c.verb = v;
  c.theorem = theorem;
  c.options = std::move(opts);
  return c;
}

int line_of(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

// Identifier-for-identifier equality; the reparsed category takes its
// workspace name.
void check_same(const std::string& key, const FinCat& a, const FinCat& b) {
  CHECK(a.same_structure(b));
  CHECK(b.name() == key);
}

void check_roundtrip(const Workspace& ws) {
  const std::string text = print_workspace(ws);
  Workspace again = parse_spec(text);
  CHECK(print_workspace(again) == text);
  REQUIRE(again.order == ws.order);
  for (auto& [n, c] : ws.categories) check_same(n, *c, *again.category(n));
  for (auto& [n, m] : ws.models) {
    CHECK(same_classes(m.pm, again.model(n).pm));
    CHECK(bool(m.model) == bool(again.model(n).model));
  }
  for (auto& [n, f] : ws.functors) CHECK(f.functor == again.functor(n).functor);
  for (auto& [n, a] : ws.adjunctions) CHECK(same_adjunction(a.adjunction, again.adjunction(n).adjunction));
  for (auto& [n, m] : ws.modcats) {
    const AdjCatFunctor &x = m.functor.underlying, &y = again.modcat(n).functor.underlying;
    REQUIRE(x.on_arrow.size() == y.on_arrow.size());
    for (size_t f = 0; f < x.on_arrow.size(); ++f) CHECK(same_adjunction(x.on_arrow[f], y.on_arrow[f]));
    for (size_t a = 0; a < x.id_iso.size(); ++a) CHECK(x.id_iso[a].comp == y.id_iso[a].comp);
    for (auto& [gf, cell] : x.comp_iso) CHECK(cell.comp == y.comp_iso.at(gf).comp);
  }
  for (auto& [n, f] : ws.fibrations) {
    CHECK(f.candidate.pi == again.fibration(n).candidate.pi);
    CHECK(same_classes(f.candidate.upstairs, again.fibration(n).candidate.upstairs));
  }
}

}  // namespace

TEST_CASE("grammar examples") {
  Workspace ws = parse_spec("poset I1 { order: 0 < 1 }");
  REQUIRE(ws.categories.count("I1"));
  CHECK(ws.category("I1")->num_morphisms() == 3);

  ws = parse_spec("poset I1 { order: 0 < 1 }\nmodel ex44 on I1 { weq: all  cof: all  fib: none }");
  CHECK(ws.model("ex44").model);
  CHECK(ws.model("ex44").axioms.ok());

  const char* bad =
      "category C {\n"
      "  objects: a, b\n"
      "  arrow f: a -> b\n"
      "  compose g . f = f\n"
      "}\n";
  CHECK(line_of(bad) == 4);
}

TEST_CASE("parse errors carry positions") {
  CHECK(line_of("poset P {\n  order: a < \n}") == 3);                   // syntax
  CHECK(line_of("poset P { order: a < b }\nmodel M on Q { }") == 2);     // unresolved category
  CHECK(line_of("poset P { order: a < b < a }") == 1);                  // cycle
  CHECK(line_of("poset P { order: a < b }\nposet P { objects: x }") == 2);  // duplicate
  CHECK(line_of("poset P { order: a < b }\nmodel M on P { weq: all cof: all }") == 2);
  CHECK(line_of("poset P { order: a < b }\nfunctor F: P -> P { obj a => b }") == 2);  // missing object
  // a subcategory that is not closed is rejected unless asked to close it
  const char* chain3 = "poset C { order: 0 < 1 < 2 }\n";
  CHECK(line_of(std::string(chain3) + "model M on C { weq: [\"0<1\", \"1<2\"] cof: all fib: all }") == 2);
  CHECK(parse_spec(std::string(chain3) + "model M on C { weq: closed [\"0<1\", \"1<2\"] cof: all fib: none }")
            .model("M")
            .pm.weq == MorSet::all(*chain(3)));
  try {
    parse_spec("poset P { order: a < b }\nfunctor F: P -> P { obj a => a obj b => b arrow \"a<b\" => id_a }");
    FAIL("expected a validation failure");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK_FALSE(e.report().ok());
  }
}

TEST_CASE("models failing the axioms load without a model") {
  Workspace ws = parse_spec("poset I1 { order: 0 < 1 }\nmodel bad on I1 { weq: none cof: none fib: none }");
  CHECK_FALSE(ws.model("bad").model);
  CHECK_FALSE(ws.model("bad").axioms.ok());
  CommandReport r = run_command(ws, verb("model-check", {{"model", "bad"}}));
  CHECK(r.exit_code == 1);
  // a functor cannot be built on it
  CHECK(line_of("poset I1 { order: 0 < 1 }\nmodel bad on I1 { weq: none cof: none fib: none }\n"
                "modcat-functor F on bad { fiber 0 = bad fiber 1 = bad }") == 3);
}

TEST_CASE("non-thin categories and explicit factorizations") {
  // a finite complete category is a preorder, so this one loads but fails MC1
  // while its factorizations are still checked
  const char* text =
      "category E {\n"
      "  objects: a\n"
      "  arrow e: a -> a\n"
      "  compose e . e = e\n"
      "}\n"
      "model M on E { weq: none cof: all fib: all factor1 e = a via e, id_a  factor2 e = a via id_a, e }\n";
  Workspace ws = parse_spec(text);
  const FinCat& e = *ws.category("E");
  CHECK_FALSE(e.thin());
  CHECK(e.num_morphisms() == 2);
  CHECK_FALSE(ws.model("M").model);
  CHECK(ws.model("M").axioms.mc1.has("limits"));
  CHECK(ws.model("M").axioms.mc4.ok());
  CHECK(ws.model("M").axioms.mc5.ok());
  check_roundtrip(ws);
  // legs are ambiguous without 'via'
  CHECK(line_of("category E { objects: a arrow e: a -> a compose e . e = e }\n"
                "model M on E { weq: all cof: all fib: all factor1 e = a factor2 e = a }") == 2);
  // a wrong leg is rejected
  CHECK(line_of("category E { objects: a arrow e: a -> a compose e . e = e }\n"
                "model M on E { weq: none cof: all fib: all factor1 e = a via id_a, id_a factor2 e = a via id_a, e }") ==
        2);
}

TEST_CASE("a non-skeletal preorder carries a model structure") {
  const char* text =
      "category Iso {\n"
      "  objects: a, b\n"
      "  arrow f: a -> b\n"
      "  arrow g: b -> a\n"
      "  compose g . f = id_a\n"
      "  compose f . g = id_b\n"
      "}\n"
      "model M on Iso { weq: all cof: all fib: all }\n";
  Workspace ws = parse_spec(text);
  CHECK(ws.category("Iso")->thin());
  CHECK_FALSE(ws.category("Iso")->skeletal_poset());
  CHECK(ws.model("M").model);
  check_roundtrip(ws);
  // a missing composite is a validation failure at the declaration
  CHECK(line_of("category Iso { objects: a, b arrow f: a -> b arrow g: b -> a compose g . f = id_a }") == 1);
}

TEST_CASE("the sample workspace round-trips") {
  Workspace ws = parse_spec(sample());
  CHECK(ws.order.size() == 14);
  check_roundtrip(ws);
}

TEST_CASE("corpus objects round-trip through the text format") {
  Workspace ws;
  ws.add_category("I1", chain(2, "I1"));
  ws.add_category("pt", point_category());
  for (const auto& e : generate_corpus()) {
    if (auto m = std::get_if<ModelPtr>(&e.payload)) {
      const CatPtr& c = (*m)->cat();
      if (!ws.categories.count(c->name())) ws.add_category(c->name(), c);
      ws.add_model(e.name, ModelDecl{c->name(), (*m)->pm, {}, *m, true});
      continue;
    }
    // derived categories: the integral totals, with explicit factorizations
    const auto* fm = std::get_if<ModCatFunctor>(&e.payload);
    if (!fm || e.name.rfind("slice(", 0) != 0) continue;
    if (!check_proper(*fm).ok() || !check_relative(*fm).ok()) continue;
    IntegralStructure is = build_integral(*fm);
    const std::string total = "total/" + e.name;
    ws.add_category(total, std::const_pointer_cast<const FinCat>(is.total.total));
    ws.add_model("model/" + e.name, ModelDecl{total, is.classes, {}, is.model, true});
    ws.add_functor("pi/" + e.name, FunctorDecl{total, fm->base()->name(), is.total.projection});
  }
  // categories with interleaved identities and non-poset shapes
  ws.add_category("B2op", opposite(boolean_lattice(2)));
  ws.add_category("arrows", arrow_category(chain(3)).cat);
  ws.add_category("slice", slice(boolean_lattice(2), 3).cat);
  ws.add_category("prod", product(chain(2), chain(3)).cat);
  ws.add_category("disc", discrete(3));
  CHECK(ws.order.size() > 100);
  check_roundtrip(ws);
}

TEST_CASE("run_command examples") {
  Workspace ws = parse_spec(sample());
  CommandReport r = run_command(ws, verb("verify-theorem", {{"functor", "SLICE"}}, "integral"));
  CHECK(r.exit_code == 0);
  CHECK(r.checks.size() == 11);

  r = run_command(ws, verb("enumerate-models", {{"category", "I1"}}));
  int structures = 0;
  for (const auto& c : r.checks) structures += c.name.rfind("structure/", 0) == 0;
  CHECK(structures == 3);
  Workspace emitted = parse_spec("poset I1 { order: 0 < 1 }\n" + r.output);
  CHECK(emitted.models.size() == 3);

  r = run_command(ws, verb("integrate", {{"functor", "CONSTPT"}}));
  REQUIRE(r.exit_code == 0);
  Workspace total = parse_spec(r.output);
  IntegralStructure is = build_integral(ws.modcat("CONSTPT").functor);
  CHECK(total.category("CONSTPT_total")->same_structure(*is.total.total));
  REQUIRE(total.model("CONSTPT_integral").model);
  CHECK(total.model("CONSTPT_integral").pm.weq == is.classes.weq);
  CHECK(total.model("CONSTPT_integral").pm.cof == is.classes.cof);
  CHECK(total.model("CONSTPT_integral").pm.fib == is.classes.fib);
  CHECK(total.functor("CONSTPT_projection").functor.obj == is.total.projection.obj);
}

TEST_CASE("failing hypotheses exit 1 with a witness") {
  Workspace ws = parse_spec(sample());
  CommandReport r = run_command(ws, verb("check-proper-relative", {{"functor", "TRIV"}}));
  CHECK(r.exit_code == 1);
  bool found = false;
  for (const auto& c : r.checks) found = found || (c.status == "fail" && c.witness == "0<1");
  CHECK(found);
  // integrating anyway reports the axioms
  Command force = verb("integrate", {{"functor", "TRIV"}});
  force.force = true;
  r = run_command(ws, force);
  CHECK(r.checks.size() > 3);
}

TEST_CASE("two-object base claims through the runner") {
  Workspace ws = parse_spec(sample());
  for (const char* fiber : {"triv", "ex44"}) {
    CommandReport r = run_command(ws, verb("verify-theorem", {{"fiber", fiber}}, "example44"));
    CHECK(r.exit_code == 0);
  }
}

TEST_CASE("usage errors throw") {
  Workspace ws = parse_spec(sample());
  CHECK_THROWS_AS(run_command(ws, verb("frobnicate")), Error);
  CHECK_THROWS_AS(run_command(ws, verb("integrate")), Error);
  CHECK_THROWS_AS(run_command(ws, verb("integrate", {{"functor", "nope"}})), Error);
  CHECK_THROWS_AS(run_command(ws, verb("verify-theorem", {}, "nope")), Error);
}

TEST_CASE("reports are byte-stable") {
  Workspace a = parse_spec(sample()), b = parse_spec(sample());
  for (const Command& c : {verb("validate"), verb("verify-theorem", {{"functor", "SLICE"}}, "correspondence"),
                           verb("verify-theorem", {{"model", "ex44"}}, "slice")}) {
    const std::string x = to_json(run_command(a, c)), y = to_json(run_command(b, c));
    CHECK(x == y);
    CHECK(x.find("\"elapsed_ms\": 0") != std::string::npos);
  }
}

TEST_CASE("DOT export") {
  Workspace ws = parse_spec(sample());
  CommandReport r = run_command(ws, verb("export-dot", {{"name", "ex44"}}));
  CHECK(r.output.find("\"0\" -> \"1\" [label=\"0<1\", weq=true, cof=true, fib=false];") != std::string::npos);
  r = run_command(ws, verb("export-dot", {{"name", "SLICE"}}));
  size_t edges = 0;
  for (size_t p = r.output.find("->"); p != std::string::npos; p = r.output.find("->", p + 1)) ++edges;
  CHECK(edges == 3);  // the total is the arrow category of I1, a 3-chain
}
