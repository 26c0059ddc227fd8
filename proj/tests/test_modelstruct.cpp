#include <set>
#include <tuple>

#include "doctest.h"
#include "fcat/modelstruct.hpp"
#include "poset_oracle.hpp"

using namespace fcat;

namespace {

PreModel classes(const CatPtr& c, const std::string& name, const std::vector<std::string>& w,
                 const std::vector<std::string>& cof, const std::vector<std::string>& fib) {
  auto set = [&](const std::vector<std::string>& names) {
    MorSet s = MorSet::identities(*c);
    for (const auto& n : names) s.insert(*c->find_morphism(n));
    return s;
  };
  return PreModel{name, c, set(w), set(cof), set(fib)};
}

using oracle::Pair;
using oracle::Triple;

std::vector<Triple> chain_oracle(int n) { return oracle::chain_models(n); }

std::set<Pair> as_pairs(const FinCat& c, const MorSet& s) {
  std::set<Pair> out;
  for (MorId f : s.members())
    if (!c.is_identity(f)) out.insert({c.src(f), c.tgt(f)});
  return out;
}

std::set<Triple> as_triples(const std::vector<ModelPtr>& ms) {
  std::set<Triple> out;
  for (const auto& m : ms) out.emplace(as_pairs(*m->cat(), m->pm.weq), as_pairs(*m->cat(), m->pm.cof), as_pairs(*m->cat(), m->pm.fib));
  return out;
}

}  // namespace

TEST_CASE("lifting on I1") {
  auto i1 = chain(2);
  const MorId up = 1, id0 = 0, id1 = 2;
  CHECK(lifting_exists(*i1, up, id1, up, id1) == id1);  // p identity: lift is the top
  CHECK(lifting_exists(*i1, id0, up, id0, up) == id0);  // i identity: lift is the bottom
  CHECK_FALSE(lifting_exists(*i1, up, up, id0, id1).has_value());
  CHECK_THROWS_AS(lifting_exists(*i1, up, up, id1, id1), Error);
}

TEST_CASE("lifting is self-dual under opposites") {
  for (const CatPtr& c : {chain(3), boolean_lattice(2)}) {
    auto op = opposite(c);
    for (MorId i = 0; i < c->num_morphisms(); ++i)
      for (MorId p = 0; p < c->num_morphisms(); ++p)
        for (MorId top : c->hom(c->src(i), c->src(p)))
          for (MorId bottom : c->hom(c->tgt(i), c->tgt(p)))
            if (c->compose(p, top) == c->compose(bottom, i))
              CHECK(lifting_exists(*c, i, p, top, bottom).has_value() ==
                    lifting_exists(*op, p, i, bottom, top).has_value());
  }
}

TEST_CASE("axiom checker on I1") {
  auto i1 = chain(2, "I1");
  CHECK(check_model_axioms(classes(i1, "ex44", {"0<1"}, {"0<1"}, {})).ok());
  CHECK(check_model_axioms(classes(i1, "triv", {}, {"0<1"}, {"0<1"})).ok());
  AxiomReport bad = check_model_axioms(classes(i1, "all", {"0<1"}, {"0<1"}, {"0<1"}));
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.mc4.ok());
  CHECK(bad.mc4.witness("lift-cof-trivfib").find("i=0<1, p=0<1") != std::string::npos);
}

TEST_CASE("non-subcategory classes are structural failures") {
  auto c3 = chain(3);
  PreModel pm = classes(c3, "open", {"0<1", "1<2"}, {}, {});
  AxiomReport r = check_model_axioms(pm);
  CHECK_FALSE(r.structure.ok());
}

TEST_CASE("factorization search") {
  auto i1 = chain(2, "I1");
  PreModel ex44 = classes(i1, "ex44", {"0<1"}, {"0<1"}, {});
  auto f = search_functorial_factorization(*i1, ex44.cof, ex44.trivfib());
  REQUIRE(f);
  CHECK(f->middle[1] == 1);
  CHECK(validate_factorization(*i1, *f, ex44.cof, ex44.trivfib()).ok());

  auto c3 = build_poset("C3", {{"x", "y"}, {"y", "z"}});
  CHECK(search_functorial_factorization(*c3, MorSet::all(*c3), MorSet::identities(*c3)).has_value());
  MorSet l = MorSet::identities(*c3);
  l.insert(*c3->find_morphism("x<y"));
  CHECK_FALSE(search_functorial_factorization(*c3, l, MorSet::identities(*c3)).has_value());
}

TEST_CASE("factorization search on a non-thin category fills middle maps functorially") {
  CategoryData d;
  d.name = "split";
  d.objects = {"a", "b"};
  d.morphisms = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"i", 0, 1}, {"r", 1, 0}, {"e", 1, 1}};
  d.identity = {0, 1};
  d.compose = {{{0, 0}, 0}, {{2, 0}, 2}, {{1, 1}, 1}, {{3, 1}, 3}, {{4, 1}, 4}, {{1, 2}, 2}, {{3, 2}, 0},
               {{4, 2}, 2}, {{0, 3}, 3}, {{2, 3}, 4}, {{1, 4}, 4}, {{3, 4}, 3}, {{4, 4}, 4}};
  auto c = FinCat::make(d);
  auto f = search_functorial_factorization(*c, MorSet::all(*c), MorSet::identities(*c));
  REQUIRE(f);
  CHECK(validate_factorization(*c, *f, MorSet::all(*c), MorSet::identities(*c)).ok());
}

TEST_CASE("enumeration on I1 matches the independent brute force") {
  auto i1 = chain(2, "I1");
  auto ms = enumerate_model_structures(i1);
  CHECK(ms.size() == 3);
  auto oracle = chain_oracle(2);
  CHECK(as_triples(ms) == std::set<Triple>(oracle.begin(), oracle.end()));
  std::set<Triple> expected;
  const std::set<Pair> all{{0, 1}}, ids{};
  expected.emplace(all, all, ids);
  expected.emplace(all, ids, all);
  expected.emplace(ids, all, all);
  CHECK(as_triples(ms) == expected);
}

TEST_CASE("enumeration on small chains matches the brute force and frozen counts") {
  CHECK(enumerate_model_structures(point_category()).size() == 1);
  auto c3 = chain(3);
  auto ms = enumerate_model_structures(c3);
  auto oracle = chain_oracle(3);
  CHECK(as_triples(ms) == std::set<Triple>(oracle.begin(), oracle.end()));
  CHECK(ms.size() == oracle.size());
  CHECK(ms.size() == 10);  // frozen from the oracle run
  for (const auto& m : ms) {
    CHECK(is_subcategory(*c3, m->pm.trivcof()));
    CHECK(is_subcategory(*c3, m->pm.trivfib()));
  }
}

TEST_CASE("replacements") {
  auto i1 = chain(2, "I1");
  auto ex44 = make_model(classes(i1, "ex44", {"0<1"}, {"0<1"}, {}));
  CHECK(replacement(*ex44, 1, Replacement::Cofibrant) == std::pair<ObjId, MorId>{1, i1->id(1)});
  auto triv = make_model(classes(i1, "triv", {}, {"0<1"}, {"0<1"}));
  CHECK(replacement(*triv, 1, Replacement::Fibrant) == std::pair<ObjId, MorId>{1, i1->id(1)});
  // replacement of an already (co)fibrant object is an isomorphism
  for (const auto& m : enumerate_model_structures(chain(3)))
    for (ObjId x = 0; x < 3; ++x) {
      if (m->cofibrant(x)) CHECK(m->cat()->is_iso(replacement(*m, x, Replacement::Cofibrant).second));
      if (m->fibrant(x)) CHECK(m->cat()->is_iso(replacement(*m, x, Replacement::Fibrant).second));
    }
}

TEST_CASE("Quillen checks for pt over I1") {
  auto i1 = chain(2, "I1");
  auto pt = point_category();
  auto ptm = make_model(PreModel{"pt", pt, MorSet::all(*pt), MorSet::all(*pt), MorSet::all(*pt)});
  auto triv = make_model(classes(i1, "triv", {}, {"0<1"}, {"0<1"}));
  auto ex44 = make_model(classes(i1, "ex44", {"0<1"}, {"0<1"}, {}));
  auto adj = find_adjoint(constant_functor(pt, i1, 0), Side::Right);
  REQUIRE(adj);

  auto c1 = check_quillen(*adj, *ptm, *triv, QuillenMode::Equivalence);
  CHECK(c1.left_quillen);
  CHECK(c1.right_quillen);
  CHECK_FALSE(c1.equivalence);
  CHECK(c1.report.has("derived-counit"));

  auto c2 = check_quillen(*adj, *ptm, *ex44, QuillenMode::Equivalence);
  CHECK(c2.equivalence);

  auto id = check_quillen(identity_adjunction(i1), *triv, *triv, QuillenMode::Equivalence);
  CHECK(id.equivalence);
}

TEST_CASE("left and right Quillen criteria agree on adjunctions between chain structures") {
  auto i1 = chain(2, "I1");
  auto c3 = chain(3);
  auto ms1 = enumerate_model_structures(i1);
  auto ms3 = enumerate_model_structures(c3);
  int checked = 0;
  for (ObjId a = 0; a < 3; ++a)
    for (ObjId b = a; b < 3; ++b) {
      auto l = functor_from_object_map(i1, c3, {a, b});
      auto adj = find_adjoint(*l, Side::Right);
      if (!adj) continue;
      for (const auto& s : ms1)
        for (const auto& t : ms3) {
          auto cert = check_quillen(*adj, *s, *t, QuillenMode::Adjunction);
          CHECK(cert.left_quillen == cert.right_quillen);
          ++checked;
        }
    }
  CHECK(checked > 0);
}

TEST_CASE("properness on small chains") {
  auto i1 = chain(2, "I1");
  auto ex44 = make_model(classes(i1, "ex44", {"0<1"}, {"0<1"}, {}));
  CHECK(right_proper(*ex44).ok());
  CHECK(left_proper(*ex44).ok());
}

TEST_CASE("product model structure") {
  auto i1 = chain(2, "I1");
  auto ex44 = make_model(classes(i1, "ex44", {"0<1"}, {"0<1"}, {}));
  auto triv = make_model(classes(i1, "triv", {}, {"0<1"}, {"0<1"}));
  ProductCat p = product(i1, i1);
  auto prod = product_model(*ex44, *triv, p);
  CHECK(prod->pm.weq.count() == 6);
}

TEST_CASE("enumeration on the square and the 4-chain matches the brute force") {
  auto b2 = boolean_lattice(2);
  auto ms = enumerate_model_structures(b2);
  // object names are bit strings; the oracle encodes subsets as bitmasks
  auto mask = [&](ObjId o) { return std::stoi(b2->object_name(o), nullptr, 2); };
  auto pairs = [&](const MorSet& s) {
    std::set<Pair> out;
    for (MorId f : s.members())
      if (!b2->is_identity(f)) out.insert({mask(b2->src(f)), mask(b2->tgt(f))});
    return out;
  };
  std::set<Triple> got;
  for (const auto& m : ms) got.emplace(pairs(m->pm.weq), pairs(m->pm.cof), pairs(m->pm.fib));
  auto expected = oracle::boolean_models(2);
  CHECK(got == std::set<Triple>(expected.begin(), expected.end()));
  CHECK(ms.size() == expected.size());
  CHECK(ms.size() == 23);  // frozen from the oracle run

  auto c4 = enumerate_model_structures(chain(4));
  auto o4 = oracle::chain_models(4);
  CHECK(as_triples(c4) == std::set<Triple>(o4.begin(), o4.end()));
  CHECK(c4.size() == 35);  // frozen from the oracle run
}
