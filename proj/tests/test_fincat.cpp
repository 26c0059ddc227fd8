#include "doctest.h"
#include "fcat/fincat.hpp"

using namespace fcat;

namespace {

// Reachability count for a covering relation, computed without FinCat.
int comparable_pairs(int n, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : covers) le[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  int count = 0;
  for (auto& row : le)
    for (bool x : row) count += x;
  return count;
}

// a ⇄ b with r∘i = id_a, i∘r = e idempotent on b.
CatPtr split_idempotent() {
  CategoryData d;
  d.name = "split";
  d.objects = {"a", "b"};
  d.morphisms = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"i", 0, 1}, {"r", 1, 0}, {"e", 1, 1}};
  d.identity = {0, 1};
  d.compose = {{{0, 0}, 0}, {{2, 0}, 2}, {{1, 1}, 1}, {{3, 1}, 3}, {{4, 1}, 4}, {{1, 2}, 2}, {{3, 2}, 0},
               {{4, 2}, 2}, {{0, 3}, 3}, {{2, 3}, 4}, {{1, 4}, 4}, {{3, 4}, 3}, {{4, 4}, 4}};
  return FinCat::make(std::move(d));
}

}  // namespace

TEST_CASE("validate_category accepts the point and auto-generated chains") {
  CHECK(validate_category(point_category()->data()).ok());
  CHECK(validate_category(chain(3)->data()).ok());
}

TEST_CASE("validate_category reports a mis-targeted composite with its pair") {
  CategoryData d = chain(2)->data();
  const MorId id0 = 0, up = 1;
  d.compose[{up, id0}] = id0;  // 0<1 ∘ id_0 should be 0<1
  Report r = validate_category(d);
  CHECK_FALSE(r.ok());
  CHECK(r.has("closure"));
  CHECK(r.witness("closure").find("0<1") != std::string::npos);
}

TEST_CASE("validate_category reports missing composites and associativity failures") {
  CategoryData d = chain(3)->data();
  d.compose.erase(d.compose.begin());
  CHECK(validate_category(d).has("closure"));
  CHECK_THROWS_AS(FinCat::make(d), ValidationError);
}

TEST_CASE("build_poset morphism counts match reachability") {
  auto i1 = build_poset("I1", {{"0", "1"}});
  CHECK(i1->num_morphisms() == 3);
  auto c3 = build_poset("C3", {{"x", "y"}, {"y", "z"}});
  CHECK(c3->num_morphisms() == comparable_pairs(3, {{0, 1}, {1, 2}}));
  auto b2 = build_poset("B2", {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
  CHECK(b2->num_morphisms() == comparable_pairs(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  CHECK(b2->num_morphisms() == 9);
  CHECK(b2->skeletal_poset());
  CHECK(b2->find_morphism("a<1").has_value());
  CHECK(b2->find_morphism("0<1").has_value());
}

TEST_CASE("build_poset rejects cycles and names them") {
  try {
    build_poset("bad", {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    FAIL("expected a cycle error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cycle") != std::string::npos);
    CHECK(msg.find("a < b") != std::string::npos);
  }
}

TEST_CASE("opposite is an involution on identifiers") {
  for (const CatPtr& c : {chain(3), boolean_lattice(2), split_idempotent()}) {
    CatPtr back = opposite(opposite(c));
    CHECK(back->same_structure(*c));
    CHECK(back->name() == c->name());
  }
  auto op = opposite(chain(2));
  CHECK(op->hom(1, 0).size() == 1);
  CHECK(op->hom(0, 1).empty());
}

TEST_CASE("derived constructions on I1") {
  auto i1 = chain(2, "I1");
  ArrowCat arr = arrow_category(i1);
  CHECK(arr.cat->num_objects() == 3);
  CHECK(arr.cat->skeletal_poset());
  // id_0 ≤ (0<1) ≤ id_1 under the square order
  const ObjId id0 = *arr.cat->find_object("id_0"), up = *arr.cat->find_object("0<1"), id1 = *arr.cat->find_object("id_1");
  CHECK(arr.cat->hom(id0, up).size() == 1);
  CHECK(arr.cat->hom(up, id1).size() == 1);
  CHECK(arr.cat->hom(id1, id0).empty());
  CHECK(validate_functor(arr.dom).ok());
  CHECK(validate_functor(arr.cod).ok());

  SliceCat s = slice(i1, 1);
  CHECK(s.cat->num_objects() == 2);
  CHECK(s.cat->num_morphisms() == 3);
  CHECK(validate_functor(s.forget).ok());
  CHECK(slice(i1, 0).cat->num_objects() == 1);
  CHECK(coslice(i1, 0).cat->num_objects() == 2);

  ProductCat p = product(i1, i1);
  CHECK(p.cat->num_objects() == 4);
  CHECK(p.cat->num_morphisms() == 9);
  CHECK(validate_functor(p.proj1).ok());
  CHECK(validate_functor(p.proj2).ok());
}

TEST_CASE("limits in lattices are meets") {
  auto b2 = boolean_lattice(2);
  const ObjId a = *b2->find_object("01"), b = *b2->find_object("10");
  FinFunctor d{pair_shape(), b2, {a, b}, {b2->id(a), b2->id(b)}};
  auto lim = find_limit(d);
  REQUIRE(lim);
  CHECK(b2->object_name(lim->apex) == "00");
  CHECK(is_limit(d, *lim));
  auto colim = find_colimit(d);
  REQUIRE(colim);
  CHECK(b2->object_name(colim->apex) == "11");

  // meet computed directly from the order: the greatest lower bound
  auto c4 = chain(4);
  for (ObjId x = 0; x < 4; ++x)
    for (ObjId y = 0; y < 4; ++y) {
      FinFunctor dd{pair_shape(), c4, {x, y}, {c4->id(x), c4->id(y)}};
      CHECK(find_limit(dd)->apex == std::min(x, y));
      CHECK(find_colimit(dd)->apex == std::max(x, y));
    }
}

TEST_CASE("empty colimit is the initial object; discrete pairs have no coproduct") {
  auto i1 = chain(2);
  FinFunctor empty{empty_shape(), i1, {}, {}};
  CHECK(find_colimit(empty)->apex == 0);
  CHECK(find_limit(empty)->apex == 1);
  auto disc = discrete(2);
  FinFunctor d{pair_shape(), disc, {0, 1}, {disc->id(0), disc->id(1)}};
  CHECK_FALSE(find_colimit(d).has_value());
  CHECK_FALSE(bicompleteness_report(disc).ok());
  CHECK(bicompleteness_report(boolean_lattice(2)).ok());
}

TEST_CASE("every colimit factors every enumerated cocone uniquely") {
  auto b2 = boolean_lattice(2);
  for (ObjId x = 0; x < 4; ++x)
    for (ObjId y = 0; y < 4; ++y) {
      FinFunctor d{pair_shape(), b2, {x, y}, {b2->id(x), b2->id(y)}};
      auto k = find_colimit(d);
      REQUIRE(k);
      for (ObjId z = 0; z < 4; ++z)
        for (const Cone& other : cocones(d, z)) {
          int n = 0;
          for (MorId u : b2->hom(k->apex, z))
            n += b2->compose(u, k->legs[0]) == other.legs[0] && b2->compose(u, k->legs[1]) == other.legs[1];
          CHECK(n == 1);
        }
    }
}

TEST_CASE("cone shapes add a terminal or initial apex") {
  auto cs = cocone_shape(pair_shape());
  CHECK(cs.extended->num_objects() == 3);
  CHECK(terminal_object(*cs.extended) == cs.apex);
  auto ks = cone_shape(pair_shape());
  CHECK(initial_object(*ks.extended) == ks.apex);
  CHECK(validate_functor(cs.inclusion).ok());
}

TEST_CASE("retracts: trivial in posets, nontrivial with a split idempotent") {
  auto i1 = chain(2);
  auto pres = enumerate_retracts(*i1, 1);
  bool has_identity = false;
  for (const auto& p : pres) has_identity |= p.of == 1;
  CHECK(has_identity);
  for (MorId f = 0; f < i1->num_morphisms(); ++f) CHECK(retract_sources(*i1, f) == std::vector<MorId>{f});

  auto s = split_idempotent();
  const MorId id_a = *s->find_morphism("id_a"), id_b = *s->find_morphism("id_b");
  auto src = retract_sources(*s, id_a);
  CHECK(std::find(src.begin(), src.end(), id_b) != src.end());
}

TEST_CASE("functors and natural transformations") {
  auto i1 = chain(2), c3 = chain(3);
  auto f = functor_from_object_map(i1, c3, {0, 2});
  REQUIRE(f);
  CHECK(validate_functor(*f).ok());
  CHECK_FALSE(functor_from_object_map(i1, c3, {2, 0}).has_value());
  auto g = functor_from_object_map(i1, c3, {1, 2});
  NatTrans t{*f, *g, {c3->unique_hom(0, 1), c3->id(2)}};
  CHECK(validate_nat_trans(t).ok());
  CHECK_FALSE(is_nat_iso(t));
  CHECK(is_nat_iso(identity_nat(*f)));
  CHECK(compose(identity_functor(c3), *f) == *f);
}
