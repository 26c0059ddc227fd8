#include "doctest.h"
#include "fcat/integral.hpp"
#include "fixtures.hpp"

using namespace fcat;
using namespace fcat::fixtures;

TEST_CASE("constant point over I1 recovers the base model") {
  auto i1 = chain(2);
  for (const auto& base : all_i1_models(i1)) {
    auto fm = constant_modcat("c", base, point_model());
    REQUIRE(validate_modcat_functor(fm).ok());
    auto is = build_integral(fm);
    REQUIRE(is.model);
    for (MorId m = 0; m < is.cat().num_morphisms(); ++m) {
      const MorId f = is.total.mor_pair[m].first;
      CHECK(is.classes.weq.contains(m) == base->weq(f));
      CHECK(is.classes.cof.contains(m) == base->cof(f));
      CHECK(is.classes.fib.contains(m) == base->fib(f));
    }
  }
}

TEST_CASE("integral over a base with trivial weak equivalences") {
  auto i1 = chain(2);
  auto base = i1_model(i1, false, true, true);
  for (const auto& fiber : all_i1_models(chain(2))) {
    auto fm = initial_inclusion(base, fiber);
    REQUIRE(validate_modcat_functor(fm).ok());
    CHECK(check_relative(fm).ok());
    CHECK(check_proper(fm).ok());
    auto is = build_integral(fm);
    REQUIRE(is.model);
    CHECK(is.cat().num_objects() == 3);
    // oracle: W_M = ids forces f = id; pt has everything; otherwise read φ
    for (MorId m = 0; m < is.cat().num_morphisms(); ++m) {
      const auto [f, phi] = is.total.mor_pair[m];
      const ObjId b = i1->tgt(f);
      const bool over_id = i1->is_identity(f);
      const bool in_pt = b == 0;
      CHECK(is.classes.weq.contains(m) == (over_id && (in_pt || fiber->weq(phi))));
      CHECK(is.classes.cof.contains(m) == (in_pt || fiber->cof(phi)));
      if (over_id) CHECK(is.classes.fib.contains(m) == (in_pt || fiber->fib(phi)));
      else CHECK(is.classes.fib.contains(m));  // the adjunct lives in pt
    }
    CHECK(verify_trivial_characterization(fm, is).ok());
    CHECK(verify_weq_symmetry(fm, is).ok());
  }
}

TEST_CASE("relativeness over an all-weak base needs the fiber contractible") {
  auto i1 = chain(2);
  auto base = i1_model(i1, true, true, false);
  int relative = 0;
  for (const auto& fiber : all_i1_models(chain(2))) {
    auto fm = initial_inclusion(base, fiber);
    const bool expected = fiber->weq(arrow01(*fiber->cat()));
    CHECK(check_relative(fm).ok() == expected);
    if (!expected) {
      CHECK(check_relative(fm).has("relative"));
      CHECK(check_relative(fm).witness("relative") == "0<1");
      CHECK_THROWS_AS(build_integral(fm), ValidationError);
      continue;
    }
    ++relative;
    auto is = build_integral(fm);
    REQUIRE(is.model);
    CHECK(verify_trivial_characterization(fm, is).ok());
    CHECK(verify_weq_symmetry(fm, is).ok());
  }
  CHECK(relative > 0);
}

TEST_CASE("left properness counterexample") {
  auto i1 = chain(2);
  auto base = i1_model(i1, true, true, false);
  // identity from (W=all, Cof=ids, Fib=all) to the trivial structure
  ModCatFunctor fm;
  fm.underlying = constant_adjcat("p", i1, chain(2));
  fm.base_model = base;
  fm.fiber_models = {i1_model(fm.underlying.fiber[0], true, false, true),
                     i1_model(fm.underlying.fiber[1], false, true, true)};
  REQUIRE(validate_modcat_functor(fm).ok());
  ProperReport pr = check_proper(fm);
  CHECK(pr.left.has("left-proper"));
  CHECK(pr.left.witness("left-proper") == "f=0<1, w=0<1");
  CHECK_THROWS_AS(build_integral(fm), ValidationError);
  auto forced = build_integral(fm, BuildMode::Force);
  CHECK(forced.classes.weq.universe() == forced.cat().num_morphisms());
}

TEST_CASE("non-Quillen arrows are rejected") {
  auto i1 = chain(2);
  ModCatFunctor fm;
  fm.underlying = constant_adjcat("q", i1, chain(2));
  fm.base_model = i1_model(i1, false, true, true);
  // identity from (W=all, Cof=all, Fib=ids) to the trivial structure fails left Quillen
  fm.fiber_models = {i1_model(fm.underlying.fiber[0], true, true, false),
                     i1_model(fm.underlying.fiber[1], false, true, true)};
  Report r = validate_modcat_functor(fm);
  CHECK(r.has("quillen"));
}

TEST_CASE("identity family integrates to the identity Quillen equivalence") {
  auto i1 = chain(2);
  auto fm = initial_inclusion(i1_model(i1, false, true, true), i1_model(chain(2), true, true, false));
  auto is = build_integral(fm);
  std::vector<Adjunction> comps;
  for (const auto& c : fm.underlying.fiber) comps.push_back(identity_adjunction(c));
  auto fam = family_with_canonical_cells(fm.underlying, fm.underlying, comps);
  CHECK(validate_family(fm.underlying, fm.underlying, fam).ok());
  auto t = integrate_quillen_transformation(fm, is, fm, is, fam, QuillenMode::Equivalence);
  REQUIRE(t.ok());
  CHECK(t.cert.equivalence);
  for (ObjId o = 0; o < is.cat().num_objects(); ++o) CHECK(t.adjunction->left.obj[o] == o);
  for (MorId m = 0; m < is.cat().num_morphisms(); ++m) CHECK(t.adjunction->left.mor[m] == m);
}

TEST_CASE("broken family coherence is reported") {
  auto i1 = chain(2);
  auto fm = constant_modcat("c", i1_model(i1, false, true, true), i1_model(chain(2), true, true, false));
  std::vector<Adjunction> comps;
  for (const auto& c : fm.underlying.fiber) comps.push_back(identity_adjunction(c));
  auto fam = family_with_canonical_cells(fm.underlying, fm.underlying, comps);
  fam.naturality.pop_back();
  CHECK(validate_family(fm.underlying, fm.underlying, fam).has("shape"));
}

TEST_CASE("base change along the identity") {
  auto i1 = chain(2);
  auto fm = initial_inclusion(i1_model(i1, true, true, false), i1_model(chain(2), true, true, false));
  auto is = build_integral(fm);
  const Adjunction bc = identity_adjunction(i1);
  for (MorphismKind kind : {MorphismKind::Left, MorphismKind::Right}) {
    const AdjCatFunctor h = kind == MorphismKind::Left ? fm.underlying : reindex(fm.underlying, bc.right, "h");
    const AdjCatFunctor k = kind == MorphismKind::Left ? reindex(fm.underlying, bc.left, "k") : fm.underlying;
    std::vector<Adjunction> comps;
    for (const auto& c : fm.underlying.fiber) comps.push_back(identity_adjunction(c));
    auto fam = family_with_canonical_cells(h, k, comps);
    auto cert = base_change(fm, is, fm, is, bc, kind, fam);
    CHECK(cert.hypotheses());
    REQUIRE(cert.total.ok());
    CHECK(cert.total.cert.equivalence);
  }
}

TEST_CASE("Fubini for constant functors over a product") {
  auto p = product(chain(2), chain(2));
  auto m = i1_model(p.proj1.target, true, true, false);
  auto n = i1_model(p.proj2.target, false, true, true);
  auto mn = product_model(*m, *n, p);
  for (const auto& fiber : {point_model(), i1_model(chain(2), true, true, false)}) {
    auto fm = constant_modcat("c", mn, fiber);
    auto fr = fubini(fm, m, n, p);
    CHECK(fr.iso_m.summary() == "ok");
    CHECK(fr.iso_n.summary() == "ok");
    CHECK(fr.ok());
    CHECK(fr.inner_m.size() == 2);
    CHECK(fr.iterated_m.cat().num_morphisms() == fr.whole.cat().num_morphisms());
  }
}

TEST_CASE("two-object-base total with the trivial fiber, built in force mode") {
  auto i1 = chain(2);
  auto fm = initial_inclusion(i1_model(i1, true, true, false), i1_model(chain(2), false, true, true));
  CHECK_FALSE(check_relative(fm).ok());
  auto is = build_integral(fm, BuildMode::Force);
  CHECK(is.axioms.ok());
  REQUIRE(is.model);
  const GrothCat& g = is.total;
  const MorId up = *i1->find_morphism("0<1");
  const MorId to0 = g.morphism(g.object(0, 0), up, fm.underlying.fiber[1]->id(0));
  const MorId to1 = g.morphism(g.object(0, 0), up, *fm.underlying.fiber[1]->find_morphism("0<1"));
  REQUIRE(to0 != kNone);
  REQUIRE(to1 != kNone);
  auto f0 = classify_integral(fm, g, to0);
  CHECK((f0.weq && f0.cof && !f0.fib));
  auto f1 = classify_integral(fm, g, to1);
  CHECK((!f1.weq && f1.cof && !f1.fib));
  Report sym = verify_weq_symmetry(fm, is);
  CHECK(sym.has("weq-symmetry"));
  CHECK(sym.witness("weq-symmetry") == g.total->morphism_name(to1));
}

TEST_CASE("fiberwise identity from the trivial to the all-weak fiber") {
  auto pt = point_model();
  auto triv = constant_modcat("t", pt, i1_model(chain(2), false, true, true));
  auto weak = constant_modcat("w", pt, i1_model(chain(2), true, true, false));
  auto ti = build_integral(triv);
  auto wi = build_integral(weak);
  auto fam = family_with_canonical_cells(triv.underlying, weak.underlying,
                                         {identity_adjunction(triv.underlying.fiber[0])});
  auto t = integrate_quillen_transformation(triv, ti, weak, wi, fam);
  CHECK(t.ok());
  CHECK(t.cert.left_quillen);

  auto back = family_with_canonical_cells(weak.underlying, triv.underlying,
                                          {identity_adjunction(weak.underlying.fiber[0])});
  auto r = integrate_quillen_transformation(weak, wi, triv, ti, back);
  CHECK_FALSE(r.ok());
  CHECK(r.report.witness("component-quillen").rfind("*", 0) == 0);
}
