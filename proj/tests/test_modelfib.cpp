#include "doctest.h"
#include "fcat/modelfib.hpp"
#include "fixtures.hpp"

using namespace fcat;
using namespace fcat::fixtures;

namespace {

FinFunctor to_point(const CatPtr& c) { return constant_functor(c, point_category(), 0); }

PreModel point_premodel() {
  auto pt = point_category();
  return PreModel{"pt", pt, MorSet::all(*pt), MorSet::all(*pt), MorSet::all(*pt)};
}

// Every triple of classes containing the identities.
std::vector<PreModel> all_premodels(const CatPtr& c) {
  std::vector<MorId> arrows;
  for (MorId f = 0; f < c->num_morphisms(); ++f)
    if (!c->is_identity(f)) arrows.push_back(f);
  const int k = static_cast<int>(arrows.size());
  auto subset = [&](int bits) {
    MorSet s = MorSet::identities(*c);
    for (int i = 0; i < k; ++i)
      if (bits >> i & 1) s.insert(arrows[i]);
    return s;
  };
  std::vector<PreModel> out;
  for (int w = 0; w < 1 << k; ++w)
    for (int cf = 0; cf < 1 << k; ++cf)
      for (int fb = 0; fb < 1 << k; ++fb) out.push_back(PreModel{"p", c, subset(w), subset(cf), subset(fb)});
  return out;
}

ModCatFunctor slice_like() {
  // F(0) = pt, F(1) = I1 with all-weak structure over the all-weak base: relative and proper.
  return initial_inclusion(i1_model(chain(2), true, true, false), i1_model(chain(2), true, true, false));
}

}  // namespace

TEST_CASE("identity functor is a relative model category over itself") {
  for (const auto& mc : all_i1_models(chain(2))) {
    FibrationCandidate fc{identity_functor(mc->cat()), mc->pm, mc->pm};
    CHECK(check_pi_wfs(fc.pi, mc->pm.trivcof(), mc->pm.fib, mc->pm.trivcof(), mc->pm.fib).ok());
    CHECK(check_relative_model(fc).ok());
    CHECK(check_model_fibration(fc).ok());
  }
}

TEST_CASE("a pre-model category is a model category iff its terminal map is relative") {
  for (const auto& c : {chain(2), chain(3)}) {
    int models = 0;
    for (const PreModel& pm : all_premodels(c)) {
      if (!is_subcategory(*c, pm.weq) || !is_subcategory(*c, pm.cof) || !is_subcategory(*c, pm.fib)) continue;
      FibrationCandidate fc{to_point(c), pm, point_premodel()};
      const bool model = check_model_axioms(pm).ok();
      models += model;
      CHECK_MESSAGE(check_relative_model(fc).ok() == model,
                    c->name() << " W=" << pm.weq.count() << " C=" << pm.cof.count() << " F=" << pm.fib.count());
    }
    CHECK(models > 0);
  }
}

TEST_CASE("identity-only upstairs classes cannot lift factorizations") {
  auto base = i1_model(chain(2), true, true, false);
  auto c = base->cat();
  FibrationCandidate fc{identity_functor(c), PreModel{"ids", c, MorSet::identities(*c), MorSet::identities(*c),
                                                      MorSet::identities(*c)},
                        base->pm};
  Report r = check_pi_wfs(fc.pi, fc.upstairs.trivcof(), fc.upstairs.fib, base->pm.trivcof(), base->pm.fib);
  CHECK(r.has("factorization"));
  CHECK(r.witness("factorization").rfind("0<1", 0) == 0);
}

TEST_CASE("a subposet inclusion is not a model fibration") {
  auto i1 = chain(2);
  auto pt = point_category();
  FibrationCandidate fc{constant_functor(pt, i1, 0), point_premodel(),
                        PreModel{"all", i1, MorSet::all(*i1), MorSet::all(*i1), MorSet::all(*i1)}};
  Report r = check_model_fibration(fc);
  CHECK(r.has("bicartesian/cocartesian-lift"));
  CHECK_THROWS_AS(straighten_modelfib(fc), ValidationError);
}

TEST_CASE("integral projections are model fibrations and round-trip") {
  std::vector<ModCatFunctor> cases{slice_like(),
                                   constant_modcat("c", i1_model(chain(2), false, true, true), point_model()),
                                   initial_inclusion(i1_model(chain(2), false, true, true),
                                                     i1_model(chain(2), false, true, true))};
  for (const auto& fm : cases) {
    auto is = build_integral(fm);
    auto fc = integral_candidate(fm, is);
    CHECK(check_model_fibration(fc).ok());
    CHECK(roundtrip_functor(fm).ok());
    CHECK(roundtrip_fibration(fc).ok());
    auto pq = projection_quillen(fc);
    CHECK(pq.report.ok());
    CHECK(pq.left_quillen);
    CHECK(pq.right_quillen);
    auto l1 = check_cartesian_transfer(fc);
    CHECK(l1.hypotheses);
    CHECK(l1.instances > 0);
    CHECK(l1.ok());
    auto l2 = check_square_transfer(fc);
    CHECK(l2.hypotheses);
    CHECK(l2.instances > 0);
    CHECK(l2.ok());
    auto ms = straighten_modelfib(fc);
    CHECK(check_proper(ms.functor).ok());
    CHECK(check_relative(ms.functor).ok());
  }
}

TEST_CASE("the non-relative two-object-base total is not a model fibration") {
  auto fm = initial_inclusion(i1_model(chain(2), true, true, false), i1_model(chain(2), false, true, true));
  auto is = build_integral(fm, BuildMode::Force);
  auto fc = integral_candidate(fm, is);
  Report r = check_model_fibration(fc);
  CHECK(r.has("cartesian-weq"));
  CHECK_FALSE(r.has("cocartesian-weq"));
}

TEST_CASE("straightening over the point returns the fiber") {
  auto mc = i1_model(chain(2), true, true, false);
  FibrationCandidate fc{to_point(mc->cat()), mc->pm, point_premodel()};
  auto ms = straighten_modelfib(fc);
  REQUIRE(ms.functor.fiber_models.size() == 1);
  CHECK(ms.functor.fiber(0).cat()->same_structure(*mc->cat()));
  CHECK(ms.functor.fiber(0).pm.weq == mc->pm.weq);
  CHECK(ms.functor.fiber(0).pm.cof == mc->pm.cof);
  CHECK(ms.functor.fiber(0).pm.fib == mc->pm.fib);
}

TEST_CASE("π-weak factorization systems compose") {
  auto fm = slice_like();
  auto is = build_integral(fm);
  auto inner = integral_candidate(fm, is);
  FibrationCandidate outer{to_point(fm.base()), fm.base_model->pm, point_premodel()};
  auto comp = check_wfs_composition(inner, outer);
  CHECK(comp.hypotheses);
  CHECK(comp.instances == 2);
  CHECK(comp.ok());
  // the composite exhibits the total as a model category
  FibrationCandidate whole{compose(outer.pi, inner.pi), is.classes, point_premodel()};
  CHECK(check_relative_model(whole).ok());
}
