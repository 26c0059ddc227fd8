#pragma once

// Small model categories and functors shared by the unit tests.

#include "fcat/integral.hpp"

namespace fcat::fixtures {

inline MorId arrow01(const FinCat& c) { return *c.find_morphism("0<1"); }

// Model on a copy of I1; the flags say whether 0<1 lies in W, Cof, Fib.
inline ModelPtr i1_model(const CatPtr& c, bool w, bool cof, bool fib) {
  PreModel pm{"I1", c, MorSet::identities(*c), MorSet::identities(*c), MorSet::identities(*c)};
  const MorId a = arrow01(*c);
  if (w) pm.weq.insert(a);
  if (cof) pm.cof.insert(a);
  if (fib) pm.fib.insert(a);
  return make_model(pm);
}

inline ModelPtr point_model() {
  auto pt = point_category();
  return make_model(PreModel{"pt", pt, MorSet::all(*pt), MorSet::all(*pt), MorSet::all(*pt)});
}

// F(0) = pt, F(1) = fiber, the arrow acting by the initial object.
inline ModCatFunctor initial_inclusion(const ModelPtr& base, const ModelPtr& fiber) {
  ModCatFunctor fm;
  AdjCatFunctor& F = fm.underlying;
  F.name = "init";
  F.base = base->cat();
  auto pt = point_model();
  F.fiber = {pt->cat(), fiber->cat()};
  for (MorId f = 0; f < F.base->num_morphisms(); ++f) {
    if (F.base->is_identity(f))
      F.on_arrow.push_back(identity_adjunction(F.fiber[F.base->src(f)]));
    else
      F.on_arrow.push_back(*find_adjoint(constant_functor(pt->cat(), fiber->cat(), fiber->initial), Side::Right));
  }
  fill_coherence(F);
  fm.base_model = base;
  fm.fiber_models = {pt, fiber};
  return fm;
}

// All model structures on I1, built by hand.
inline std::vector<ModelPtr> all_i1_models(const CatPtr& c) {
  std::vector<ModelPtr> out;
  for (int bits = 0; bits < 8; ++bits) {
    PreModel pm{"I1", c, MorSet::identities(*c), MorSet::identities(*c), MorSet::identities(*c)};
    const MorId a = arrow01(*c);
    if (bits & 1) pm.weq.insert(a);
    if (bits & 2) pm.cof.insert(a);
    if (bits & 4) pm.fib.insert(a);
    if (check_model_axioms(pm).ok()) out.push_back(make_model(pm));
  }
  return out;
}

}  // namespace fcat::fixtures
