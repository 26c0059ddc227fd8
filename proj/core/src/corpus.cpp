#include "fcat/corpus.hpp"

#include <algorithm>

namespace fcat {

ModelPtr point_model() {
  auto pt = point_category();
  return make_model(PreModel{"pt", pt, MorSet::all(*pt), MorSet::all(*pt), MorSet::all(*pt)});
}

ModelPtr trivial_model(const CatPtr& c) {
  MorSet isos(c->num_morphisms());
  for (MorId f = 0; f < c->num_morphisms(); ++f)
    if (c->is_iso(f)) isos.insert(f);
  return make_model(PreModel{"triv(" + c->name() + ")", c, isos, MorSet::all(*c), MorSet::all(*c)});
}

ModelPtr all_weak_interval() {
  auto c = chain(2, "I1");
  return make_model(PreModel{"I1w", c, MorSet::all(*c), MorSet::all(*c), MorSet::identities(*c)});
}

namespace {

ModelPtr inherited_model(const SliceCat& s, const ModelCat& mc) {
  const int k = s.cat->num_morphisms();
  PreModel pm{s.cat->name(), s.cat, MorSet(k), MorSet(k), MorSet(k)};
  for (MorId m = 0; m < k; ++m) {
    const MorId u = s.forget.mor[m];
    if (mc.weq(u)) pm.weq.insert(m);
    if (mc.cof(u)) pm.cof.insert(m);
    if (mc.fib(u)) pm.fib.insert(m);
  }
  return make_model(pm);
}

// Functor between (co)slices that changes the structure morphism and keeps
// the underlying morphisms.
template <class Restructure>
FinFunctor restructure(const FinCat& c, const SliceCat& from, const SliceCat& to, Restructure&& re) {
  std::vector<int> obj_of(c.num_morphisms(), -1);
  for (size_t o = 0; o < to.structure.size(); ++o) obj_of[to.structure[o]] = static_cast<int>(o);
  FinFunctor out{from.cat, to.cat, {}, {}};
  for (MorId s : from.structure) {
    const int o = obj_of[re(s)];
    if (o < 0) throw Error("restructure: no object " + c.morphism_name(re(s)) + " in " + to.cat->name());
    out.obj.push_back(o);
  }
  const FinCat& fs = *from.cat;
  for (MorId m = 0; m < fs.num_morphisms(); ++m) {
    const MorId u = from.forget.mor[m];
    MorId image = kNone;
    for (MorId n : to.cat->hom(out.obj[fs.src(m)], out.obj[fs.tgt(m)]))
      if (to.forget.mor[n] == u) image = n;
    out.mor.push_back(image);
  }
  return out;
}

}  // namespace

ModCatFunctor slice_functor(const ModelPtr& mc) {
  const CatPtr& c = mc->cat();
  ModCatFunctor fm;
  AdjCatFunctor& F = fm.underlying;
  F.name = "slice(" + mc->name() + ")";
  F.base = c;
  fm.base_model = mc;
  std::vector<SliceCat> sl;
  for (ObjId a = 0; a < c->num_objects(); ++a) {
    sl.push_back(slice(c, a));
    F.fiber.push_back(sl.back().cat);
    fm.fiber_models.push_back(inherited_model(sl.back(), *mc));
  }
  for (MorId f = 0; f < c->num_morphisms(); ++f) {
    FinFunctor push = restructure(*c, sl[c->src(f)], sl[c->tgt(f)], [&](MorId s) { return c->compose(f, s); });
    auto adj = find_adjoint(push, Side::Right);
    if (!adj) throw Error("slice_functor: no pullbacks along " + c->morphism_name(f));
    F.on_arrow.push_back(*adj);
  }
  fill_coherence(F);
  return fm;
}

ModCatFunctor coslice_functor(const ModelPtr& mc) {
  const CatPtr& c = mc->cat();
  ModCatFunctor fm;
  AdjCatFunctor& F = fm.underlying;
  F.name = "coslice(" + mc->name() + ")";
  F.base = c;
  fm.base_model = mc;
  std::vector<SliceCat> cs;
  for (ObjId a = 0; a < c->num_objects(); ++a) {
    cs.push_back(coslice(c, a));
    F.fiber.push_back(cs.back().cat);
    fm.fiber_models.push_back(inherited_model(cs.back(), *mc));
  }
  for (MorId f = 0; f < c->num_morphisms(); ++f) {
    FinFunctor pull = restructure(*c, cs[c->tgt(f)], cs[c->src(f)], [&](MorId s) { return c->compose(s, f); });
    auto adj = find_adjoint(pull, Side::Left);
    if (!adj) throw Error("coslice_functor: no pushouts along " + c->morphism_name(f));
    F.on_arrow.push_back(*adj);
  }
  fill_coherence(F);
  return fm;
}

// ---------------------------------------------------------------------------

namespace {

// Arrow-category morphism with the given square, or kNone.
MorId square_morphism(const ArrowCat& ac, ObjId from, ObjId to, ArrowMap sq) {
  for (MorId m : ac.cat->hom(from, to))
    if (ac.square[m] == sq) return m;
  return kNone;
}

MorSet lifting_class(const FinCat& c, const MorSet& given, bool right_of_given) {
  MorSet out(c.num_morphisms());
  for (MorId cand = 0; cand < c.num_morphisms(); ++cand) {
    bool ok = true;
    for (MorId g : given.members()) {
      const MorId i = right_of_given ? g : cand;
      const MorId p = right_of_given ? cand : g;
      for (MorId top : c.hom(c.src(i), c.src(p))) {
        for (MorId bottom : c.hom(c.tgt(i), c.tgt(p)))
          if (c.compose(p, top) == c.compose(bottom, i) && !lifting_exists(c, i, p, top, bottom)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (!ok) break;
    }
    if (ok) out.insert(cand);
  }
  return out;
}

// Iso certificate: bijective functor whose inverse is a functor, carrying
// `from` classes exactly onto `to` classes.
Report certify_iso(const FinFunctor& phi, const PreModel& from, const PreModel& to) {
  Report r;
  if (std::find(phi.mor.begin(), phi.mor.end(), kNone) != phi.mor.end()) {
    r.add("iso-functor", "a morphism has no image");
    return r;
  }
  Report v = validate_functor(phi);
  if (!v.ok()) {
    r.merge(v, "iso-functor");
    return r;
  }
  const FinCat& s = *phi.source;
  const FinCat& t = *phi.target;
  if (s.num_objects() != t.num_objects() || s.num_morphisms() != t.num_morphisms()) {
    r.add("bijection", "sizes differ");
    return r;
  }
  FinFunctor inv{phi.target, phi.source, std::vector<ObjId>(t.num_objects(), kNone),
                 std::vector<MorId>(t.num_morphisms(), kNone)};
  for (ObjId o = 0; o < s.num_objects(); ++o) inv.obj[phi.obj[o]] = o;
  for (MorId m = 0; m < s.num_morphisms(); ++m) inv.mor[phi.mor[m]] = m;
  if (std::find(inv.obj.begin(), inv.obj.end(), kNone) != inv.obj.end() ||
      std::find(inv.mor.begin(), inv.mor.end(), kNone) != inv.mor.end()) {
    r.add("bijection", "not surjective");
    return r;
  }
  Report iv = validate_functor(inv);
  if (!iv.ok()) r.merge(iv, "inverse");
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    const MorId n = phi.mor[m];
    if (from.weq.contains(m) != to.weq.contains(n)) r.add("class-weq", s.morphism_name(m));
    if (from.cof.contains(m) != to.cof.contains(n)) r.add("class-cof", s.morphism_name(m));
    if (from.fib.contains(m) != to.fib.contains(n)) r.add("class-fib", s.morphism_name(m));
  }
  return r;
}

std::optional<IntegralStructure> try_integral(const ModCatFunctor& fm, Report& r) {
  try {
    return build_integral(fm);
  } catch (const ValidationError& e) {
    r.merge(e.report(), "integral");
  }
  return std::nullopt;
}

}  // namespace

ArrowStructures arrow_structures(const ModelPtr& mc) {
  ArrowStructures out;
  const CatPtr& c = mc->cat();
  out.arrows = arrow_category(c);
  const ArrowCat& ac = out.arrows;
  const FinCat& a = *ac.cat;
  const int k = a.num_morphisms();
  MorSet w(k), cof(k), fib(k);
  for (MorId m = 0; m < k; ++m) {
    const ArrowMap& sq = ac.square[m];
    if (mc->weq(sq.top) && mc->weq(sq.bottom)) w.insert(m);
    if (mc->cof(sq.top) && mc->cof(sq.bottom)) cof.insert(m);
    if (mc->fib(sq.top) && mc->fib(sq.bottom)) fib.insert(m);
  }
  out.injective = make_model(PreModel{"inj(" + mc->name() + ")", ac.cat, w, cof, lifting_class(a, cof & w, true)});
  out.projective = make_model(PreModel{"proj(" + mc->name() + ")", ac.cat, w, lifting_class(a, fib & w, false), fib});

  if (!right_proper(*mc).ok()) {
    out.injective_match.add("precondition", mc->name() + " is not right proper");
  } else {
    ModCatFunctor fm = slice_functor(mc);
    out.slice_integral = try_integral(fm, out.injective_match);
    if (out.slice_integral) {
      const GrothCat& g = out.slice_integral->total;
      const FinCat& t = *g.total;
      std::vector<SliceCat> sl;
      for (ObjId x = 0; x < c->num_objects(); ++x) sl.push_back(slice(c, x));
      out.slice_iso = FinFunctor{g.total, ac.cat, {}, {}};
      for (const auto& [obj, o] : g.obj_pair) out.slice_iso.obj.push_back(sl[obj].structure[o]);
      for (MorId m = 0; m < t.num_morphisms(); ++m) {
        const auto [f, phi] = g.mor_pair[m];
        const ArrowMap sq{sl[c->tgt(f)].forget.mor[phi], f};
        out.slice_iso.mor.push_back(
            square_morphism(ac, out.slice_iso.obj[t.src(m)], out.slice_iso.obj[t.tgt(m)], sq));
      }
      out.injective_match.merge(certify_iso(out.slice_iso, out.slice_integral->classes, out.injective->pm));
    }
  }

  if (!left_proper(*mc).ok()) {
    out.projective_match.add("precondition", mc->name() + " is not left proper");
  } else {
    ModCatFunctor fm = coslice_functor(mc);
    out.coslice_integral = try_integral(fm, out.projective_match);
    if (out.coslice_integral) {
      const GrothCat& g = out.coslice_integral->total;
      const FinCat& t = *g.total;
      std::vector<SliceCat> cs;
      for (ObjId x = 0; x < c->num_objects(); ++x) cs.push_back(coslice(c, x));
      out.coslice_iso = FinFunctor{g.total, ac.cat, {}, {}};
      for (const auto& [obj, o] : g.obj_pair) out.coslice_iso.obj.push_back(cs[obj].structure[o]);
      for (MorId m = 0; m < t.num_morphisms(); ++m) {
        const auto [f, phi] = g.mor_pair[m];
        const auto [src_a, o1] = g.obj_pair[t.src(m)];
        const Adjunction& adj = fm.underlying.on_arrow[f];
        // X -> f_!X under A, then φ
        const MorId leg = cs[src_a].forget.mor[adj.unit.comp[o1]];
        const MorId bottom = c->compose(cs[c->tgt(f)].forget.mor[phi], leg);
        out.coslice_iso.mor.push_back(
            square_morphism(ac, out.coslice_iso.obj[t.src(m)], out.coslice_iso.obj[t.tgt(m)], {f, bottom}));
      }
      out.projective_match.merge(
          certify_iso(out.coslice_iso, out.coslice_integral->classes, out.projective->pm));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Example44 example_4_4(const ModelPtr& fiber) {
  Example44 ex;
  const ModelPtr base = all_weak_interval();
  const CatPtr& i1 = base->cat();
  const ModelPtr pt = point_model();
  AdjCatFunctor& F = ex.functor.underlying;
  F.name = "ex44(" + fiber->name() + ")";
  F.base = i1;
  F.fiber = {pt->cat(), fiber->cat()};
  const Adjunction gamma = *find_adjoint(constant_functor(pt->cat(), fiber->cat(), fiber->initial), Side::Right);
  for (MorId f = 0; f < i1->num_morphisms(); ++f)
    F.on_arrow.push_back(i1->is_identity(f) ? identity_adjunction(F.fiber[i1->src(f)]) : gamma);
  fill_coherence(F);
  ex.functor.base_model = base;
  ex.functor.fiber_models = {pt, fiber};
  ex.total = build_integral(ex.functor, BuildMode::Force);
  ex.relative = check_relative(ex.functor).ok();
  if (!ex.total.axioms.ok()) ex.report.add("axioms", ex.total.axioms.merged().summary());

  const ObjId top = 1;
  const MorId up = *i1->find_morphism("0<1");

  // γ_* ⊣ ι_*: base change along I1 -> pt, family A ↦ (A -> 1)_!.
  {
    ModCatFunctor g = constant_modcat("F(1)", pt, fiber);
    IntegralStructure gi = build_integral(g);
    const Adjunction bc = *find_adjoint(constant_functor(i1, pt->cat(), 0), Side::Right);
    const AdjCatFunctor k = reindex(g.underlying, bc.left, "F(1)L");
    AdjFamily fam = family_with_canonical_cells(F, k, {F.on_arrow[up], F.on_arrow[i1->id(top)]});
    ex.star = base_change(ex.functor, ex.total, g, gi, bc, MorphismKind::Left, fam);
    if (!ex.star.total.ok() || !ex.star.total.cert.equivalence)
      ex.report.add("star-equivalence", ex.star.total.report.summary() + "; " + ex.star.total.cert.report.summary());
  }
  // ι_∅ ⊣ γ_∅: base change along the bottom inclusion pt -> I1.
  {
    ModCatFunctor h = constant_modcat("F(0)", pt, pt);
    IntegralStructure hi = build_integral(h);
    const Adjunction bc = *find_adjoint(constant_functor(pt->cat(), i1, 0), Side::Right);
    const AdjCatFunctor k = reindex(F, bc.left, "F|0");
    AdjFamily fam = family_with_canonical_cells(h.underlying, k, {identity_adjunction(F.fiber[0])});
    ex.empty = base_change(h, hi, ex.functor, ex.total, bc, MorphismKind::Left, fam);
    const bool eq = ex.empty.total.ok() && ex.empty.total.cert.equivalence;
    if (eq != ex.relative)
      ex.report.add("empty-equivalence", std::string(eq ? "equivalence" : "no equivalence") + " but functor is " +
                                             (ex.relative ? "relative" : "not relative"));
  }
  return ex;
}

// ---------------------------------------------------------------------------

std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec) {
  if (spec.max_chain > 5 || spec.max_boolean > 3) throw Error("generate_corpus: bound too large");
  std::vector<CatPtr> lattices;
  for (int n = 1; n <= spec.max_chain; ++n) lattices.push_back(chain(n, "C" + std::to_string(n)));
  for (int k = 2; k <= spec.max_boolean; ++k) lattices.push_back(boolean_lattice(k, "B" + std::to_string(k)));

  std::vector<ModelPtr> fibers{point_model()};
  for (const auto& m : enumerate_model_structures(chain(2, "I1"))) fibers.push_back(m);

  std::vector<CorpusEntry> out;
  for (const CatPtr& l : lattices) {
    for (const ModelPtr& mc : enumerate_model_structures(l)) {
      out.push_back({mc->name(), mc, "enumerated on " + l->name()});
      if (spec.slices) {
        out.push_back({"slice(" + mc->name() + ")", slice_functor(mc), "slice functor"});
        out.push_back({"coslice(" + mc->name() + ")", coslice_functor(mc), "coslice functor"});
      }
      if (spec.constants)
        for (const ModelPtr& f : fibers) {
          const std::string name = "const(" + mc->name() + "," + f->name() + ")";
          out.push_back({name, constant_modcat(name, mc, f), "constant functor"});
        }
    }
  }
  return out;
}

}  // namespace fcat
