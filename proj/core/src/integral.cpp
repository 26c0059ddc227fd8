#include "fcat/integral.hpp"

namespace fcat {

namespace {

bool same_cat(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && a->same_structure(*b)); }

MorId canon_iso(const FinCat& c, ObjId a, ObjId b) {
  if (a == b) return c.id(a);
  for (MorId f : c.hom(a, b))
    if (c.is_iso(f)) return f;
  return kNone;
}

MorId inv(const FinCat& c, MorId f) {
  auto i = c.inverse(f);
  if (!i) throw Error("coherence cell " + c.morphism_name(f) + " is not invertible");
  return *i;
}

std::string pair_witness(const FinCat& c, MorId f, const FinCat& d, MorId w) {
  return "f=" + c.morphism_name(f) + ", w=" + d.morphism_name(w);
}

}  // namespace

Report validate_modcat_functor(const ModCatFunctor& fm) {
  Report r = validate_adjcat_functor(fm.underlying);
  if (!r.ok()) return r;
  const FinCat& b = *fm.base();
  if (!fm.base_model || !same_cat(fm.base_model->cat(), fm.base())) r.add("base-model", "model is not on " + b.name());
  if (static_cast<int>(fm.fiber_models.size()) != b.num_objects()) {
    r.add("fiber-models", "one model per base object expected");
    return r;
  }
  for (ObjId a = 0; a < b.num_objects(); ++a)
    if (!fm.fiber_models[a] || !same_cat(fm.fiber_models[a]->cat(), fm.underlying.fiber[a]))
      r.add("fiber-models", "model over " + b.object_name(a) + " is on the wrong category");
  if (!r.ok()) return r;
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    QuillenCert c = check_quillen(fm.underlying.on_arrow[f], fm.fiber(b.src(f)), fm.fiber(b.tgt(f)),
                                  QuillenMode::Adjunction);
    if (!c.left_quillen || !c.right_quillen) r.add("quillen", b.morphism_name(f) + ": " + c.report.summary());
  }
  return r;
}

ModCatFunctor constant_modcat(const std::string& name, const ModelPtr& base, const ModelPtr& fiber) {
  ModCatFunctor fm;
  fm.underlying = constant_adjcat(name, base->cat(), fiber->cat());
  fm.base_model = base;
  fm.fiber_models.assign(base->cat()->num_objects(), fiber);
  return fm;
}

AdjCatFunctor reindex(const AdjCatFunctor& f, const FinFunctor& u, const std::string& name) {
  AdjCatFunctor r;
  r.name = name;
  r.base = u.source;
  const FinCat& s = *u.source;
  for (ObjId a = 0; a < s.num_objects(); ++a) {
    r.fiber.push_back(f.fiber[u.obj[a]]);
    r.id_iso.push_back(f.id_iso[u.obj[a]]);
  }
  for (MorId g = 0; g < s.num_morphisms(); ++g) r.on_arrow.push_back(f.on_arrow[u.mor[g]]);
  for (MorId g = 0; g < s.num_morphisms(); ++g)
    for (MorId h = 0; h < s.num_morphisms(); ++h)
      if (s.tgt(h) == s.src(g)) r.comp_iso.emplace(std::make_pair(g, h), f.comp_iso.at({u.mor[g], u.mor[h]}));
  return r;
}

// ---------------------------------------------------------------------------

IntegralFlags classify_integral(const ModCatFunctor& fm, const GrothCat& g, MorId m) {
  const FinCat& t = *g.total;
  const ModelCat& base = *fm.base_model;
  const auto [f, phi] = g.mor_pair[m];
  const auto [a, x] = g.obj_pair[t.src(m)];
  const ObjId b = fm.base()->tgt(f);
  const ModelCat& fa = fm.fiber(a);
  const ModelCat& fb = fm.fiber(b);
  const Adjunction& adj = fm.underlying.on_arrow[f];
  IntegralFlags flags;
  if (base.weq(f)) {
    const MorId q = replacement(fa, x, Replacement::Cofibrant).second;
    flags.weq = fb.weq(fb.cat()->compose(phi, adj.left.mor[q]));
  }
  flags.fib = base.fib(f) && fa.fib(transpose(adj, x, phi));
  flags.cof = base.cof(f) && fb.cof(phi);
  return flags;
}

Report check_relative(const ModCatFunctor& fm) {
  Report r;
  const FinCat& b = *fm.base();
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    if (!fm.base_model->weq(f)) continue;
    QuillenCert c =
        check_quillen(fm.underlying.on_arrow[f], fm.fiber(b.src(f)), fm.fiber(b.tgt(f)), QuillenMode::Equivalence);
    if (!c.equivalence) r.add("relative", b.morphism_name(f));
  }
  return r;
}

ProperReport check_proper(const ModCatFunctor& fm) {
  ProperReport r;
  const FinCat& b = *fm.base();
  const ModelCat& base = *fm.base_model;
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const ModelCat& fa = fm.fiber(b.src(f));
    const ModelCat& fb = fm.fiber(b.tgt(f));
    const Adjunction& adj = fm.underlying.on_arrow[f];
    if (base.cof(f) && base.weq(f))
      for (MorId w = 0; w < fa.cat()->num_morphisms(); ++w)
        if (fa.weq(w) && !fb.weq(adj.left.mor[w])) {
          r.left.add("left-proper", pair_witness(b, f, *fa.cat(), w));
          break;
        }
    if (base.fib(f) && base.weq(f))
      for (MorId w = 0; w < fb.cat()->num_morphisms(); ++w)
        if (fb.weq(w) && !fa.weq(adj.right.mor[w])) {
          r.right.add("right-proper", pair_witness(b, f, *fb.cat(), w));
          break;
        }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// (f, φ) = (f'', φ'') ∘ (f', φ') with base legs from `base_fact` and the
// middle fiber factored by its own factorization of the same kind.
void integral_factor(const ModCatFunctor& fm, const GrothCat& g, MorId m, bool first_kind,
                     FunctorialFactorization& out) {
  const FinCat& b = *fm.base();
  const AdjCatFunctor& F = fm.underlying;
  const auto [f, phi] = g.mor_pair[m];
  const ObjId x = g.obj_pair[g.total->src(m)].second;
  const ObjId y = g.obj_pair[g.total->tgt(m)].second;
  const FunctorialFactorization& bf = first_kind ? fm.base_model->fact1 : fm.base_model->fact2;
  const MorId f1 = bf.first[f], f2 = bf.second[f];
  const ObjId c = bf.middle[f];
  const FinCat& fib_b = *F.fiber[b.tgt(f)];
  const MorId coh = F.comp_iso.at({f2, f1}).comp[x];
  const MorId psi = transpose(F.on_arrow[f2], F.push(f1).obj[x], fib_b.compose(phi, inv(fib_b, coh)));
  const FunctorialFactorization& ff = first_kind ? fm.fiber(c).fact1 : fm.fiber(c).fact2;
  const ObjId z = ff.middle[psi];
  const MorId phi2 = untranspose(F.on_arrow[f2], y, ff.second[psi]);
  const ObjId mid = g.object(c, z);
  out.middle.push_back(mid);
  out.first.push_back(g.morphism(g.total->src(m), f1, ff.first[psi]));
  out.second.push_back(g.morphism(mid, f2, phi2));
}

}  // namespace

IntegralStructure build_integral(const ModCatFunctor& fm, BuildMode mode) {
  Report v = validate_modcat_functor(fm);
  if (!v.ok()) throw ValidationError("integral " + fm.name(), v);
  if (mode == BuildMode::Require) {
    Report pr;
    ProperReport p = check_proper(fm);
    pr.merge(p.left);
    pr.merge(p.right);
    pr.merge(check_relative(fm));
    if (!pr.ok()) throw ValidationError("integral " + fm.name() + " requires a proper relative functor", pr);
  }
  IntegralStructure is;
  is.total = integrate_cat(fm.underlying);
  const FinCat& t = *is.total.total;
  const int n = t.num_morphisms();
  is.classes = PreModel{"int(" + fm.name() + ")", is.total.total, MorSet(n), MorSet(n), MorSet(n)};
  for (MorId m = 0; m < n; ++m) {
    IntegralFlags fl = classify_integral(fm, is.total, m);
    if (fl.weq) is.classes.weq.insert(m);
    if (fl.cof) is.classes.cof.insert(m);
    if (fl.fib) is.classes.fib.insert(m);
    integral_factor(fm, is.total, m, true, is.fact1);
    integral_factor(fm, is.total, m, false, is.fact2);
  }
  complete_middle_map(t, is.fact1);
  complete_middle_map(t, is.fact2);
  is.axioms = check_model_axioms(is.classes, &is.fact1, &is.fact2);
  if (is.axioms.ok())
    is.model = assume_model(is.classes, is.fact1, is.fact2);
  else if (mode == BuildMode::Require)
    throw ValidationError("integral " + fm.name(), is.axioms.merged());
  return is;
}

Report verify_trivial_characterization(const ModCatFunctor& fm, const IntegralStructure& is) {
  Report r;
  const GrothCat& g = is.total;
  const FinCat& t = *g.total;
  const ModelCat& base = *fm.base_model;
  for (MorId m = 0; m < t.num_morphisms(); ++m) {
    const auto [f, phi] = g.mor_pair[m];
    const auto [a, x] = g.obj_pair[t.src(m)];
    const ModelCat& fa = fm.fiber(a);
    const ModelCat& fb = fm.fiber(fm.base()->tgt(f));
    const bool tc = is.classes.cof.contains(m) && is.classes.weq.contains(m);
    const bool tc2 = base.cof(f) && base.weq(f) && fb.cof(phi) && fb.weq(phi);
    if (tc != tc2) r.add("characterization-cof", t.morphism_name(m));
    const MorId ad = transpose(fm.underlying.on_arrow[f], x, phi);
    const bool tf = is.classes.fib.contains(m) && is.classes.weq.contains(m);
    const bool tf2 = base.fib(f) && base.weq(f) && fa.fib(ad) && fa.weq(ad);
    if (tf != tf2) r.add("characterization-fib", t.morphism_name(m));
  }
  return r;
}

Report verify_weq_symmetry(const ModCatFunctor& fm, const IntegralStructure& is) {
  Report r;
  const GrothCat& g = is.total;
  const FinCat& t = *g.total;
  for (MorId m = 0; m < t.num_morphisms(); ++m) {
    const auto [f, phi] = g.mor_pair[m];
    const auto [a, x] = g.obj_pair[t.src(m)];
    const ObjId y = g.obj_pair[t.tgt(m)].second;
    const Adjunction& adj = fm.underlying.on_arrow[f];
    bool sym = fm.base_model->weq(f);
    if (sym) {
      const MorId j = replacement(fm.fiber(fm.base()->tgt(f)), y, Replacement::Fibrant).second;
      const FinCat& fa = *fm.fiber(a).cat();
      sym = fm.fiber(a).weq(fa.compose(adj.right.mor[j], transpose(adj, x, phi)));
    }
    if (sym != is.classes.weq.contains(m)) r.add("weq-symmetry", t.morphism_name(m));
  }
  return r;
}

// ---------------------------------------------------------------------------

AdjFamily family_with_canonical_cells(const AdjCatFunctor& h, const AdjCatFunctor& k,
                                      std::vector<Adjunction> component) {
  AdjFamily fam;
  fam.component = std::move(component);
  const FinCat& b = *h.base;
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const ObjId a = b.src(f), c = b.tgt(f);
    AdjPseudoTrans t;
    t.from = compose_adjunctions(h.on_arrow[f], fam.component[c]);
    t.to = compose_adjunctions(fam.component[a], k.on_arrow[f]);
    t.sigma = NatTrans{t.from.left, t.to.left, {}};
    t.tau = NatTrans{t.to.right, t.from.right, {}};
    const FinCat& kc = *k.fiber[c];
    const FinCat& ha = *h.fiber[a];
    for (ObjId x = 0; x < ha.num_objects(); ++x) {
      const MorId s = canon_iso(kc, t.from.left.obj[x], t.to.left.obj[x]);
      if (s == kNone) throw Error("family: no naturality isomorphism over " + b.morphism_name(f));
      t.sigma.comp.push_back(s);
    }
    for (ObjId y = 0; y < kc.num_objects(); ++y) {
      const MorId s = canon_iso(ha, t.to.right.obj[y], t.from.right.obj[y]);
      if (s == kNone) throw Error("family: no naturality isomorphism over " + b.morphism_name(f));
      t.tau.comp.push_back(s);
    }
    fam.naturality.push_back(std::move(t));
  }
  return fam;
}

Report validate_family(const AdjCatFunctor& h, const AdjCatFunctor& k, const AdjFamily& fam) {
  Report r;
  const FinCat& b = *h.base;
  if (!same_cat(h.base, k.base) || static_cast<int>(fam.component.size()) != b.num_objects() ||
      static_cast<int>(fam.naturality.size()) != b.num_morphisms()) {
    r.add("shape", "family does not match the base");
    return r;
  }
  for (ObjId a = 0; a < b.num_objects(); ++a) {
    const Adjunction& c = fam.component[a];
    if (!same_cat(c.lower(), h.fiber[a]) || !same_cat(c.upper(), k.fiber[a])) {
      r.add("component", "wrong categories at " + b.object_name(a));
      continue;
    }
    Report cr = check_adjunction(c);
    if (!cr.ok()) r.merge(cr, "component " + b.object_name(a));
  }
  if (!r.ok()) return r;
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const AdjPseudoTrans& t = fam.naturality[f];
    const Adjunction from = compose_adjunctions(h.on_arrow[f], fam.component[b.tgt(f)]);
    const Adjunction to = compose_adjunctions(fam.component[b.src(f)], k.on_arrow[f]);
    if (!same_adjunction(t.from, from) || !same_adjunction(t.to, to)) {
      r.add("naturality", "cell over " + b.morphism_name(f) + " has the wrong ends");
      continue;
    }
    Report tr = check_adj_pseudo_trans(t);
    if (!tr.ok()) r.merge(tr, "naturality " + b.morphism_name(f));
  }
  if (!r.ok()) return r;

  for (ObjId a = 0; a < b.num_objects(); ++a) {
    const FinCat& ka = *k.fiber[a];
    const FinFunctor& sa = fam.component[a].left;
    const auto& n = fam.naturality[b.id(a)].sigma.comp;
    for (ObjId x = 0; x < h.fiber[a]->num_objects(); ++x)
      if (ka.compose(n[x], sa.mor[h.id_iso[a].comp[x]]) != k.id_iso[a].comp[sa.obj[x]]) {
        r.add("coherence-unit", b.object_name(a) + " at " + h.fiber[a]->object_name(x));
        break;
      }
  }
  for (MorId f = 0; f < b.num_morphisms(); ++f)
    for (MorId g = 0; g < b.num_morphisms(); ++g) {
      if (b.tgt(f) != b.src(g)) continue;
      const ObjId c = b.tgt(g);
      const FinCat& kc = *k.fiber[c];
      const FinFunctor& sc = fam.component[c].left;
      const FinFunctor& sa = fam.component[b.src(f)].left;
      const auto& nf = fam.naturality[f].sigma.comp;
      const auto& ng = fam.naturality[g].sigma.comp;
      const auto& ngf = fam.naturality[b.compose(g, f)].sigma.comp;
      const auto& ch = h.comp_iso.at({g, f}).comp;
      const auto& ck = k.comp_iso.at({g, f}).comp;
      for (ObjId x = 0; x < h.fiber[b.src(f)]->num_objects(); ++x) {
        const MorId lhs = kc.compose(k.push(g).mor[nf[x]], kc.compose(ng[h.push(f).obj[x]], sc.mor[ch[x]]));
        const MorId rhs = kc.compose(ck[sa.obj[x]], ngf[x]);
        if (lhs != rhs) {
          r.add("coherence-composite", "(" + b.morphism_name(g) + ", " + b.morphism_name(f) + ")");
          break;
        }
      }
    }
  return r;
}

namespace {

// (A,X) ↦ (uA, Σ_A X), (f,φ) ↦ (uf, Σ_{A'}(φ) ∘ n_{f,X}^{-1}). The family
// runs from H to K∘u, so its naturality cells live in the fibers of K.
FinFunctor left_on_totals(const GrothCat& src, const GrothCat& tgt, const FinFunctor& u, const AdjFamily& fam) {
  const FinCat& s = *src.total;
  const AdjCatFunctor& K = *tgt.functor;
  FinFunctor out{src.total, tgt.total, {}, {}};
  for (const auto& [a, x] : src.obj_pair) out.obj.push_back(tgt.object(u.obj[a], fam.component[a].left.obj[x]));
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    const auto [f, phi] = src.mor_pair[m];
    const ObjId x = src.obj_pair[s.src(m)].second;
    const ObjId a2 = src.obj_pair[s.tgt(m)].first;
    const FinCat& kc = *K.fiber[u.obj[a2]];
    const MorId chi = kc.compose(fam.component[a2].left.mor[phi], inv(kc, fam.naturality[f].sigma.comp[x]));
    out.mor.push_back(tgt.morphism(out.obj[s.src(m)], u.mor[f], chi));
  }
  return out;
}

QuillenCert certify(const Adjunction& adj, const IntegralStructure& fi, const IntegralStructure& gi, QuillenMode mode,
                    Report& r) {
  if (!fi.model || !gi.model) {
    r.add("integral-model", "a total does not carry a model structure");
    return {};
  }
  return check_quillen(adj, *fi.model, *gi.model, mode);
}

}  // namespace

TotalAdjunction integrate_quillen_transformation(const ModCatFunctor& fm, const IntegralStructure& fi,
                                                 const ModCatFunctor& gm, const IntegralStructure& gi,
                                                 const AdjFamily& fam, QuillenMode mode) {
  TotalAdjunction out;
  const FinCat& b = *fm.base();
  out.report.merge(validate_family(fm.underlying, gm.underlying, fam));
  if (!out.report.ok()) return out;
  for (ObjId a = 0; a < b.num_objects(); ++a) {
    QuillenCert c = check_quillen(fam.component[a], fm.fiber(a), gm.fiber(a), QuillenMode::Adjunction);
    if (!c.left_quillen) out.report.add("component-quillen", b.object_name(a) + ": " + c.report.summary());
  }
  if (!out.report.ok()) return out;

  const GrothCat& gf = fi.total;
  const GrothCat& gg = gi.total;
  const AdjCatFunctor& G = gm.underlying;
  FinFunctor left = left_on_totals(gf, gg, identity_functor(fm.base()), fam);
  std::vector<ObjId> right_obj;
  std::vector<MorId> counit;
  for (ObjId t = 0; t < gg.total->num_objects(); ++t) {
    const auto [a, y] = gg.obj_pair[t];
    const Adjunction& c = fam.component[a];
    const ObjId ty = c.right.obj[y];
    right_obj.push_back(gf.object(a, ty));
    const FinCat& ga = *G.fiber[a];
    const MorId psi = ga.compose(c.counit.comp[y], inv(ga, G.id_iso[a].comp[c.left.obj[ty]]));
    counit.push_back(gg.morphism(left.obj[right_obj.back()], b.id(a), psi));
  }
  out.adjunction = adjunction_from_counits(left, right_obj, counit);
  if (!out.adjunction) {
    out.report.add("adjunction", "integrated family is not an adjunction");
    return out;
  }
  out.cert = certify(*out.adjunction, fi, gi, mode, out.report);
  return out;
}

BaseChangeCert base_change(const ModCatFunctor& fm, const IntegralStructure& fi, const ModCatFunctor& gm,
                           const IntegralStructure& gi, const Adjunction& bc, MorphismKind kind, const AdjFamily& fam) {
  BaseChangeCert out;
  const FinCat& m = *fm.base();
  const FinCat& n = *gm.base();
  const AdjCatFunctor& F = fm.underlying;
  const AdjCatFunctor& G = gm.underlying;
  out.base = check_quillen(bc, *fm.base_model, *gm.base_model, QuillenMode::Equivalence);

  const bool left_kind = kind == MorphismKind::Left;
  const AdjCatFunctor h = left_kind ? F : reindex(F, bc.right, F.name + "R");
  const AdjCatFunctor k = left_kind ? reindex(G, bc.left, G.name + "L") : G;
  out.total.report.merge(validate_family(h, k, fam));
  if (!out.total.report.ok()) return out;

  // Componentwise Quillen and equivalence on the relevant indices.
  const FinCat& idx = left_kind ? m : n;
  out.family_quillen = out.family_equivalence = true;
  for (ObjId i = 0; i < idx.num_objects(); ++i) {
    const ModelCat& src = left_kind ? fm.fiber(i) : fm.fiber(bc.right.obj[i]);
    const ModelCat& tgt = left_kind ? gm.fiber(bc.left.obj[i]) : gm.fiber(i);
    const bool relevant = left_kind ? fm.base_model->cofibrant(i) : gm.base_model->fibrant(i);
    QuillenCert c = check_quillen(fam.component[i], src, tgt,
                                  relevant ? QuillenMode::Equivalence : QuillenMode::Adjunction);
    if (!c.left_quillen) {
      out.family_quillen = false;
      out.family_report.add("component-quillen", idx.object_name(i));
    }
    if (relevant && !c.equivalence) {
      out.family_equivalence = false;
      out.family_report.add("component-equivalence", idx.object_name(i));
    }
  }

  const GrothCat& gf = fi.total;
  const GrothCat& gg = gi.total;
  if (left_kind) {
    FinFunctor left = left_on_totals(gf, gg, bc.left, fam);
    std::vector<ObjId> right_obj;
    std::vector<MorId> counit;
    for (ObjId t = 0; t < gg.total->num_objects(); ++t) {
      const auto [b, y] = gg.obj_pair[t];
      const ObjId rb = bc.right.obj[b];
      const MorId eps = bc.counit.comp[b];
      const Adjunction& sig = fam.component[rb];
      const ObjId ey = G.pull(eps).obj[y];
      right_obj.push_back(gf.object(rb, sig.right.obj[ey]));
      const FinCat& gb = *G.fiber[b];
      const MorId psi = gb.compose(G.on_arrow[eps].counit.comp[y], G.push(eps).mor[sig.counit.comp[ey]]);
      counit.push_back(gg.morphism(left.obj[right_obj.back()], eps, psi));
    }
    out.total.adjunction = adjunction_from_counits(left, right_obj, counit);
  } else {
    // Ψ^R(g, ψ) = (Rg, adjunct of τ_{g,Y'} ∘ Θ^R_B(ψ^ad)).
    const FinCat& tg = *gg.total;
    FinFunctor right{gg.total, gf.total, {}, {}};
    for (const auto& [b, y] : gg.obj_pair) right.obj.push_back(gf.object(bc.right.obj[b], fam.component[b].right.obj[y]));
    for (MorId mm = 0; mm < tg.num_morphisms(); ++mm) {
      const auto [g, psi] = gg.mor_pair[mm];
      const auto [b, y] = gg.obj_pair[tg.src(mm)];
      const auto [b2, y2] = gg.obj_pair[tg.tgt(mm)];
      const MorId rg = bc.right.mor[g];
      const FinCat& fb = *F.fiber[bc.right.obj[b]];
      const MorId psi_ad = transpose(G.on_arrow[g], y, psi);
      const MorId chi_ad = fb.compose(fam.naturality[g].tau.comp[y2], fam.component[b].right.mor[psi_ad]);
      const MorId chi = untranspose(F.on_arrow[rg], fam.component[b2].right.obj[y2], chi_ad);
      right.mor.push_back(gf.morphism(right.obj[tg.src(mm)], rg, chi));
    }
    std::vector<ObjId> left_obj;
    std::vector<MorId> unit;
    for (ObjId t = 0; t < gf.total->num_objects(); ++t) {
      const auto [a, x] = gf.obj_pair[t];
      const MorId eta = bc.unit.comp[a];
      const ObjId la = bc.left.obj[a];
      const Adjunction& th = fam.component[la];
      const ObjId ex = F.push(eta).obj[x];
      left_obj.push_back(gg.object(la, th.left.obj[ex]));
      unit.push_back(gf.morphism(t, eta, th.unit.comp[ex]));
    }
    out.total.adjunction = adjunction_from_units(right, left_obj, unit);
  }
  if (!out.total.adjunction) {
    out.total.report.add("adjunction", "base-changed family is not an adjunction");
    return out;
  }
  out.total.cert = certify(*out.total.adjunction, fi, gi, QuillenMode::Equivalence, out.total.report);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Restriction {
  ModCatFunctor fm;
  IntegralStructure is;
};

// F restricted to a slice {a}×N (fix_first) or M×{b} of the product base.
Restriction restrict_to(const ModCatFunctor& fm, const ModelPtr& along, const ProductCat& p, ObjId fixed,
                        bool fix_first) {
  const FinCat& s = *along->cat();
  const FinCat& other = *(fix_first ? p.proj1.target : p.proj2.target);
  FinFunctor u{along->cat(), p.cat, {}, {}};
  for (ObjId i = 0; i < s.num_objects(); ++i) u.obj.push_back(fix_first ? p.obj(fixed, i) : p.obj(i, fixed));
  for (MorId g = 0; g < s.num_morphisms(); ++g)
    u.mor.push_back(fix_first ? p.mor(other.id(fixed), g) : p.mor(g, other.id(fixed)));
  Restriction r;
  r.fm.underlying = reindex(fm.underlying, u, fm.name() + (fix_first ? "^" : "_") + other.object_name(fixed));
  r.fm.base_model = along;
  for (ObjId i = 0; i < s.num_objects(); ++i) r.fm.fiber_models.push_back(fm.fiber_models[u.obj[i]]);
  ProperReport pr = check_proper(r.fm);
  Report rel = check_relative(r.fm);
  if (!pr.ok() || !rel.ok()) {
    Report all;
    all.merge(pr.left);
    all.merge(pr.right);
    all.merge(rel);
    throw ValidationError("fubini: restriction " + r.fm.name(), all);
  }
  r.is = build_integral(r.fm, BuildMode::Require);
  return r;
}

// Outer functor over the fixed-index factor: index ↦ ∫ of the restriction,
// arrows integrated from the base-direction adjunctions of F.
ModCatFunctor outer_functor(const ModCatFunctor& fm, const ModelPtr& outer_base, const ProductCat& p, bool over_first,
                            const std::vector<Restriction>& inner) {
  const FinCat& ob = *outer_base->cat();
  const FinCat& in = *(over_first ? p.proj2.target : p.proj1.target);
  ModCatFunctor out;
  out.underlying.name = "int(" + fm.name() + (over_first ? ")_N" : ")_M");
  out.underlying.base = outer_base->cat();
  out.base_model = outer_base;
  for (const auto& r : inner) {
    out.underlying.fiber.push_back(r.is.total.total);
    out.fiber_models.push_back(r.is.model);
  }
  for (MorId f = 0; f < ob.num_morphisms(); ++f) {
    const Restriction& src = inner[ob.src(f)];
    const Restriction& tgt = inner[ob.tgt(f)];
    std::vector<Adjunction> comps;
    for (ObjId i = 0; i < in.num_objects(); ++i)
      comps.push_back(fm.underlying.on_arrow[over_first ? p.mor(f, in.id(i)) : p.mor(in.id(i), f)]);
    AdjFamily fam = family_with_canonical_cells(src.fm.underlying, tgt.fm.underlying, std::move(comps));
    TotalAdjunction t = integrate_quillen_transformation(src.fm, src.is, tgt.fm, tgt.is, fam);
    if (!t.ok()) throw ValidationError("fubini: outer arrow " + ob.morphism_name(f), t.report);
    out.underlying.on_arrow.push_back(*t.adjunction);
  }
  fill_coherence(out.underlying);
  return out;
}

// ((f,g), φ) ↦ (f, (g, φ ∘ c^{-1})) with c the coherence cell splitting (f,g)
// as the inner step after the outer one.
Report compare_iterated(const ModCatFunctor& fm, const IntegralStructure& whole, const ProductCat& p, bool over_first,
                        const std::vector<Restriction>& inner, const IntegralStructure& iter) {
  Report r;
  const GrothCat& w = whole.total;
  const FinCat& t = *w.total;
  const FinCat& m1 = *p.proj1.target;
  const FinCat& m2 = *p.proj2.target;
  const AdjCatFunctor& F = fm.underlying;
  FinFunctor phi{w.total, iter.total.total, {}, {}};
  auto split = [&](ObjId ab) {
    auto [a, b] = p.split_obj(ab);
    return over_first ? std::pair{a, b} : std::pair{b, a};
  };
  for (const auto& [ab, x] : w.obj_pair) {
    const auto [o, i] = split(ab);
    phi.obj.push_back(iter.total.object(o, inner[o].is.total.object(i, x)));
  }
  for (MorId m = 0; m < t.num_morphisms(); ++m) {
    const auto [fg, ph] = w.mor_pair[m];
    const auto [f, g] = p.split_mor(fg);
    const ObjId x = w.obj_pair[t.src(m)].second;
    const auto [a, b] = p.split_obj(t.src(m) == kNone ? 0 : w.obj_pair[t.src(m)].first);
    const auto [a2, b2] = p.split_obj(w.obj_pair[t.tgt(m)].first);
    // outer step first, inner step second
    const MorId outer_step = over_first ? p.mor(f, m2.id(b)) : p.mor(m1.id(a), g);
    const MorId inner_step = over_first ? p.mor(m1.id(a2), g) : p.mor(f, m2.id(b2));
    const FinCat& fc = *F.fiber[p.obj(a2, b2)];
    const MorId c = F.comp_iso.at({inner_step, outer_step}).comp[x];
    const MorId ph2 = fc.compose(ph, inv(fc, c));
    const ObjId o2 = over_first ? a2 : b2;
    const ObjId i1 = over_first ? b : a;
    const MorId o_mor = over_first ? f : g;
    const MorId i_mor = over_first ? g : f;
    const GrothCat& inner_t = inner[o2].is.total;
    const MorId in = inner_t.morphism(inner_t.object(i1, F.push(outer_step).obj[x]), i_mor, ph2);
    phi.mor.push_back(in == kNone ? kNone : iter.total.morphism(phi.obj[t.src(m)], o_mor, in));
    if (phi.mor.back() == kNone) {
      r.add("iso-functor", "no image for " + t.morphism_name(m));
      return r;
    }
  }
  Report v = validate_functor(phi);
  if (!v.ok()) {
    r.merge(v, "iso-functor");
    return r;
  }
  const FinCat& it = *iter.total.total;
  std::vector<char> so(it.num_objects(), 0), sm(it.num_morphisms(), 0);
  for (ObjId o : phi.obj) so[o] = 1;
  for (MorId mm : phi.mor) sm[mm] = 1;
  if (it.num_objects() != t.num_objects() || it.num_morphisms() != t.num_morphisms() ||
      std::find(so.begin(), so.end(), 0) != so.end() || std::find(sm.begin(), sm.end(), 0) != sm.end())
    r.add("bijection", "canonical comparison is not bijective");
  for (MorId m = 0; m < t.num_morphisms(); ++m) {
    const MorId mm = phi.mor[m];
    if (whole.classes.weq.contains(m) != iter.classes.weq.contains(mm)) r.add("class-weq", t.morphism_name(m));
    if (whole.classes.cof.contains(m) != iter.classes.cof.contains(mm)) r.add("class-cof", t.morphism_name(m));
    if (whole.classes.fib.contains(m) != iter.classes.fib.contains(mm)) r.add("class-fib", t.morphism_name(m));
  }
  return r;
}

}  // namespace

FubiniReport fubini(const ModCatFunctor& fm, const ModelPtr& m, const ModelPtr& n, const ProductCat& p) {
  FubiniReport out;
  out.whole = build_integral(fm, BuildMode::Require);
  std::vector<Restriction> over_m, over_n;
  for (ObjId a = 0; a < m->cat()->num_objects(); ++a) over_m.push_back(restrict_to(fm, n, p, a, true));
  for (ObjId b = 0; b < n->cat()->num_objects(); ++b) over_n.push_back(restrict_to(fm, m, p, b, false));
  out.outer_m = outer_functor(fm, m, p, true, over_m);
  out.outer_n = outer_functor(fm, n, p, false, over_n);
  for (const auto& r : over_m) out.inner_m.push_back(r.is);
  for (const auto& r : over_n) out.inner_n.push_back(r.is);

  auto iterate = [&](const ModCatFunctor& outer, Report& rep) {
    ProperReport pr = check_proper(outer);
    rep.merge(pr.left, "outer");
    rep.merge(pr.right, "outer");
    rep.merge(check_relative(outer), "outer");
    IntegralStructure is = build_integral(outer, BuildMode::Force);
    if (!is.axioms.ok()) rep.merge(is.axioms.merged(), "iterated-axioms");
    return is;
  };
  out.iterated_m = iterate(out.outer_m, out.iso_m);
  out.iterated_n = iterate(out.outer_n, out.iso_n);
  out.iso_m.merge(compare_iterated(fm, out.whole, p, true, over_m, out.iterated_m));
  out.iso_n.merge(compare_iterated(fm, out.whole, p, false, over_n, out.iterated_n));
  return out;
}

}  // namespace fcat
