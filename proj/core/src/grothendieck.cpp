#include "fcat/grothendieck.hpp"

#include <algorithm>

namespace fcat {

namespace {

bool same_cat(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && a->same_structure(*b)); }

// First isomorphism a -> b in canonical order (the identity when a == b).
MorId canonical_iso(const FinCat& c, ObjId a, ObjId b) {
  if (a == b) return c.id(a);
  for (MorId f : c.hom(a, b))
    if (c.is_iso(f)) return f;
  return kNone;
}

}  // namespace

// ---------------------------------------------------------------------------

Report validate_adjcat_functor(const AdjCatFunctor& F) {
  Report r;
  const FinCat& b = *F.base;
  if (static_cast<int>(F.fiber.size()) != b.num_objects() || static_cast<int>(F.on_arrow.size()) != b.num_morphisms() ||
      static_cast<int>(F.id_iso.size()) != b.num_objects()) {
    r.add("shape", "fibers, adjunctions or unit cells do not cover the base");
    return r;
  }
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const Adjunction& adj = F.on_arrow[f];
    if (!same_cat(adj.lower(), F.fiber[b.src(f)]) || !same_cat(adj.upper(), F.fiber[b.tgt(f)])) {
      r.add("typing", "adjunction over " + b.morphism_name(f) + " has the wrong fibers");
      continue;
    }
    Report a = check_adjunction(adj);
    if (!a.ok()) r.merge(a, "adjunction " + b.morphism_name(f));
  }
  if (!r.ok()) return r;

  for (ObjId a = 0; a < b.num_objects(); ++a) {
    const NatTrans& u = F.id_iso[a];
    NatTrans t{identity_functor(F.fiber[a]), F.push(b.id(a)), u.comp};
    Report v = validate_nat_trans(t);
    if (!v.ok() || !is_nat_iso(t)) r.add("unit-cell", "at " + b.object_name(a));
  }
  for (MorId g = 0; g < b.num_morphisms(); ++g)
    for (MorId f = 0; f < b.num_morphisms(); ++f) {
      if (b.tgt(f) != b.src(g)) continue;
      auto it = F.comp_iso.find({g, f});
      const std::string w = "(" + b.morphism_name(g) + ", " + b.morphism_name(f) + ")";
      if (it == F.comp_iso.end()) {
        r.add("composition-cell", "missing at " + w);
        continue;
      }
      NatTrans t{F.push(b.compose(g, f)), compose(F.push(g), F.push(f)), it->second.comp};
      Report v = validate_nat_trans(t);
      if (!v.ok() || !is_nat_iso(t)) r.add("composition-cell", "not a natural isomorphism at " + w);
    }
  if (!r.ok()) return r;

  // Unit laws.
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const ObjId a = b.src(f), c = b.tgt(f);
    const FinCat& fc = *F.fiber[c];
    const auto& right_unit = F.comp_iso.at({f, b.id(a)}).comp;
    const auto& left_unit = F.comp_iso.at({b.id(c), f}).comp;
    for (ObjId x = 0; x < F.fiber[a]->num_objects(); ++x) {
      if (right_unit[x] != F.push(f).mor[F.id_iso[a].comp[x]])
        r.add("unit-law", "right, at " + b.morphism_name(f) + " and " + F.fiber[a]->object_name(x));
      if (left_unit[x] != F.id_iso[c].comp[F.push(f).obj[x]])
        r.add("unit-law", "left, at " + b.morphism_name(f) + " and " + F.fiber[a]->object_name(x));
    }
    (void)fc;
  }
  // Cocycle.
  for (MorId f = 0; f < b.num_morphisms(); ++f)
    for (MorId g = 0; g < b.num_morphisms(); ++g) {
      if (b.tgt(f) != b.src(g)) continue;
      for (MorId h = 0; h < b.num_morphisms(); ++h) {
        if (b.tgt(g) != b.src(h)) continue;
        const FinCat& fd = *F.fiber[b.tgt(h)];
        const auto& c_gf = F.comp_iso.at({g, f}).comp;
        const auto& c_h_gf = F.comp_iso.at({h, b.compose(g, f)}).comp;
        const auto& c_hg = F.comp_iso.at({h, g}).comp;
        const auto& c_hg_f = F.comp_iso.at({b.compose(h, g), f}).comp;
        for (ObjId x = 0; x < F.fiber[b.src(f)]->num_objects(); ++x) {
          const MorId lhs = fd.compose(F.push(h).mor[c_gf[x]], c_h_gf[x]);
          const MorId rhs = fd.compose(c_hg[F.push(f).obj[x]], c_hg_f[x]);
          if (lhs != rhs) {
            r.add("cocycle", "(" + b.morphism_name(h) + ", " + b.morphism_name(g) + ", " + b.morphism_name(f) +
                                 ") at " + F.fiber[b.src(f)]->object_name(x));
            break;
          }
        }
      }
    }
  return r;
}

void fill_coherence(AdjCatFunctor& F) {
  const FinCat& b = *F.base;
  F.id_iso.clear();
  F.comp_iso.clear();
  for (ObjId a = 0; a < b.num_objects(); ++a) {
    const FinFunctor& p = F.push(b.id(a));
    NatTrans t{identity_functor(F.fiber[a]), p, {}};
    for (ObjId x = 0; x < F.fiber[a]->num_objects(); ++x) {
      const MorId k = canonical_iso(*F.fiber[a], x, p.obj[x]);
      if (k == kNone) throw Error(F.name + ": identity of " + b.object_name(a) + " acts by a non-invertible map");
      t.comp.push_back(k);
    }
    F.id_iso.push_back(std::move(t));
  }
  for (MorId g = 0; g < b.num_morphisms(); ++g)
    for (MorId f = 0; f < b.num_morphisms(); ++f) {
      if (b.tgt(f) != b.src(g)) continue;
      const FinFunctor& gf = F.push(b.compose(g, f));
      FinFunctor two = compose(F.push(g), F.push(f));
      NatTrans t{gf, two, {}};
      for (ObjId x = 0; x < F.fiber[b.src(f)]->num_objects(); ++x) {
        const MorId k = canonical_iso(*F.fiber[b.tgt(g)], gf.obj[x], two.obj[x]);
        if (k == kNone)
          throw Error(F.name + ": no coherence isomorphism for (" + b.morphism_name(g) + ", " + b.morphism_name(f) + ")");
        t.comp.push_back(k);
      }
      F.comp_iso.emplace(std::make_pair(g, f), std::move(t));
    }
}

AdjCatFunctor constant_adjcat(const std::string& name, const CatPtr& base, const CatPtr& fiber) {
  AdjCatFunctor F;
  F.name = name;
  F.base = base;
  F.fiber.assign(base->num_objects(), fiber);
  F.on_arrow.assign(base->num_morphisms(), identity_adjunction(fiber));
  fill_coherence(F);
  return F;
}

// ---------------------------------------------------------------------------

MorId GrothCat::morphism(ObjId src, MorId f, MorId phi) const {
  auto it = mor_index_.find({src, f, phi});
  return it == mor_index_.end() ? kNone : it->second;
}

GrothCat integrate_cat(const AdjCatFunctor& F) {
  Report r = validate_adjcat_functor(F);
  if (!r.ok()) throw ValidationError("pseudo-functor " + F.name, r);
  const FinCat& b = *F.base;
  GrothCat g;
  g.functor = std::make_shared<AdjCatFunctor>(F);
  CategoryData d;
  d.name = "int(" + F.name + ")";
  g.obj_index.resize(b.num_objects());
  for (ObjId a = 0; a < b.num_objects(); ++a)
    for (ObjId x = 0; x < F.fiber[a]->num_objects(); ++x) {
      g.obj_index[a].push_back(static_cast<ObjId>(d.objects.size()));
      g.obj_pair.push_back({a, x});
      d.objects.push_back("(" + b.object_name(a) + "," + F.fiber[a]->object_name(x) + ")");
    }
  const int n = static_cast<int>(d.objects.size());
  std::vector<std::string> names, quals;
  for (ObjId s = 0; s < n; ++s)
    for (ObjId t = 0; t < n; ++t) {
      const auto [a, x] = g.obj_pair[s];
      const auto [c, y] = g.obj_pair[t];
      for (MorId f : b.hom(a, c)) {
        const FinCat& fc = *F.fiber[c];
        for (MorId phi : fc.hom(F.push(f).obj[x], y)) {
          const MorId id = static_cast<MorId>(d.morphisms.size());
          g.mor_index_[{s, f, phi}] = id;
          g.mor_pair.push_back({f, phi});
          d.morphisms.push_back({"", s, t});
          names.push_back("(" + b.morphism_name(f) + "," + fc.morphism_name(phi) + ")");
          quals.push_back(d.objects[s]);
        }
      }
    }
  // dedupe as in the derived constructions
  {
    std::map<std::string, int> count;
    for (const auto& nm : names) ++count[nm];
    for (size_t i = 0; i < names.size(); ++i)
      if (count[names[i]] > 1) names[i] += "@" + quals[i];
  }
  for (size_t i = 0; i < names.size(); ++i) d.morphisms[i].name = names[i];

  for (ObjId s = 0; s < n; ++s) {
    const auto [a, x] = g.obj_pair[s];
    auto inv = F.fiber[a]->inverse(F.id_iso[a].comp[x]);
    d.identity.push_back(g.mor_index_.at({s, b.id(a), *inv}));
  }
  const int m = static_cast<int>(d.morphisms.size());
  for (MorId u = 0; u < m; ++u)
    for (MorId v = 0; v < m; ++v) {
      if (d.morphisms[u].tgt != d.morphisms[v].src) continue;
      // v ∘ u with u = (f, φ): (A,X) -> (B,Y), v = (h, ψ): (B,Y) -> (C,Z)
      const auto [f, phi] = g.mor_pair[u];
      const auto [h, psi] = g.mor_pair[v];
      const ObjId x = g.obj_pair[d.morphisms[u].src].second;
      const ObjId c = b.tgt(h);
      const FinCat& fc = *F.fiber[c];
      const MorId coh = F.comp_iso.at({h, f}).comp[x];
      const MorId chi = fc.compose(psi, fc.compose(F.push(h).mor[phi], coh));
      d.compose[{v, u}] = g.mor_index_.at({d.morphisms[u].src, b.compose(h, f), chi});
    }
  g.total = FinCat::make(std::move(d));
  g.projection = FinFunctor{g.total, F.base, {}, {}};
  for (const auto& [a, x] : g.obj_pair) g.projection.obj.push_back(a);
  for (const auto& [f, phi] : g.mor_pair) g.projection.mor.push_back(f);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

// Number of γ: y -> v with γ∘φ = ψ and p(γ) = g, capped at 2.
int count_cocartesian_factorizations(const FinFunctor& p, MorId phi, MorId psi, MorId g) {
  const FinCat& n = *p.source;
  int count = 0;
  for (MorId gamma : n.hom(n.tgt(phi), n.tgt(psi)))
    if (p.mor[gamma] == g && n.compose(gamma, phi) == psi && ++count == 2) break;
  return count;
}

int count_cartesian_factorizations(const FinFunctor& p, MorId phi, MorId psi, MorId g) {
  const FinCat& n = *p.source;
  int count = 0;
  for (MorId gamma : n.hom(n.src(psi), n.src(phi)))
    if (p.mor[gamma] == g && n.compose(phi, gamma) == psi && ++count == 2) break;
  return count;
}

}  // namespace

bool is_cocartesian(const FinFunctor& p, MorId phi) {
  const FinCat& n = *p.source;
  const FinCat& m = *p.target;
  const ObjId x = n.src(phi);
  for (MorId psi = 0; psi < n.num_morphisms(); ++psi) {
    if (n.src(psi) != x) continue;
    for (MorId g : m.hom(m.tgt(p.mor[phi]), p.obj[n.tgt(psi)]))
      if (m.compose(g, p.mor[phi]) == p.mor[psi] && count_cocartesian_factorizations(p, phi, psi, g) != 1)
        return false;
  }
  return true;
}

bool is_cartesian(const FinFunctor& p, MorId phi) {
  const FinCat& n = *p.source;
  const FinCat& m = *p.target;
  const ObjId y = n.tgt(phi);
  for (MorId psi = 0; psi < n.num_morphisms(); ++psi) {
    if (n.tgt(psi) != y) continue;
    for (MorId g : m.hom(p.obj[n.src(psi)], m.src(p.mor[phi])))
      if (m.compose(p.mor[phi], g) == p.mor[psi] && count_cartesian_factorizations(p, phi, psi, g) != 1) return false;
  }
  return true;
}

CartesianFlags classify_cartesian(const FinFunctor& p, MorId phi) { return {is_cocartesian(p, phi), is_cartesian(p, phi)}; }

std::optional<MorId> cocartesian_lift(const FinFunctor& p, ObjId x, MorId f) {
  const FinCat& n = *p.source;
  if (p.target->is_identity(f)) return n.id(x);
  for (MorId phi = 0; phi < n.num_morphisms(); ++phi)
    if (n.src(phi) == x && p.mor[phi] == f && is_cocartesian(p, phi)) return phi;
  return std::nullopt;
}

std::optional<MorId> cartesian_lift(const FinFunctor& p, ObjId y, MorId f) {
  const FinCat& n = *p.source;
  if (p.target->is_identity(f)) return n.id(y);
  for (MorId phi = 0; phi < n.num_morphisms(); ++phi)
    if (n.tgt(phi) == y && p.mor[phi] == f && is_cartesian(p, phi)) return phi;
  return std::nullopt;
}

MorId factor_cocartesian(const FinFunctor& p, MorId phi, MorId psi, MorId g) {
  const FinCat& n = *p.source;
  for (MorId gamma : n.hom(n.tgt(phi), n.tgt(psi)))
    if (p.mor[gamma] == g && n.compose(gamma, phi) == psi) return gamma;
  return kNone;
}

MorId factor_cartesian(const FinFunctor& p, MorId phi, MorId psi, MorId g) {
  const FinCat& n = *p.source;
  for (MorId gamma : n.hom(n.src(psi), n.src(phi)))
    if (p.mor[gamma] == g && n.compose(phi, gamma) == psi) return gamma;
  return kNone;
}

Report check_bicartesian(const FinFunctor& p) {
  Report r;
  const FinCat& n = *p.source;
  const FinCat& m = *p.target;
  for (ObjId x = 0; x < n.num_objects(); ++x)
    for (MorId f = 0; f < m.num_morphisms(); ++f) {
      if (m.src(f) == p.obj[x] && !cocartesian_lift(p, x, f))
        r.add("cocartesian-lift", "none for " + m.morphism_name(f) + " at " + n.object_name(x));
      if (m.tgt(f) == p.obj[x] && !cartesian_lift(p, x, f))
        r.add("cartesian-lift", "none for " + m.morphism_name(f) + " at " + n.object_name(x));
    }
  return r;
}

Fiber fiber_of(const FinFunctor& p, ObjId a) {
  const FinCat& n = *p.source;
  const FinCat& m = *p.target;
  Fiber fb;
  fb.local_obj.assign(n.num_objects(), -1);
  fb.local_mor.assign(n.num_morphisms(), -1);
  CategoryData d;
  d.name = n.name() + "|" + m.object_name(a);
  for (ObjId x = 0; x < n.num_objects(); ++x)
    if (p.obj[x] == a) {
      fb.local_obj[x] = static_cast<int>(fb.objects.size());
      fb.objects.push_back(x);
      d.objects.push_back(n.object_name(x));
    }
  for (MorId f = 0; f < n.num_morphisms(); ++f)
    if (p.mor[f] == m.id(a)) {
      fb.local_mor[f] = static_cast<int>(fb.morphisms.size());
      fb.morphisms.push_back(f);
      d.morphisms.push_back({n.morphism_name(f), fb.local_obj[n.src(f)], fb.local_obj[n.tgt(f)]});
    }
  for (ObjId x : fb.objects) d.identity.push_back(fb.local_mor[n.id(x)]);
  for (MorId g : fb.morphisms)
    for (MorId f : fb.morphisms)
      if (n.tgt(f) == n.src(g)) d.compose[{fb.local_mor[g], fb.local_mor[f]}] = fb.local_mor[n.compose(g, f)];
  fb.cat = FinCat::make(std::move(d));
  return fb;
}

Straightening straighten_cat(const FinFunctor& p, const std::string& name) {
  Report r = check_bicartesian(p);
  if (!r.ok()) throw ValidationError("straighten " + name, r);
  const FinCat& n = *p.source;
  const FinCat& m = *p.target;
  Straightening s;
  AdjCatFunctor& F = s.functor;
  F.name = name;
  F.base = p.target;
  for (ObjId a = 0; a < m.num_objects(); ++a) {
    s.fibers.push_back(fiber_of(p, a));
    F.fiber.push_back(s.fibers.back().cat);
  }

  // Canonical lifts per (base morphism, local object).
  auto push_lift = [&](MorId f, int x) { return *cocartesian_lift(p, s.fibers[m.src(f)].objects[x], f); };
  auto pull_lift = [&](MorId f, int y) { return *cartesian_lift(p, s.fibers[m.tgt(f)].objects[y], f); };

  for (MorId f = 0; f < m.num_morphisms(); ++f) {
    const Fiber& fa = s.fibers[m.src(f)];
    const Fiber& fb = s.fibers[m.tgt(f)];
    const MorId idb = m.id(m.tgt(f));
    FinFunctor push{fa.cat, fb.cat, {}, {}};
    for (int x = 0; x < fa.cat->num_objects(); ++x) push.obj.push_back(fb.local_obj[n.tgt(push_lift(f, x))]);
    for (MorId alpha : fa.morphisms) {
      const int x = fa.local_obj[n.src(alpha)], x2 = fa.local_obj[n.tgt(alpha)];
      const MorId gamma = factor_cocartesian(p, push_lift(f, x), n.compose(push_lift(f, x2), alpha), idb);
      push.mor.push_back(fb.local_mor[gamma]);
    }
    std::vector<ObjId> pull_obj;
    std::vector<MorId> counit;
    for (int y = 0; y < fb.cat->num_objects(); ++y) {
      const MorId c = pull_lift(f, y);
      const int fy = fa.local_obj[n.src(c)];
      pull_obj.push_back(fy);
      counit.push_back(fb.local_mor[factor_cocartesian(p, push_lift(f, fy), c, idb)]);
    }
    auto adj = adjunction_from_counits(push, pull_obj, counit);
    if (!adj) throw Error("straighten " + name + ": lifts over " + m.morphism_name(f) + " do not form an adjunction");
    F.on_arrow.push_back(std::move(*adj));
  }

  for (ObjId a = 0; a < m.num_objects(); ++a) {
    NatTrans t{identity_functor(F.fiber[a]), F.push(m.id(a)), {}};
    for (int x = 0; x < F.fiber[a]->num_objects(); ++x) t.comp.push_back(s.fibers[a].local_mor[push_lift(m.id(a), x)]);
    F.id_iso.push_back(std::move(t));
  }
  for (MorId g = 0; g < m.num_morphisms(); ++g)
    for (MorId f = 0; f < m.num_morphisms(); ++f) {
      if (m.tgt(f) != m.src(g)) continue;
      const MorId gf = m.compose(g, f);
      const Fiber& fc = s.fibers[m.tgt(g)];
      NatTrans t{F.push(gf), compose(F.push(g), F.push(f)), {}};
      for (int x = 0; x < F.fiber[m.src(f)]->num_objects(); ++x) {
        const MorId lf = push_lift(f, x);
        const MorId lg = push_lift(g, s.fibers[m.tgt(f)].local_obj[n.tgt(lf)]);
        const MorId gamma = factor_cocartesian(p, push_lift(gf, x), n.compose(lg, lf), m.id(m.tgt(g)));
        t.comp.push_back(fc.local_mor[gamma]);
      }
      F.comp_iso.emplace(std::make_pair(g, f), std::move(t));
    }
  Report v = validate_adjcat_functor(F);
  if (!v.ok()) throw ValidationError("straighten " + name, v);
  return s;
}

Report compare_straightening(const AdjCatFunctor& F, const GrothCat& g, const Straightening& s) {
  Report r;
  const FinCat& b = *F.base;
  if (!same_cat(s.functor.base, F.base)) {
    r.add("base", "different base categories");
    return r;
  }
  // local fiber index of X in F(A) under X ↦ (A, X)
  auto to_local = [&](ObjId a, ObjId x) { return s.fibers[a].local_obj[g.object(a, x)]; };
  for (ObjId a = 0; a < b.num_objects(); ++a) {
    const FinCat& fa = *F.fiber[a];
    const Fiber& sf = s.fibers[a];
    if (sf.cat->num_objects() != fa.num_objects() || sf.cat->num_morphisms() != fa.num_morphisms()) {
      r.add("fiber", "size mismatch over " + b.object_name(a));
      continue;
    }
    // φ in F(A) corresponds to (id_A, φ∘ι^{-1}) in the total; on skeletal posets ι is the identity
    for (MorId phi = 0; phi < fa.num_morphisms(); ++phi) {
      const ObjId src = g.object(a, fa.src(phi));
      const MorId inv = *fa.inverse(F.id_iso[a].comp[fa.src(phi)]);
      const MorId total = g.morphism(src, b.id(a), fa.compose(phi, inv));
      if (total == kNone || sf.local_mor[total] < 0 || sf.cat->src(sf.local_mor[total]) != to_local(a, fa.src(phi)) ||
          sf.cat->tgt(sf.local_mor[total]) != to_local(a, fa.tgt(phi)))
        r.add("fiber", "morphism " + fa.morphism_name(phi) + " over " + b.object_name(a));
    }
  }
  if (!r.ok()) return r;
  for (MorId f = 0; f < b.num_morphisms(); ++f) {
    const ObjId a = b.src(f), c = b.tgt(f);
    for (ObjId x = 0; x < F.fiber[a]->num_objects(); ++x)
      if (s.functor.push(f).obj[to_local(a, x)] != to_local(c, F.push(f).obj[x]))
        r.add("push", b.morphism_name(f) + " at " + F.fiber[a]->object_name(x));
    for (ObjId y = 0; y < F.fiber[c]->num_objects(); ++y)
      if (s.functor.pull(f).obj[to_local(c, y)] != to_local(a, F.pull(f).obj[y]))
        r.add("pull", b.morphism_name(f) + " at " + F.fiber[c]->object_name(y));
  }
  return r;
}

Report compare_integration(const FinFunctor& p, const Straightening& s, const GrothCat& g) {
  Report r;
  const FinCat& n = *p.source;
  const FinCat& t = *g.total;
  if (t.num_objects() != n.num_objects() || t.num_morphisms() != n.num_morphisms()) {
    r.add("size", "integrated total differs in size from the fibration");
    return r;
  }
  FinFunctor phi{g.total, p.source, {}, {}};
  for (const auto& [a, x] : g.obj_pair) phi.obj.push_back(s.fibers[a].objects[x]);
  // (f, φ): (A,X) -> (B,Y) ↦ total(φ) ∘ lift_f(X)
  for (MorId u = 0; u < t.num_morphisms(); ++u) {
    const auto [f, ph] = g.mor_pair[u];
    const ObjId x = phi.obj[t.src(u)];
    const MorId lift = *cocartesian_lift(p, x, f);
    phi.mor.push_back(n.compose(s.fibers[p.target->tgt(f)].morphisms[ph], lift));
  }
  Report v = validate_functor(phi);
  if (!v.ok()) {
    r.merge(v, "comparison");
    return r;
  }
  std::vector<char> seen_o(n.num_objects(), 0), seen_m(n.num_morphisms(), 0);
  for (ObjId o : phi.obj) seen_o[o] = 1;
  for (MorId m : phi.mor) seen_m[m] = 1;
  if (std::count(seen_o.begin(), seen_o.end(), 1) != n.num_objects() ||
      std::count(seen_m.begin(), seen_m.end(), 1) != n.num_morphisms())
    r.add("bijection", "comparison functor is not bijective");
  for (MorId u = 0; u < t.num_morphisms(); ++u)
    if (p.mor[phi.mor[u]] != g.projection.mor[u]) r.add("over-base", t.morphism_name(u));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

bool cocone_like(const ConeShape& shape) {
  return shape.legs.empty() || shape.extended->tgt(shape.legs[0]) == shape.apex;
}

std::vector<ConeLift> lifts_at(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                               const FinFunctor& eps, ObjId apex, bool cocone) {
  const FinCat& n = *p.source;
  const FinCat& in = *shape.shape;
  const int k = in.num_objects();
  std::vector<ConeLift> out;
  std::vector<MorId> legs(k, kNone);
  std::vector<std::vector<MorId>> check_at(k);
  for (MorId a = 0; a < in.num_morphisms(); ++a)
    if (!in.is_identity(a)) check_at[std::max(in.src(a), in.tgt(a))].push_back(a);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      out.push_back({apex, legs});
      return;
    }
    const MorId over = eps.mor[shape.legs[i]];
    const auto& cands = cocone ? n.hom(delta.obj[i], apex) : n.hom(apex, delta.obj[i]);
    for (MorId leg : cands) {
      if (p.mor[leg] != over) continue;
      legs[i] = leg;
      bool ok = true;
      for (MorId a : check_at[i]) {
        const MorId da = delta.mor[a];
        const ObjId s = in.src(a), t = in.tgt(a);
        if (cocone ? n.compose(legs[t], da) != legs[s] : n.compose(da, legs[s]) != legs[t]) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, i + 1);
    }
    legs[i] = kNone;
  };
  rec(rec, 0);
  return out;
}

std::vector<ConeLift> all_lifts(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                const FinFunctor& eps, bool cocone) {
  std::vector<ConeLift> out;
  const ObjId a = eps.obj[shape.apex];
  for (ObjId y = 0; y < p.source->num_objects(); ++y)
    if (p.obj[y] == a)
      for (auto& l : lifts_at(p, delta, shape, eps, y, cocone)) out.push_back(std::move(l));
  return out;
}

bool universal_lift(const FinFunctor& p, const std::vector<ConeLift>& lifts, const ConeLift& lift, ObjId base_apex,
                    bool cocone) {
  const FinCat& n = *p.source;
  const MorId ida = p.target->id(base_apex);
  for (const ConeLift& other : lifts) {
    int count = 0;
    const auto& cands = cocone ? n.hom(lift.apex, other.apex) : n.hom(other.apex, lift.apex);
    for (MorId gamma : cands) {
      if (p.mor[gamma] != ida) continue;
      bool ok = true;
      for (size_t i = 0; i < lift.legs.size() && ok; ++i)
        ok = (cocone ? n.compose(gamma, lift.legs[i]) : n.compose(lift.legs[i], gamma)) == other.legs[i];
      if (ok && ++count > 1) break;
    }
    if (count != 1) return false;
  }
  return true;
}

std::optional<ConeLift> relative_universal(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                           const FinFunctor& eps, bool cocone) {
  const FinCat& n = *p.source;
  const FinCat& in = *shape.shape;
  const ObjId a = eps.obj[shape.apex];
  const auto lifts = all_lifts(p, delta, shape, eps, cocone);

  if (check_bicartesian(p).ok()) {
    // Move δ into the fiber over ε(*), take the fiber (co)limit, certify.
    const Fiber fb = fiber_of(p, a);
    const int k = in.num_objects();
    std::vector<MorId> moved(k);
    FinFunctor d{shape.shape, fb.cat, {}, {}};
    for (ObjId i = 0; i < k; ++i) {
      const MorId over = eps.mor[shape.legs[i]];
      moved[i] = cocone ? *cocartesian_lift(p, delta.obj[i], over) : *cartesian_lift(p, delta.obj[i], over);
      d.obj.push_back(fb.local_obj[cocone ? n.tgt(moved[i]) : n.src(moved[i])]);
    }
    const MorId ida = p.target->id(a);
    for (MorId al = 0; al < in.num_morphisms(); ++al) {
      const ObjId i = in.src(al), j = in.tgt(al);
      const MorId gamma = cocone ? factor_cocartesian(p, moved[i], n.compose(moved[j], delta.mor[al]), ida)
                                 : factor_cartesian(p, moved[j], n.compose(delta.mor[al], moved[i]), ida);
      d.mor.push_back(fb.local_mor[gamma]);
    }
    auto k_cone = cocone ? find_colimit(d) : find_limit(d);
    if (!k_cone) return std::nullopt;
    ConeLift lift{fb.objects[k_cone->apex], {}};
    for (ObjId i = 0; i < k; ++i) {
      const MorId leg = fb.morphisms[k_cone->legs[i]];
      lift.legs.push_back(cocone ? n.compose(leg, moved[i]) : n.compose(moved[i], leg));
    }
    if (universal_lift(p, lifts, lift, a, cocone)) return lift;
    return std::nullopt;
  }
  for (const ConeLift& l : lifts)
    if (universal_lift(p, lifts, l, a, cocone)) return l;
  return std::nullopt;
}

}  // namespace

std::vector<ConeLift> enumerate_lifts(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                      const FinFunctor& eps) {
  return all_lifts(p, delta, shape, eps, cocone_like(shape));
}

bool is_relative_colimit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape, const FinFunctor& eps,
                         const ConeLift& lift) {
  return universal_lift(p, all_lifts(p, delta, shape, eps, true), lift, eps.obj[shape.apex], true);
}

bool is_relative_limit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape, const FinFunctor& eps,
                       const ConeLift& lift) {
  return universal_lift(p, all_lifts(p, delta, shape, eps, false), lift, eps.obj[shape.apex], false);
}

std::optional<ConeLift> relative_colimit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                         const FinFunctor& eps) {
  return relative_universal(p, delta, shape, eps, true);
}

std::optional<ConeLift> relative_limit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                       const FinFunctor& eps) {
  return relative_universal(p, delta, shape, eps, false);
}

}  // namespace fcat
