#include "fcat/adjunction.hpp"

namespace fcat {

namespace {

bool same_cat(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && a->same_structure(*b)); }

// Unique u: c -> rd with eps∘L(u) = g, or kNone (also when not unique).
MorId factor_via_counit(const FinFunctor& left, ObjId c, ObjId rd, MorId eps, MorId g) {
  const FinCat& d = *left.target;
  MorId found = kNone;
  for (MorId u : left.source->hom(c, rd))
    if (d.compose(eps, left.mor[u]) == g) {
      if (found != kNone) return kNone;
      found = u;
    }
  return found;
}

// Unique v: ld -> d2 with R(v)∘eta = g, or kNone.
MorId factor_via_unit(const FinFunctor& right, ObjId ld, ObjId d2, MorId eta, MorId g) {
  const FinCat& c = *right.target;
  MorId found = kNone;
  for (MorId v : right.source->hom(ld, d2))
    if (c.compose(right.mor[v], eta) == g) {
      if (found != kNone) return kNone;
      found = v;
    }
  return found;
}

bool counit_universal(const FinFunctor& left, ObjId d, ObjId rd, MorId eps) {
  const FinCat& c = *left.source;
  const FinCat& dd = *left.target;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (MorId g : dd.hom(left.obj[x], d))
      if (factor_via_counit(left, x, rd, eps, g) == kNone) return false;
  return true;
}

bool unit_universal(const FinFunctor& right, ObjId c, ObjId ld, MorId eta) {
  const FinCat& d = *right.source;
  const FinCat& cc = *right.target;
  for (ObjId y = 0; y < d.num_objects(); ++y)
    for (MorId g : cc.hom(c, right.obj[y]))
      if (factor_via_unit(right, ld, y, eta, g) == kNone) return false;
  return true;
}

}  // namespace

Report check_adjunction(const Adjunction& adj) {
  Report r;
  r.merge(validate_functor(adj.left), "left");
  r.merge(validate_functor(adj.right), "right");
  if (!r.ok()) return r;
  if (!same_cat(adj.left.source, adj.right.target) || !same_cat(adj.left.target, adj.right.source)) {
    r.add("shape", "left and right functors are not opposite");
    return r;
  }
  const CatPtr& cc = adj.lower();
  const CatPtr& dc = adj.upper();
  const FinCat& c = *cc;
  const FinCat& d = *dc;
  const FinFunctor& L = adj.left;
  const FinFunctor& R = adj.right;

  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < d.num_objects(); ++b)
      if (d.hom(L.obj[a], b).size() != c.hom(a, R.obj[b]).size()) {
        r.add("hom-bijection", "(" + c.object_name(a) + ", " + d.object_name(b) + ")");
        return r;
      }

  NatTrans unit{identity_functor(cc), compose(R, L), adj.unit.comp};
  NatTrans counit{compose(L, R), identity_functor(dc), adj.counit.comp};
  r.merge(validate_nat_trans(unit), "unit");
  r.merge(validate_nat_trans(counit), "counit");
  if (!r.ok()) return r;

  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (d.compose(counit.comp[L.obj[a]], L.mor[unit.comp[a]]) != d.id(L.obj[a]))
      r.add("triangle-left", "at " + c.object_name(a));
  for (ObjId b = 0; b < d.num_objects(); ++b)
    if (c.compose(R.mor[counit.comp[b]], unit.comp[R.obj[b]]) != c.id(R.obj[b]))
      r.add("triangle-right", "at " + d.object_name(b));

  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < d.num_objects(); ++b) {
      const auto& lhs = d.hom(L.obj[a], b);
      const auto& rhs = c.hom(a, R.obj[b]);
      bool ok = lhs.size() == rhs.size();
      std::vector<char> hit(c.num_morphisms(), 0);
      for (MorId phi : lhs) {
        if (!ok) break;
        const MorId t = c.compose(R.mor[phi], unit.comp[a]);
        if (hit[t]) ok = false;
        hit[t] = 1;
        if (d.compose(counit.comp[b], L.mor[t]) != phi) ok = false;
      }
      if (!ok) r.add("hom-bijection", "(" + c.object_name(a) + ", " + d.object_name(b) + ")");
    }
  return r;
}

Adjunction identity_adjunction(const CatPtr& c) {
  FinFunctor id = identity_functor(c);
  return Adjunction{id, id, identity_nat(id), identity_nat(id)};
}

std::optional<Adjunction> adjunction_from_counits(const FinFunctor& left, const std::vector<ObjId>& right_obj,
                                                  const std::vector<MorId>& counit) {
  const CatPtr& cc = left.source;
  const CatPtr& dc = left.target;
  const FinCat& c = *cc;
  const FinCat& d = *dc;
  for (ObjId y = 0; y < d.num_objects(); ++y)
    if (!counit_universal(left, y, right_obj[y], counit[y])) return std::nullopt;

  FinFunctor right{dc, cc, right_obj, {}};
  for (MorId h = 0; h < d.num_morphisms(); ++h) {
    const ObjId y = d.src(h), y2 = d.tgt(h);
    const MorId u = factor_via_counit(left, right_obj[y], right_obj[y2], counit[y2], d.compose(h, counit[y]));
    if (u == kNone) return std::nullopt;
    right.mor.push_back(u);
  }
  Adjunction adj{left, right, NatTrans{identity_functor(cc), compose(right, left), {}},
                 NatTrans{compose(left, right), identity_functor(dc), counit}};
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const ObjId lx = left.obj[x];
    const MorId u = factor_via_counit(left, x, right_obj[lx], counit[lx], d.id(lx));
    if (u == kNone) return std::nullopt;
    adj.unit.comp.push_back(u);
  }
  return adj;
}

std::optional<Adjunction> adjunction_from_units(const FinFunctor& right, const std::vector<ObjId>& left_obj,
                                                const std::vector<MorId>& unit) {
  const CatPtr& dc = right.source;
  const CatPtr& cc = right.target;
  const FinCat& c = *cc;
  const FinCat& d = *dc;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    if (!unit_universal(right, x, left_obj[x], unit[x])) return std::nullopt;

  FinFunctor left{cc, dc, left_obj, {}};
  for (MorId k = 0; k < c.num_morphisms(); ++k) {
    const ObjId x = c.src(k), x2 = c.tgt(k);
    const MorId v = factor_via_unit(right, left_obj[x], left_obj[x2], unit[x], c.compose(unit[x2], k));
    if (v == kNone) return std::nullopt;
    left.mor.push_back(v);
  }
  Adjunction adj{left, right, NatTrans{identity_functor(cc), compose(right, left), unit},
                 NatTrans{compose(left, right), identity_functor(dc), {}}};
  for (ObjId y = 0; y < d.num_objects(); ++y) {
    const ObjId ry = right.obj[y];
    const MorId v = factor_via_unit(right, left_obj[ry], y, unit[ry], c.id(ry));
    if (v == kNone) return std::nullopt;
    adj.counit.comp.push_back(v);
  }
  return adj;
}

std::optional<Adjunction> find_adjoint(const FinFunctor& f, Side side) {
  if (side == Side::Right) {
    const FinCat& c = *f.source;
    const FinCat& d = *f.target;
    std::vector<ObjId> robj(d.num_objects(), kNone);
    std::vector<MorId> eps(d.num_objects(), kNone);
    for (ObjId y = 0; y < d.num_objects(); ++y) {
      for (ObjId x = 0; x < c.num_objects() && robj[y] == kNone; ++x)
        for (MorId e : d.hom(f.obj[x], y))
          if (counit_universal(f, y, x, e)) {
            robj[y] = x;
            eps[y] = e;
            break;
          }
      if (robj[y] == kNone) return std::nullopt;
    }
    return adjunction_from_counits(f, robj, eps);
  }
  const FinCat& d = *f.source;
  const FinCat& c = *f.target;
  std::vector<ObjId> lobj(c.num_objects(), kNone);
  std::vector<MorId> eta(c.num_objects(), kNone);
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    for (ObjId y = 0; y < d.num_objects() && lobj[x] == kNone; ++y)
      for (MorId e : c.hom(x, f.obj[y]))
        if (unit_universal(f, x, y, e)) {
          lobj[x] = y;
          eta[x] = e;
          break;
        }
    if (lobj[x] == kNone) return std::nullopt;
  }
  return adjunction_from_units(f, lobj, eta);
}

MorId transpose(const Adjunction& adj, ObjId a, MorId phi) {
  const FinCat& d = *adj.upper();
  if (d.src(phi) != adj.left.obj[a]) throw Error("transpose: " + d.morphism_name(phi) + " does not start at L(a)");
  return adj.lower()->compose(adj.right.mor[phi], adj.unit.comp[a]);
}

MorId untranspose(const Adjunction& adj, ObjId b, MorId psi) {
  const FinCat& c = *adj.lower();
  if (c.tgt(psi) != adj.right.obj[b]) throw Error("untranspose: " + c.morphism_name(psi) + " does not end at R(b)");
  return adj.upper()->compose(adj.counit.comp[b], adj.left.mor[psi]);
}

Report check_adj_pseudo_trans(const AdjPseudoTrans& t) {
  Report r;
  r.merge(check_adjunction(t.from), "from");
  r.merge(check_adjunction(t.to), "to");
  if (!r.ok()) return r;
  NatTrans sigma{t.from.left, t.to.left, t.sigma.comp};
  NatTrans tau{t.to.right, t.from.right, t.tau.comp};
  r.merge(validate_nat_trans(sigma), "sigma");
  r.merge(validate_nat_trans(tau), "tau");
  if (!r.ok()) return r;
  if (!is_nat_iso(sigma)) r.add("invertible", "sigma");
  if (!is_nat_iso(tau)) r.add("invertible", "tau");

  const FinCat& c = *t.from.lower();
  const FinCat& d = *t.from.upper();
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (ObjId y = 0; y < d.num_objects(); ++y)
      for (MorId psi : c.hom(x, t.to.right.obj[y])) {
        const MorId across = d.compose(untranspose(t.to, y, psi), sigma.comp[x]);
        const MorId down = untranspose(t.from, y, c.compose(tau.comp[y], psi));
        if (across != down) {
          r.add("hom-square", "(" + c.object_name(x) + ", " + d.object_name(y) + ")");
          break;
        }
      }
  return r;
}

AdjPseudoTrans identity_pseudo_trans(const Adjunction& adj) {
  return AdjPseudoTrans{adj, adj, identity_nat(adj.left), identity_nat(adj.right)};
}

Adjunction compose_adjunctions(const Adjunction& a1, const Adjunction& a2) {
  if (!same_cat(a1.upper(), a2.lower())) throw Error("compose_adjunctions: middle categories differ");
  const FinCat& c = *a1.lower();
  const FinCat& e = *a2.upper();
  Adjunction out{compose(a2.left, a1.left), compose(a1.right, a2.right), {}, {}};
  out.unit = NatTrans{identity_functor(a1.lower()), compose(out.right, out.left), {}};
  out.counit = NatTrans{compose(out.left, out.right), identity_functor(a2.upper()), {}};
  for (ObjId x = 0; x < c.num_objects(); ++x)
    out.unit.comp.push_back(c.compose(a1.right.mor[a2.unit.comp[a1.left.obj[x]]], a1.unit.comp[x]));
  for (ObjId z = 0; z < e.num_objects(); ++z)
    out.counit.comp.push_back(e.compose(a2.counit.comp[z], a2.left.mor[a1.counit.comp[a2.right.obj[z]]]));
  return out;
}

bool same_adjunction(const Adjunction& a, const Adjunction& b) {
  return a.left == b.left && a.right == b.right && a.unit.comp == b.unit.comp && a.counit.comp == b.counit.comp;
}

}  // namespace fcat
