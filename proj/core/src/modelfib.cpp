#include "fcat/modelfib.hpp"

#include <algorithm>
#include <functional>

namespace fcat {

std::vector<FinFunctor> enumerate_functors(const CatPtr& shape, const CatPtr& target, std::vector<ObjId> fixed_obj,
                                           std::vector<MorId> fixed_mor) {
  const FinCat& s = *shape;
  const FinCat& t = *target;
  std::vector<FinFunctor> out;
  if (fixed_obj.empty()) fixed_obj.assign(s.num_objects(), kNone);
  if (fixed_mor.empty()) fixed_mor.assign(s.num_morphisms(), kNone);
  FinFunctor cur{shape, target, std::move(fixed_obj), std::move(fixed_mor)};
  std::vector<ObjId> free_obj;
  for (ObjId o = 0; o < s.num_objects(); ++o)
    if (cur.obj[o] == kNone) free_obj.push_back(o);

  std::function<void(size_t)> objects, morphisms;
  std::vector<MorId> free_mor;
  morphisms = [&](size_t i) {
    if (i == free_mor.size()) {
      if (validate_functor(cur).ok()) out.push_back(cur);
      return;
    }
    const MorId m = free_mor[i];
    for (MorId c : t.hom(cur.obj[s.src(m)], cur.obj[s.tgt(m)])) {
      cur.mor[m] = c;
      morphisms(i + 1);
    }
    cur.mor[m] = kNone;
  };
  objects = [&](size_t i) {
    if (i == free_obj.size()) {
      free_mor.clear();
      std::vector<MorId> filled;
      for (MorId m = 0; m < s.num_morphisms(); ++m) {
        if (cur.mor[m] != kNone) continue;
        if (s.is_identity(m)) {
          cur.mor[m] = t.id(cur.obj[s.src(m)]);
          filled.push_back(m);
          continue;
        }
        free_mor.push_back(m);
      }
      morphisms(0);
      for (MorId m : filled) cur.mor[m] = kNone;
      return;
    }
    for (ObjId o = 0; o < t.num_objects(); ++o) {
      cur.obj[free_obj[i]] = o;
      objects(i + 1);
    }
    cur.obj[free_obj[i]] = kNone;
  };
  objects(0);
  return out;
}

namespace {

ModelCat classes_only(const PreModel& pm) { return ModelCat{pm, {}, {}, kNone, kNone}; }

std::string describe(const FinFunctor& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.obj.size(); ++i) s += (i ? "," : "") + d.target->object_name(d.obj[i]);
  return s + ")";
}

struct FiberEnds {
  std::vector<ObjId> initial, terminal;  // per base object, in N; kNone if absent
};

FiberEnds fiber_ends(const FinFunctor& pi) {
  FiberEnds e;
  for (ObjId a = 0; a < pi.target->num_objects(); ++a) {
    Fiber f = fiber_of(pi, a);
    auto i = initial_object(*f.cat);
    auto t = terminal_object(*f.cat);
    e.initial.push_back(i ? f.objects[*i] : kNone);
    e.terminal.push_back(t ? f.objects[*t] : kNone);
  }
  return e;
}

// The morphism a -> b of N lying over the identity, if any.
MorId vertical(const FinFunctor& pi, ObjId a, ObjId b) {
  const MorId id = pi.target->id(pi.obj[a]);
  for (MorId m : pi.source->hom(a, b))
    if (pi.mor[m] == id) return m;
  return kNone;
}

bool cofibrant_with(const FibrationCandidate& fc, const FiberEnds& e, ObjId x) {
  const ObjId i = e.initial[fc.pi.obj[x]];
  if (i == kNone) return false;
  const MorId m = vertical(fc.pi, i, x);
  return m != kNone && fc.upstairs.cof.contains(m);
}

bool fibrant_with(const FibrationCandidate& fc, const FiberEnds& e, ObjId x) {
  const ObjId t = e.terminal[fc.pi.obj[x]];
  if (t == kNone) return false;
  const MorId m = vertical(fc.pi, x, t);
  return m != kNone && fc.upstairs.fib.contains(m);
}

}  // namespace

Report check_class_image(const FinFunctor& pi, const MorSet& upstairs, const MorSet& downstairs,
                         const std::string& label) {
  Report r;
  for (MorId m : upstairs.members())
    if (!downstairs.contains(pi.mor[m])) {
      r.add("class-image", label + ": " + pi.source->morphism_name(m));
      break;
    }
  return r;
}

Report check_pi_wfs(const FinFunctor& pi, const MorSet& ln, const MorSet& rn, const MorSet& lm, const MorSet& rm) {
  Report r;
  r.merge(check_class_image(pi, ln, lm, "left"));
  r.merge(check_class_image(pi, rn, rm, "right"));
  if (!r.ok()) return r;
  const FinCat& n = *pi.source;
  const FinCat& m = *pi.target;

  for (MorId f = 0; f < n.num_morphisms(); ++f) {
    const bool need_l = !ln.contains(f) && lm.contains(pi.mor[f]);
    const bool need_r = !rn.contains(f) && rm.contains(pi.mor[f]);
    if (!need_l && !need_r) continue;
    for (MorId g : retract_sources(n, f)) {
      if (need_l && ln.contains(g)) {
        r.add("retract-left", n.morphism_name(f) + " retract of " + n.morphism_name(g));
        break;
      }
      if (need_r && rn.contains(g)) {
        r.add("retract-right", n.morphism_name(f) + " retract of " + n.morphism_name(g));
        break;
      }
    }
  }

  for (MorId phi = 0; phi < n.num_morphisms(); ++phi) {
    const ObjId x = n.src(phi), y = n.tgt(phi);
    const ObjId a = pi.obj[x], b = pi.obj[y];
    bool failed = false;
    for (ObjId c = 0; c < m.num_objects() && !failed; ++c)
      for (MorId h : m.hom(a, c)) {
        if (!lm.contains(h)) continue;
        for (MorId g : m.hom(c, b)) {
          if (!rm.contains(g) || m.compose(g, h) != pi.mor[phi]) continue;
          bool found = false;
          for (ObjId z = 0; z < n.num_objects() && !found; ++z) {
            if (pi.obj[z] != c) continue;
            for (MorId eta : n.hom(x, z)) {
              if (!ln.contains(eta) || pi.mor[eta] != h) continue;
              for (MorId psi : n.hom(z, y))
                if (rn.contains(psi) && pi.mor[psi] == g && n.compose(psi, eta) == phi) {
                  found = true;
                  break;
                }
              if (found) break;
            }
          }
          if (!found) {
            r.add("factorization", n.morphism_name(phi) + " over " + m.morphism_name(g) + "∘" + m.morphism_name(h));
            failed = true;
            break;
          }
        }
        if (failed) break;
      }
  }

  for (MorId psi : ln.members())
    for (MorId eta : rn.members()) {
      const ObjId x = n.src(psi), y = n.tgt(psi), z = n.src(eta), w = n.tgt(eta);
      for (MorId top : n.hom(x, z))
        for (MorId bottom : n.hom(y, w)) {
          if (n.compose(eta, top) != n.compose(bottom, psi)) continue;
          for (MorId u : m.hom(pi.obj[y], pi.obj[z])) {
            if (m.compose(u, pi.mor[psi]) != pi.mor[top] || m.compose(pi.mor[eta], u) != pi.mor[bottom]) continue;
            bool found = false;
            for (MorId gamma : n.hom(y, z))
              if (pi.mor[gamma] == u && n.compose(gamma, psi) == top && n.compose(eta, gamma) == bottom) {
                found = true;
                break;
              }
            if (!found) {
              r.add("lifting", "(" + n.morphism_name(psi) + ", " + n.morphism_name(eta) + ") over " + m.morphism_name(u));
              return r;
            }
          }
        }
    }
  return r;
}

Report check_relative_bicomplete(const FinFunctor& pi) {
  Report r;
  struct Named {
    const char* colimit;
    const char* limit;
    CatPtr shape;
  };
  const std::vector<Named> shapes{{"initial", "terminal", empty_shape()},
                                  {"coproduct", "product", pair_shape()},
                                  {"coequalizer", "equalizer", parallel_pair_shape()}};
  for (const auto& sh : shapes) {
    const FinCat& s = *sh.shape;
    for (const FinFunctor& delta :
         enumerate_functors(sh.shape, pi.source, std::vector<ObjId>(s.num_objects(), kNone),
                            std::vector<MorId>(s.num_morphisms(), kNone))) {
      const FinFunctor down = compose(pi, delta);
      for (bool colim : {true, false}) {
        const ConeShape cs = colim ? cocone_shape(sh.shape) : cone_shape(sh.shape);
        const FinCat& ext = *cs.extended;
        std::vector<ObjId> fo(ext.num_objects(), kNone);
        std::vector<MorId> fm(ext.num_morphisms(), kNone);
        for (ObjId i = 0; i < s.num_objects(); ++i) fo[cs.inclusion.obj[i]] = down.obj[i];
        for (MorId u = 0; u < s.num_morphisms(); ++u) fm[cs.inclusion.mor[u]] = down.mor[u];
        for (const FinFunctor& eps : enumerate_functors(cs.extended, pi.target, fo, fm)) {
          const bool ok = colim ? relative_colimit(pi, delta, cs, eps).has_value()
                                : relative_limit(pi, delta, cs, eps).has_value();
          if (!ok) {
            r.add(colim ? "relative-colimit" : "relative-limit",
                  std::string(colim ? sh.colimit : sh.limit) + " of " + describe(delta) + " over " +
                      pi.target->object_name(eps.obj[cs.apex]));
            break;
          }
        }
      }
    }
  }
  return r;
}

Report check_relative_two_of_three(const FibrationCandidate& fc) {
  Report r;
  const FinCat& n = *fc.pi.source;
  const MorSet& w = fc.upstairs.weq;
  auto down = [&](MorId m) { return fc.downstairs.weq.contains(fc.pi.mor[m]); };
  for (MorId f = 0; f < n.num_morphisms(); ++f)
    for (MorId g = 0; g < n.num_morphisms(); ++g) {
      if (n.tgt(f) != n.src(g)) continue;
      const MorId gf = n.compose(g, f);
      const bool a = w.contains(f), b = w.contains(g), c = w.contains(gf);
      const char* bad = nullptr;
      if (a && b && !c && down(gf)) bad = "composite";
      if (a && c && !b && down(g)) bad = "second";
      if (b && c && !a && down(f)) bad = "first";
      if (bad) {
        r.add("two-of-three", std::string(bad) + " of (" + n.morphism_name(g) + ", " + n.morphism_name(f) + ")");
        return r;
      }
    }
  return r;
}

Report check_relative_model(const FibrationCandidate& fc) {
  Report r;
  Report v = validate_functor(fc.pi);
  if (!v.ok()) {
    r.merge(v, "functor");
    return r;
  }
  r.merge(check_relative_bicomplete(fc.pi), "bicomplete");
  r.merge(check_relative_two_of_three(fc));
  const PreModel& up = fc.upstairs;
  const PreModel& dn = fc.downstairs;
  r.merge(check_pi_wfs(fc.pi, up.trivcof(), up.fib, dn.trivcof(), dn.fib), "wfs-trivcof");
  r.merge(check_pi_wfs(fc.pi, up.cof, up.trivfib(), dn.cof, dn.trivfib()), "wfs-cof");
  return r;
}

bool pi_cofibrant(const FibrationCandidate& fc, ObjId x) { return cofibrant_with(fc, fiber_ends(fc.pi), x); }
bool pi_fibrant(const FibrationCandidate& fc, ObjId x) { return fibrant_with(fc, fiber_ends(fc.pi), x); }

Report check_model_fibration(const FibrationCandidate& fc) {
  Report r;
  r.merge(check_relative_model(fc), "relative");
  Report bic = check_bicartesian(fc.pi);
  r.merge(bic, "bicartesian");
  if (!bic.ok() || r.has("relative/functor")) return r;
  const FinCat& n = *fc.pi.source;
  const FiberEnds ends = fiber_ends(fc.pi);
  bool co = false, ca = false;
  for (MorId f = 0; f < n.num_morphisms(); ++f) {
    if (fc.upstairs.weq.contains(f) || !fc.downstairs.weq.contains(fc.pi.mor[f])) continue;
    const CartesianFlags fl = classify_cartesian(fc.pi, f);
    if (!co && fl.cocartesian && cofibrant_with(fc, ends, n.src(f))) {
      r.add("cocartesian-weq", n.morphism_name(f));
      co = true;
    }
    if (!ca && fl.cartesian && fibrant_with(fc, ends, n.tgt(f))) {
      r.add("cartesian-weq", n.morphism_name(f));
      ca = true;
    }
  }
  return r;
}

FibrationCandidate integral_candidate(const ModCatFunctor& fm, const IntegralStructure& is) {
  return FibrationCandidate{is.total.projection, is.classes, fm.base_model->pm};
}

ModelStraightening straighten_modelfib(const FibrationCandidate& fc, const std::string& name) {
  Report r = check_model_fibration(fc);
  if (!r.ok()) throw ValidationError("straighten: not a model fibration", r);
  ModelStraightening out;
  out.underlying = straighten_cat(fc.pi, name);
  out.functor.underlying = out.underlying.functor;
  out.functor.base_model = make_model(fc.downstairs);
  const FinCat& m = *fc.pi.target;
  for (ObjId a = 0; a < m.num_objects(); ++a) {
    const Fiber& f = out.underlying.fibers[a];
    const int k = f.cat->num_morphisms();
    PreModel pm{f.cat->name(), f.cat, MorSet(k), MorSet(k), MorSet(k)};
    for (MorId i = 0; i < k; ++i) {
      const MorId t = f.morphisms[i];
      if (fc.upstairs.weq.contains(t)) pm.weq.insert(i);
      if (fc.upstairs.cof.contains(t)) pm.cof.insert(i);
      if (fc.upstairs.fib.contains(t)) pm.fib.insert(i);
    }
    out.functor.fiber_models.push_back(make_model(pm));
  }
  Report v = validate_modcat_functor(out.functor);
  if (!v.ok()) throw ValidationError("straighten: fibers do not form a model-category valued functor", v);
  return out;
}

Report roundtrip_functor(const ModCatFunctor& fm) {
  Report r;
  IntegralStructure is = build_integral(fm);
  ModelStraightening ms = straighten_modelfib(integral_candidate(fm, is), fm.name() + "'");
  r.merge(compare_straightening(fm.underlying, is.total, ms.underlying), "underlying");
  if (!r.ok()) return r;
  if (!same_classes(fm.base_model->pm, ms.functor.base_model->pm)) r.add("base-classes", fm.base()->name());
  const GrothCat& g = is.total;
  for (ObjId a = 0; a < fm.base()->num_objects(); ++a) {
    const FinCat& fa = *fm.underlying.fiber[a];
    const Fiber& local = ms.underlying.fibers[a];
    const ModelCat& before = fm.fiber(a);
    const ModelCat& after = ms.functor.fiber(a);
    for (MorId phi = 0; phi < fa.num_morphisms(); ++phi) {
      const MorId t = g.morphism(g.object(a, fa.src(phi)), fm.base()->id(a), phi);
      const int l = local.local_mor[t];
      if (l < 0 || before.weq(phi) != after.weq(l) || before.cof(phi) != after.cof(l) ||
          before.fib(phi) != after.fib(l)) {
        r.add("fiber-classes", fm.base()->object_name(a) + ": " + fa.morphism_name(phi));
        break;
      }
    }
  }
  return r;
}

Report roundtrip_fibration(const FibrationCandidate& fc) {
  Report r;
  ModelStraightening ms = straighten_modelfib(fc);
  IntegralStructure is;
  try {
    is = build_integral(ms.functor);
  } catch (const ValidationError& e) {
    r.merge(e.report(), "integral");
    return r;
  }
  r.merge(compare_integration(fc.pi, ms.underlying, is.total), "categories");
  if (!r.ok()) return r;
  const FinCat& n = *fc.pi.source;
  const FinCat& t = is.cat();
  for (MorId m = 0; m < t.num_morphisms(); ++m) {
    const auto [f, phi] = is.total.mor_pair[m];
    const auto [a, x] = is.total.obj_pair[t.src(m)];
    const ObjId b = fc.pi.target->tgt(f);
    const MorId lift = *cocartesian_lift(fc.pi, ms.underlying.fibers[a].objects[x], f);
    const MorId image = n.compose(ms.underlying.fibers[b].morphisms[phi], lift);
    if (is.classes.weq.contains(m) != fc.upstairs.weq.contains(image)) r.add("class-weq", n.morphism_name(image));
    if (is.classes.cof.contains(m) != fc.upstairs.cof.contains(image)) r.add("class-cof", n.morphism_name(image));
    if (is.classes.fib.contains(m) != fc.upstairs.fib.contains(image)) r.add("class-fib", n.morphism_name(image));
  }
  return r;
}

ProjectionQuillen projection_quillen(const FibrationCandidate& fc) {
  ProjectionQuillen out;
  const FiberEnds ends = fiber_ends(fc.pi);
  const FinCat& m = *fc.pi.target;
  const ModelCat up = classes_only(fc.upstairs);
  const ModelCat dn = classes_only(fc.downstairs);
  out.initial_section = find_adjoint(fc.pi, Side::Left);
  out.terminal_section = find_adjoint(fc.pi, Side::Right);
  if (!out.initial_section) out.report.add("initial-section", "π has no left adjoint");
  if (!out.terminal_section) out.report.add("terminal-section", "π has no right adjoint");
  for (ObjId a = 0; a < m.num_objects(); ++a) {
    if (out.initial_section && out.initial_section->left.obj[a] != ends.initial[a])
      out.report.add("initial-section", "not ∅ over " + m.object_name(a));
    if (out.terminal_section && out.terminal_section->right.obj[a] != ends.terminal[a])
      out.report.add("terminal-section", "not * over " + m.object_name(a));
  }
  if (out.initial_section) {
    QuillenCert c = check_quillen(*out.initial_section, dn, up, QuillenMode::Adjunction);
    out.right_quillen = c.left_quillen && c.right_quillen;
    out.report.merge(c.report, "as-right-adjoint");
  }
  if (out.terminal_section) {
    QuillenCert c = check_quillen(*out.terminal_section, up, dn, QuillenMode::Adjunction);
    out.left_quillen = c.left_quillen && c.right_quillen;
    out.report.merge(c.report, "as-left-adjoint");
  }
  return out;
}

LemmaCheck check_cartesian_transfer(const FibrationCandidate& fc) {
  LemmaCheck out;
  if (!check_bicartesian(fc.pi).ok()) return out;
  const ProjectionQuillen pq = projection_quillen(fc);
  out.hypotheses = pq.left_quillen || pq.right_quillen;
  const FinCat& n = *fc.pi.source;
  const PreModel& up = fc.upstairs;
  const PreModel& dn = fc.downstairs;
  for (MorId phi = 0; phi < n.num_morphisms(); ++phi) {
    const MorId d = fc.pi.mor[phi];
    const CartesianFlags fl = classify_cartesian(fc.pi, phi);
    if (fl.cocartesian && pq.right_quillen) {
      ++out.instances;
      if (dn.cof.contains(d) && !up.cof.contains(phi)) out.failures.add("car-lem1-cof", n.morphism_name(phi));
      if (dn.trivcof().contains(d) && !up.trivcof().contains(phi))
        out.failures.add("car-lem1-trivcof", n.morphism_name(phi));
    }
    if (fl.cartesian && pq.left_quillen) {
      ++out.instances;
      if (dn.fib.contains(d) && !up.fib.contains(phi)) out.failures.add("car-lem1-fib", n.morphism_name(phi));
      if (dn.trivfib().contains(d) && !up.trivfib().contains(phi))
        out.failures.add("car-lem1-trivfib", n.morphism_name(phi));
    }
  }
  return out;
}

LemmaCheck check_square_transfer(const FibrationCandidate& fc) {
  LemmaCheck out;
  if (!check_model_fibration(fc).ok()) return out;
  out.hypotheses = true;
  const FinCat& n = *fc.pi.source;
  const PreModel& up = fc.upstairs;
  const PreModel& dn = fc.downstairs;
  std::vector<MorId> cocart, cart;
  for (MorId f = 0; f < n.num_morphisms(); ++f) {
    const CartesianFlags fl = classify_cartesian(fc.pi, f);
    if (fl.cocartesian) cocart.push_back(f);
    if (fl.cartesian) cart.push_back(f);
  }
  auto name = [&](MorId a, MorId b) { return n.morphism_name(a) + " in square with " + n.morphism_name(b); };
  // square: psi: X -> Y (top), eta: X' -> Y' (bottom), phi: X -> X', phi2: Y -> Y'
  auto squares = [&](const std::vector<MorId>& edges, auto&& body) {
    for (MorId psi : edges)
      for (MorId eta : edges)
        for (MorId phi : n.hom(n.src(psi), n.src(eta)))
          for (MorId phi2 : n.hom(n.tgt(psi), n.tgt(eta)))
            if (n.compose(phi2, psi) == n.compose(eta, phi)) body(psi, phi, phi2);
  };
  squares(cocart, [&](MorId psi, MorId phi, MorId phi2) {
    ++out.instances;
    const MorId d = fc.pi.mor[phi2];
    if (up.cof.contains(phi) && dn.cof.contains(d) && !up.cof.contains(phi2))
      out.failures.add("car-lem2-cof", name(phi2, psi));
    if (up.trivcof().contains(phi) && dn.trivcof().contains(d) && !up.trivcof().contains(phi2))
      out.failures.add("car-lem2-trivcof", name(phi2, psi));
  });
  squares(cart, [&](MorId psi, MorId phi, MorId phi2) {
    ++out.instances;
    const MorId d = fc.pi.mor[phi];
    if (up.fib.contains(phi2) && dn.fib.contains(d) && !up.fib.contains(phi))
      out.failures.add("car-lem2-fib", name(phi, psi));
    if (up.trivfib().contains(phi2) && dn.trivfib().contains(d) && !up.trivfib().contains(phi))
      out.failures.add("car-lem2-trivfib", name(phi, psi));
  });
  return out;
}

LemmaCheck check_wfs_composition(const FibrationCandidate& inner, const FibrationCandidate& outer) {
  LemmaCheck out;
  const FinFunctor comp = compose(outer.pi, inner.pi);
  const PreModel& n = inner.upstairs;
  const PreModel& m = inner.downstairs;
  const PreModel& mm = outer.downstairs;
  struct Pair {
    const char* label;
    MorSet ln, rn, lm, rm, lmm, rmm;
  };
  const std::vector<Pair> pairs{
      {"wfs-comp-trivcof", n.trivcof(), n.fib, m.trivcof(), m.fib, mm.trivcof(), mm.fib},
      {"wfs-comp-cof", n.cof, n.trivfib(), m.cof, m.trivfib(), mm.cof, mm.trivfib()}};
  for (const Pair& p : pairs) {
    if (!check_pi_wfs(inner.pi, p.ln, p.rn, p.lm, p.rm).ok()) continue;
    if (!check_pi_wfs(outer.pi, p.lm, p.rm, p.lmm, p.rmm).ok()) continue;
    out.hypotheses = true;
    ++out.instances;
    Report c = check_pi_wfs(comp, p.ln, p.rn, p.lmm, p.rmm);
    if (!c.ok()) out.failures.add(p.label, c.summary());
  }
  return out;
}

}  // namespace fcat
