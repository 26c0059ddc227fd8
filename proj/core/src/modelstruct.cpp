#include "fcat/modelstruct.hpp"

#include <algorithm>

namespace fcat {

MorSet MorSet::identities(const FinCat& c) {
  MorSet s(c.num_morphisms());
  for (ObjId a = 0; a < c.num_objects(); ++a) s.insert(c.id(a));
  return s;
}

MorSet MorSet::of(const FinCat& c, const std::vector<MorId>& members) {
  MorSet s(c.num_morphisms());
  for (MorId f : members) s.insert(f);
  return s;
}

int MorSet::count() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

std::vector<MorId> MorSet::members() const {
  std::vector<MorId> out;
  for (MorId f = 0; f < universe(); ++f)
    if (bits_[f]) out.push_back(f);
  return out;
}

MorSet operator&(const MorSet& a, const MorSet& b) {
  MorSet r(a.universe());
  for (int i = 0; i < a.universe(); ++i) r.bits_[i] = a.bits_[i] & b.bits_[i];
  return r;
}

MorSet operator|(const MorSet& a, const MorSet& b) {
  MorSet r(a.universe());
  for (int i = 0; i < a.universe(); ++i) r.bits_[i] = a.bits_[i] | b.bits_[i];
  return r;
}

MorSet closure(const FinCat& c, const MorSet& s) {
  MorSet r = s | MorSet::identities(c);
  for (bool grew = true; grew;) {
    grew = false;
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
      if (!r.contains(g)) continue;
      for (MorId f = 0; f < c.num_morphisms(); ++f)
        if (r.contains(f) && c.tgt(f) == c.src(g) && !r.contains(c.compose(g, f))) {
          r.insert(c.compose(g, f));
          grew = true;
        }
    }
  }
  return r;
}

bool is_subcategory(const FinCat& c, const MorSet& s) {
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (!s.contains(c.id(a))) return false;
  for (MorId g = 0; g < c.num_morphisms(); ++g) {
    if (!s.contains(g)) continue;
    for (MorId f = 0; f < c.num_morphisms(); ++f)
      if (s.contains(f) && c.tgt(f) == c.src(g) && !s.contains(c.compose(g, f))) return false;
  }
  return true;
}

Report validate_premodel(const PreModel& pm) {
  Report r;
  const FinCat& c = *pm.cat;
  auto check = [&](const MorSet& s, const char* cls) {
    if (s.universe() != c.num_morphisms()) {
      r.add("subcategory", std::string(cls) + " has the wrong universe");
      return;
    }
    for (ObjId a = 0; a < c.num_objects(); ++a)
      if (!s.contains(c.id(a))) {
        r.add("subcategory", std::string(cls) + " misses id of " + c.object_name(a));
        return;
      }
    for (MorId g = 0; g < c.num_morphisms(); ++g)
      for (MorId f = 0; f < c.num_morphisms(); ++f)
        if (s.contains(g) && s.contains(f) && c.tgt(f) == c.src(g) && !s.contains(c.compose(g, f))) {
          r.add("subcategory", std::string(cls) + " not closed: " + c.morphism_name(g) + " . " + c.morphism_name(f));
          return;
        }
  };
  check(pm.weq, "weq");
  check(pm.cof, "cof");
  check(pm.fib, "fib");
  return r;
}

// ---------------------------------------------------------------------------
// Factorizations

namespace {

bool mediates(const FinCat& c, MorId w, MorId fa, MorId fb, MorId ga, MorId gb, const ArrowMap& s) {
  return c.compose(w, fa) == c.compose(ga, s.top) && c.compose(gb, w) == c.compose(s.bottom, fb);
}

std::vector<MorId> mediators(const FinCat& c, ObjId mf, MorId fa, MorId fb, ObjId mg, MorId ga, MorId gb,
                             const ArrowMap& s) {
  std::vector<MorId> out;
  for (MorId w : c.hom(mf, mg))
    if (mediates(c, w, fa, fb, ga, gb, s)) out.push_back(w);
  return out;
}

struct SquareTriple {
  int first, second, composite;  // middle_map[composite] == middle_map[second]∘middle_map[first]
};

std::vector<SquareTriple> composable_squares(const FinCat& c, const std::vector<SquareKey>& keys,
                                             const std::map<SquareKey, int>& index) {
  std::vector<SquareTriple> out;
  std::map<MorId, std::vector<int>> by_source;
  for (int k = 0; k < static_cast<int>(keys.size()); ++k) by_source[keys[k].from].push_back(k);
  for (int k1 = 0; k1 < static_cast<int>(keys.size()); ++k1)
    for (int k2 : by_source[keys[k1].to]) {
      const ArrowMap s{c.compose(keys[k2].square.top, keys[k1].square.top),
                       c.compose(keys[k2].square.bottom, keys[k1].square.bottom)};
      out.push_back({k1, k2, index.at({keys[k1].from, keys[k2].to, s})});
    }
  return out;
}

}  // namespace

bool complete_middle_map(const FinCat& c, FunctorialFactorization& fact) {
  const int m = c.num_morphisms();
  std::vector<SquareKey> keys;
  std::vector<std::vector<MorId>> opts;
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      for (const ArrowMap& s : squares(c, f, g)) {
        auto w = mediators(c, fact.middle[f], fact.first[f], fact.second[f], fact.middle[g], fact.first[g],
                           fact.second[g], s);
        if (f == g && s.top == c.id(c.src(f)) && s.bottom == c.id(c.tgt(f))) w = {c.id(fact.middle[f])};
        if (w.empty()) return false;
        keys.push_back({f, g, s});
        opts.push_back(std::move(w));
      }
  fact.middle_map.clear();
  if (c.thin()) {
    for (size_t k = 0; k < keys.size(); ++k) fact.middle_map[keys[k]] = opts[k].front();
    return true;
  }
  std::map<SquareKey, int> index;
  for (int k = 0; k < static_cast<int>(keys.size()); ++k) index[keys[k]] = k;
  std::vector<std::vector<SquareTriple>> at(keys.size());
  for (const auto& t : composable_squares(c, keys, index))
    at[std::max({t.first, t.second, t.composite})].push_back(t);
  std::vector<MorId> val(keys.size(), kNone);
  auto rec = [&](auto&& self, size_t k) -> bool {
    if (k == keys.size()) return true;
    for (MorId w : opts[k]) {
      val[k] = w;
      bool ok = true;
      for (const auto& t : at[k])
        if (c.compose(val[t.second], val[t.first]) != val[t.composite]) {
          ok = false;
          break;
        }
      if (ok && self(self, k + 1)) return true;
    }
    val[k] = kNone;
    return false;
  };
  if (!rec(rec, 0)) return false;
  for (size_t k = 0; k < keys.size(); ++k) fact.middle_map[keys[k]] = val[k];
  return true;
}


Report validate_factorization(const FinCat& c, const FunctorialFactorization& fact, const MorSet& left,
                              const MorSet& right) {
  Report r;
  const int m = c.num_morphisms();
  if (static_cast<int>(fact.middle.size()) != m || static_cast<int>(fact.first.size()) != m ||
      static_cast<int>(fact.second.size()) != m) {
    r.add("shape", "factorization does not cover every morphism");
    return r;
  }
  for (MorId f = 0; f < m; ++f) {
    const MorId a = fact.first[f], b = fact.second[f];
    const ObjId mid = fact.middle[f];
    if (a < 0 || b < 0 || a >= m || b >= m || c.src(a) != c.src(f) || c.tgt(a) != mid || c.src(b) != mid ||
        c.tgt(b) != c.tgt(f)) {
      r.add("typing", "legs of " + c.morphism_name(f));
      continue;
    }
    if (c.compose(b, a) != f) r.add("composite", c.morphism_name(f));
    if (!left.contains(a)) r.add("left-class", c.morphism_name(f) + ": " + c.morphism_name(a));
    if (!right.contains(b)) r.add("right-class", c.morphism_name(f) + ": " + c.morphism_name(b));
  }
  if (!r.ok()) return r;
  std::vector<SquareKey> keys;
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      for (const ArrowMap& s : squares(c, f, g)) {
        const SquareKey key{f, g, s};
        auto it = fact.middle_map.find(key);
        const std::string w = c.morphism_name(f) + " => " + c.morphism_name(g);
        if (it == fact.middle_map.end()) {
          r.add("middle-map", "missing at " + w);
          continue;
        }
        const MorId x = it->second;
        if (x < 0 || x >= m || c.src(x) != fact.middle[f] || c.tgt(x) != fact.middle[g] ||
            !mediates(c, x, fact.first[f], fact.second[f], fact.first[g], fact.second[g], s))
          r.add("naturality", w);
        else if (f == g && s.top == c.id(c.src(f)) && s.bottom == c.id(c.tgt(f)) && x != c.id(fact.middle[f]))
          r.add("functoriality", "identity square at " + c.morphism_name(f));
        keys.push_back(key);
      }
  if (!r.ok() || c.thin()) return r;
  std::map<SquareKey, int> index;
  for (int k = 0; k < static_cast<int>(keys.size()); ++k) index[keys[k]] = k;
  for (const auto& t : composable_squares(c, keys, index)) {
    const MorId w1 = fact.middle_map.at(keys[t.first]);
    const MorId w2 = fact.middle_map.at(keys[t.second]);
    if (c.compose(w2, w1) != fact.middle_map.at(keys[t.composite])) {
      r.add("functoriality", "composite square " + c.morphism_name(keys[t.first].from) + " => " +
                                 c.morphism_name(keys[t.second].to));
      break;
    }
  }
  return r;
}

std::optional<FunctorialFactorization> search_functorial_factorization(const FinCat& c, const MorSet& left,
                                                                      const MorSet& right) {
  struct Cand {
    ObjId mid;
    MorId a, b;
  };
  const int m = c.num_morphisms();
  std::vector<std::vector<Cand>> cand(m);
  for (MorId f = 0; f < m; ++f) {
    for (ObjId mid = 0; mid < c.num_objects(); ++mid)
      for (MorId a : c.hom(c.src(f), mid))
        if (left.contains(a))
          for (MorId b : c.hom(mid, c.tgt(f)))
            if (right.contains(b) && c.compose(b, a) == f) cand[f].push_back({mid, a, b});
    if (cand[f].empty()) return std::nullopt;
  }

  auto compatible = [&](MorId f, const Cand& x, MorId g, const Cand& y, const std::vector<ArrowMap>& sq) {
    for (const ArrowMap& s : sq) {
      bool found = false;
      for (MorId w : c.hom(x.mid, y.mid))
        if (mediates(c, w, x.a, x.b, y.a, y.b, s)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    (void)f;
    (void)g;
    return true;
  };

  std::vector<std::vector<char>> alive(m);
  for (MorId f = 0; f < m; ++f) {
    alive[f].assign(cand[f].size(), 1);
    const auto sq = squares(c, f, f);
    for (size_t i = 0; i < cand[f].size(); ++i)
      if (!compatible(f, cand[f][i], f, cand[f][i], sq)) alive[f][i] = 0;
  }

  struct Edge {
    MorId f, g;
    size_t ng;
    std::vector<char> ok;  // ok[i * ng + j]
  };
  std::vector<Edge> edges;
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      if (f == g) continue;
      const auto sq = squares(c, f, g);
      if (sq.empty()) continue;
      Edge e{f, g, cand[g].size(), std::vector<char>(cand[f].size() * cand[g].size(), 0)};
      for (size_t i = 0; i < cand[f].size(); ++i)
        for (size_t j = 0; j < cand[g].size(); ++j) e.ok[i * e.ng + j] = compatible(f, cand[f][i], g, cand[g][j], sq);
      edges.push_back(std::move(e));
    }

  // Arc consistency.
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : edges) {
      for (size_t i = 0; i < cand[e.f].size(); ++i) {
        if (!alive[e.f][i]) continue;
        bool support = false;
        for (size_t j = 0; j < e.ng && !support; ++j) support = alive[e.g][j] && e.ok[i * e.ng + j];
        if (!support) alive[e.f][i] = 0, changed = true;
      }
      for (size_t j = 0; j < e.ng; ++j) {
        if (!alive[e.g][j]) continue;
        bool support = false;
        for (size_t i = 0; i < cand[e.f].size() && !support; ++i) support = alive[e.f][i] && e.ok[i * e.ng + j];
        if (!support) alive[e.g][j] = 0, changed = true;
      }
    }
  }
  for (MorId f = 0; f < m; ++f)
    if (std::find(alive[f].begin(), alive[f].end(), 1) == alive[f].end()) return std::nullopt;

  // Edges touching f whose other endpoint comes earlier.
  std::vector<std::vector<const Edge*>> back(m);
  for (const Edge& e : edges) back[std::max(e.f, e.g)].push_back(&e);

  std::vector<int> pick(m, -1);
  FunctorialFactorization fact;
  fact.middle.resize(m);
  fact.first.resize(m);
  fact.second.resize(m);
  auto rec = [&](auto&& self, MorId f) -> bool {
    if (f == m) {
      for (MorId g = 0; g < m; ++g) {
        const Cand& x = cand[g][pick[g]];
        fact.middle[g] = x.mid;
        fact.first[g] = x.a;
        fact.second[g] = x.b;
      }
      return complete_middle_map(c, fact);
    }
    for (size_t i = 0; i < cand[f].size(); ++i) {
      if (!alive[f][i]) continue;
      pick[f] = static_cast<int>(i);
      bool ok = true;
      for (const Edge* e : back[f]) {
        if (!e->ok[pick[e->f] * e->ng + pick[e->g]]) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, f + 1)) return true;
    }
    pick[f] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return fact;
}

std::optional<MorId> lifting_exists(const FinCat& c, MorId i, MorId p, MorId top, MorId bottom) {
  if (c.src(top) != c.src(i) || c.tgt(top) != c.src(p) || c.src(bottom) != c.tgt(i) || c.tgt(bottom) != c.tgt(p) ||
      c.compose(p, top) != c.compose(bottom, i))
    throw Error("lifting_exists: the square does not commute");
  for (MorId h : c.hom(c.tgt(i), c.src(p)))
    if (c.compose(h, i) == top && c.compose(p, h) == bottom) return h;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Axioms

Report AxiomReport::merged() const {
  Report r;
  r.merge(structure, "structure");
  r.merge(mc1, "MC1");
  r.merge(mc2, "MC2");
  r.merge(mc3, "MC3");
  r.merge(mc4, "MC4");
  r.merge(mc5, "MC5");
  return r;
}

namespace {

void check_two_of_three(const FinCat& c, const MorSet& w, Report& r, bool stop) {
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
      if (c.tgt(f) != c.src(g)) continue;
      const int n = w.contains(f) + w.contains(g) + w.contains(c.compose(g, f));
      if (n == 2) {
        r.add("two-out-of-three", "(" + c.morphism_name(g) + ", " + c.morphism_name(f) + ")");
        if (stop) return;
      }
    }
}

void check_lifting(const FinCat& c, const MorSet& left, const MorSet& right, const char* label, Report& r,
                   bool stop) {
  for (MorId i : left.members())
    for (MorId p : right.members())
      for (MorId top : c.hom(c.src(i), c.src(p)))
        for (MorId bottom : c.hom(c.tgt(i), c.tgt(p))) {
          if (c.compose(p, top) != c.compose(bottom, i)) continue;
          if (!lifting_exists(c, i, p, top, bottom)) {
            r.add(label, "i=" + c.morphism_name(i) + ", p=" + c.morphism_name(p) + ", top=" + c.morphism_name(top) +
                             ", bottom=" + c.morphism_name(bottom));
            if (stop) return;
          }
        }
}

void check_retracts(const FinCat& c, const PreModel& pm, Report& r, bool stop) {
  const std::pair<const MorSet*, const char*> classes[] = {{&pm.weq, "weq"}, {&pm.cof, "cof"}, {&pm.fib, "fib"}};
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (!c.is_iso(f)) continue;
    for (auto [s, name] : classes)
      if (!s->contains(f)) {
        r.add("isomorphisms", std::string(name) + " misses " + c.morphism_name(f));
        if (stop) return;
      }
  }
  if (c.skeletal_poset()) return;
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    for (MorId g : retract_sources(c, f))
      for (auto [s, name] : classes)
        if (s->contains(g) && !s->contains(f)) {
          r.add("retracts", std::string(name) + ": " + c.morphism_name(f) + " is a retract of " + c.morphism_name(g));
          if (stop) return;
        }
}

}  // namespace

AxiomReport check_model_axioms(const PreModel& pm, const FunctorialFactorization* f1,
                               const FunctorialFactorization* f2, const AxiomOptions& opt) {
  AxiomReport rep;
  rep.structure = validate_premodel(pm);
  if (!rep.structure.ok()) return rep;
  const FinCat& c = *pm.cat;
  if (opt.check_mc1) rep.mc1 = bicompleteness_report(pm.cat);
  check_two_of_three(c, pm.weq, rep.mc2, opt.stop_at_first);
  check_retracts(c, pm, rep.mc3, opt.stop_at_first);
  check_lifting(c, pm.cof, pm.trivfib(), "lift-cof-trivfib", rep.mc4, opt.stop_at_first);
  if (rep.mc4.ok() || !opt.stop_at_first)
    check_lifting(c, pm.trivcof(), pm.fib, "lift-trivcof-fib", rep.mc4, opt.stop_at_first);

  auto factor = [&](const FunctorialFactorization* given, const MorSet& l, const MorSet& rr, const char* label,
                    std::optional<FunctorialFactorization>& out) {
    if (given) {
      rep.mc5.merge(validate_factorization(c, *given, l, rr), label);
      out = *given;
      return;
    }
    out = search_functorial_factorization(c, l, rr);
    if (!out) rep.mc5.add(label, "no functorial factorization exists");
  };
  factor(f1, pm.cof, pm.trivfib(), "cof-trivfib", rep.fact1);
  factor(f2, pm.trivcof(), pm.fib, "trivcof-fib", rep.fact2);
  return rep;
}

bool ModelCat::cofibrant(ObjId x) const { return cof(cat()->hom(initial, x).front()); }
bool ModelCat::fibrant(ObjId x) const { return fib(cat()->hom(x, terminal).front()); }

ModelPtr make_model(const PreModel& pm, const FunctorialFactorization* f1, const FunctorialFactorization* f2,
                    const AxiomOptions& opt) {
  AxiomReport rep = check_model_axioms(pm, f1, f2, opt);
  if (!rep.ok()) throw ValidationError("model " + pm.name, rep.merged());
  return assume_model(pm, std::move(*rep.fact1), std::move(*rep.fact2));
}

ModelPtr assume_model(const PreModel& pm, FunctorialFactorization f1, FunctorialFactorization f2) {
  auto mc = std::make_shared<ModelCat>();
  mc->pm = pm;
  mc->fact1 = std::move(f1);
  mc->fact2 = std::move(f2);
  mc->initial = initial_object(*pm.cat).value_or(kNone);
  mc->terminal = terminal_object(*pm.cat).value_or(kNone);
  return mc;
}

std::pair<ObjId, MorId> replacement(const ModelCat& mc, ObjId x, Replacement kind) {
  const FinCat& c = *mc.cat();
  if (kind == Replacement::Cofibrant) {
    if (mc.initial == kNone) throw Error("replacement: " + mc.name() + " has no initial object");
    const MorId f = c.hom(mc.initial, x).front();
    return {mc.fact1.middle[f], mc.fact1.second[f]};
  }
  if (mc.terminal == kNone) throw Error("replacement: " + mc.name() + " has no terminal object");
  const MorId f = c.hom(x, mc.terminal).front();
  return {mc.fact2.middle[f], mc.fact2.first[f]};
}

QuillenCert check_quillen(const Adjunction& adj, const ModelCat& src, const ModelCat& tgt, QuillenMode mode) {
  QuillenCert cert;
  const FinCat& c = *src.cat();
  const FinCat& d = *tgt.cat();
  const FinFunctor& L = adj.left;
  const FinFunctor& R = adj.right;
  Report left, right;
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (src.cof(f) && !tgt.cof(L.mor[f])) left.add("left-preserves-cof", c.morphism_name(f));
    if (src.cof(f) && src.weq(f) && !(tgt.cof(L.mor[f]) && tgt.weq(L.mor[f])))
      left.add("left-preserves-trivcof", c.morphism_name(f));
  }
  for (MorId g = 0; g < d.num_morphisms(); ++g) {
    if (tgt.fib(g) && !src.fib(R.mor[g])) right.add("right-preserves-fib", d.morphism_name(g));
    if (tgt.fib(g) && tgt.weq(g) && !(src.fib(R.mor[g]) && src.weq(R.mor[g])))
      right.add("right-preserves-trivfib", d.morphism_name(g));
  }
  cert.left_quillen = left.ok();
  cert.right_quillen = right.ok();
  cert.report.merge(left);
  if (cert.left_quillen != cert.right_quillen) cert.report.merge(right);
  if (mode == QuillenMode::Adjunction) return cert;

  cert.equivalence_checked = true;
  Report eq;
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    if (!src.cofibrant(x)) continue;
    const auto [fx, j] = replacement(tgt, L.obj[x], Replacement::Fibrant);
    (void)fx;
    const MorId derived = c.compose(R.mor[j], adj.unit.comp[x]);
    if (!src.weq(derived)) eq.add("derived-unit", "at cofibrant " + c.object_name(x) + ": " + c.morphism_name(derived));
  }
  for (ObjId y = 0; y < d.num_objects(); ++y) {
    if (!tgt.fibrant(y)) continue;
    const auto [qy, q] = replacement(src, R.obj[y], Replacement::Cofibrant);
    (void)qy;
    const MorId derived = d.compose(adj.counit.comp[y], L.mor[q]);
    if (!tgt.weq(derived))
      eq.add("derived-counit", "at fibrant " + d.object_name(y) + ": " + d.morphism_name(derived));
  }
  cert.equivalence = cert.left_quillen && eq.ok();
  cert.report.merge(eq);
  return cert;
}

// ---------------------------------------------------------------------------

std::vector<ModelPtr> enumerate_model_structures(const CatPtr& cp, int max_arrows) {
  const FinCat& c = *cp;
  if (!c.skeletal_poset()) throw Error("enumerate_model_structures: " + c.name() + " is not a skeletal poset");
  std::vector<MorId> arrows;
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_identity(f)) arrows.push_back(f);
  const int k = static_cast<int>(arrows.size());
  if (k > max_arrows)
    throw Error("enumerate_model_structures: " + std::to_string(k) + " non-identity morphisms exceed the bound " +
                std::to_string(max_arrows));
  std::vector<ModelPtr> out;
  if (!bicompleteness_report(cp).ok()) return out;

  std::vector<MorSet> subcats;
  for (long mask = 0; mask < (1L << k); ++mask) {
    MorSet s = MorSet::identities(c);
    for (int b = 0; b < k; ++b)
      if (mask >> b & 1) s.insert(arrows[b]);
    if (is_subcategory(c, s)) subcats.push_back(std::move(s));
  }
  AxiomOptions opt;
  opt.check_mc1 = false;
  for (const MorSet& w : subcats) {
    Report r2;
    check_two_of_three(c, w, r2, true);
    if (!r2.ok()) continue;
    for (const MorSet& cof : subcats) {
      const MorSet tc = cof & w;
      for (const MorSet& fib : subcats) {
        Report r4;
        check_lifting(c, cof, fib & w, "", r4, true);
        if (r4.ok()) check_lifting(c, tc, fib, "", r4, true);
        if (!r4.ok()) continue;
        auto f1 = search_functorial_factorization(c, cof, fib & w);
        if (!f1) continue;
        auto f2 = search_functorial_factorization(c, tc, fib);
        if (!f2) continue;
        PreModel pm{c.name() + "#" + std::to_string(out.size()), cp, w, cof, fib};
        if (!check_model_axioms(pm, &*f1, &*f2, opt).ok()) continue;
        out.push_back(assume_model(pm, std::move(*f1), std::move(*f2)));
      }
    }
  }
  return out;
}

namespace {

CatPtr span_shape() {
  static const CatPtr s = build_poset("span", {{"o", "a"}, {"o", "b"}});
  return s;
}

CatPtr cospan_shape() {
  static const CatPtr s = build_poset("cospan", {{"a", "o"}, {"b", "o"}});
  return s;
}

// Diagram on a span/cospan shape sending the two legs to `fa` and `fb`.
FinFunctor two_leg_diagram(const CatPtr& shape, const CatPtr& c, ObjId oa, ObjId ob, ObjId oo, MorId fa, MorId fb,
                           bool span) {
  const FinCat& s = *shape;
  FinFunctor d{shape, c, std::vector<ObjId>(3), std::vector<MorId>(s.num_morphisms())};
  const ObjId a = *s.find_object("a"), b = *s.find_object("b"), o = *s.find_object("o");
  d.obj[a] = oa;
  d.obj[b] = ob;
  d.obj[o] = oo;
  for (ObjId x : {a, b, o}) d.mor[s.id(x)] = c->id(d.obj[x]);
  d.mor[span ? s.unique_hom(o, a) : s.unique_hom(a, o)] = fa;
  d.mor[span ? s.unique_hom(o, b) : s.unique_hom(b, o)] = fb;
  return d;
}

}  // namespace

Report left_proper(const ModelCat& mc) {
  Report r;
  const FinCat& c = *mc.cat();
  const CatPtr shape = span_shape();
  const ObjId b = *shape->find_object("b");
  for (MorId w : mc.pm.weq.members())
    for (MorId k : mc.pm.cof.members()) {
      if (c.src(w) != c.src(k)) continue;
      auto cone = find_colimit(two_leg_diagram(shape, mc.cat(), c.tgt(w), c.tgt(k), c.src(w), w, k, true));
      const std::string wit = c.morphism_name(w) + " along " + c.morphism_name(k);
      if (!cone) {
        r.add("pushout", "missing for " + wit);
        continue;
      }
      if (!mc.weq(cone->legs[b])) r.add("left-proper", wit + " gives " + c.morphism_name(cone->legs[b]));
    }
  return r;
}

Report right_proper(const ModelCat& mc) {
  Report r;
  const FinCat& c = *mc.cat();
  const CatPtr shape = cospan_shape();
  const ObjId b = *shape->find_object("b");
  for (MorId w : mc.pm.weq.members())
    for (MorId p : mc.pm.fib.members()) {
      if (c.tgt(w) != c.tgt(p)) continue;
      auto cone = find_limit(two_leg_diagram(shape, mc.cat(), c.src(w), c.src(p), c.tgt(w), w, p, false));
      const std::string wit = c.morphism_name(w) + " along " + c.morphism_name(p);
      if (!cone) {
        r.add("pullback", "missing for " + wit);
        continue;
      }
      if (!mc.weq(cone->legs[b])) r.add("right-proper", wit + " gives " + c.morphism_name(cone->legs[b]));
    }
  return r;
}

ModelPtr product_model(const ModelCat& a, const ModelCat& b, const ProductCat& p) {
  const FinCat& c = *p.cat;
  PreModel pm{a.name() + "x" + b.name(), p.cat, MorSet(c.num_morphisms()), MorSet(c.num_morphisms()),
              MorSet(c.num_morphisms())};
  for (MorId x = 0; x < c.num_morphisms(); ++x) {
    const auto [f, g] = p.split_mor(x);
    if (a.weq(f) && b.weq(g)) pm.weq.insert(x);
    if (a.cof(f) && b.cof(g)) pm.cof.insert(x);
    if (a.fib(f) && b.fib(g)) pm.fib.insert(x);
  }
  auto combine = [&](const FunctorialFactorization& fa, const FunctorialFactorization& fb) {
    FunctorialFactorization out;
    for (MorId x = 0; x < c.num_morphisms(); ++x) {
      const auto [f, g] = p.split_mor(x);
      out.middle.push_back(p.obj(fa.middle[f], fb.middle[g]));
      out.first.push_back(p.mor(fa.first[f], fb.first[g]));
      out.second.push_back(p.mor(fa.second[f], fb.second[g]));
    }
    for (MorId x = 0; x < c.num_morphisms(); ++x)
      for (MorId y = 0; y < c.num_morphisms(); ++y)
        for (const ArrowMap& s : squares(c, x, y)) {
          const auto [f1, g1] = p.split_mor(x);
          const auto [f2, g2] = p.split_mor(y);
          const auto [t1, t2] = p.split_mor(s.top);
          const auto [b1, b2] = p.split_mor(s.bottom);
          out.middle_map[{x, y, s}] =
              p.mor(fa.middle_map.at({f1, f2, {t1, b1}}), fb.middle_map.at({g1, g2, {t2, b2}}));
        }
    return out;
  };
  FunctorialFactorization f1 = combine(a.fact1, b.fact1);
  FunctorialFactorization f2 = combine(a.fact2, b.fact2);
  return make_model(pm, &f1, &f2);
}

bool same_classes(const PreModel& a, const PreModel& b) {
  return (a.cat == b.cat || a.cat->same_structure(*b.cat)) && a.weq == b.weq && a.cof == b.cof && a.fib == b.fib;
}

}  // namespace fcat
