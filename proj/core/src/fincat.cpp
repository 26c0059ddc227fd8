#include "fcat/fincat.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace fcat {

namespace {

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

// Appends "@qualifier" to every name that occurs more than once, then a
// positional suffix if that still collides.
void dedupe_names(std::vector<std::string>& names, const std::vector<std::string>& qualifier) {
  std::map<std::string, int> count;
  for (const auto& n : names) ++count[n];
  for (size_t i = 0; i < names.size(); ++i)
    if (count[names[i]] > 1) names[i] += "@" + qualifier[i];
  count.clear();
  for (const auto& n : names) ++count[n];
  std::map<std::string, int> seen;
  for (auto& n : names)
    if (count[n] > 1) n += "#" + std::to_string(seen[n]++);
}

std::string describe(const CategoryData& raw, MorId f) {
  if (f < 0 || f >= static_cast<MorId>(raw.morphisms.size())) return "#" + std::to_string(f);
  return raw.morphisms[f].name;
}

}  // namespace

// ---------------------------------------------------------------------------

Report validate_category(const CategoryData& raw) {
  Report r;
  const int n = static_cast<int>(raw.objects.size());
  const int m = static_cast<int>(raw.morphisms.size());

  std::set<std::string> names;
  for (const auto& o : raw.objects)
    if (!names.insert(o).second) r.add("unique-names", "object " + o);
  names.clear();
  for (const auto& f : raw.morphisms)
    if (!names.insert(f.name).second) r.add("unique-names", "morphism " + f.name);

  for (const auto& f : raw.morphisms)
    if (f.src < 0 || f.src >= n || f.tgt < 0 || f.tgt >= n) r.add("typing", "morphism " + f.name + " has an unknown endpoint");
  if (!r.ok()) return r;

  if (static_cast<int>(raw.identity.size()) != n) {
    r.add("identity", "identity map does not cover every object");
    return r;
  }
  for (int a = 0; a < n; ++a) {
    const MorId i = raw.identity[a];
    if (i < 0 || i >= m || raw.morphisms[i].src != a || raw.morphisms[i].tgt != a)
      r.add("identity", "identity of " + raw.objects[a] + " is not an endomorphism of it");
  }
  if (!r.ok()) return r;

  std::vector<MorId> table(static_cast<size_t>(m) * m, kNone);
  for (const auto& [key, h] : raw.compose) {
    const auto [g, f] = key;
    if (g < 0 || g >= m || f < 0 || f >= m || h < 0 || h >= m) {
      r.add("closure", "composition entry with unknown morphism");
      continue;
    }
    if (raw.morphisms[f].tgt != raw.morphisms[g].src) {
      r.add("closure", "entry for non-composable pair (" + describe(raw, g) + "," + describe(raw, f) + ")");
      continue;
    }
    if (raw.morphisms[h].src != raw.morphisms[f].src || raw.morphisms[h].tgt != raw.morphisms[g].tgt) {
      r.add("closure", "composite of (" + describe(raw, g) + "," + describe(raw, f) + ") is mis-targeted: " +
                           describe(raw, h));
      continue;
    }
    table[static_cast<size_t>(g) * m + f] = h;
  }
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (raw.morphisms[f].tgt == raw.morphisms[g].src && table[static_cast<size_t>(g) * m + f] == kNone &&
          !raw.compose.count({g, f}))
        r.add("closure", "missing composite (" + describe(raw, g) + "," + describe(raw, f) + ")");
  if (!r.ok()) return r;

  auto comp = [&](MorId g, MorId f) { return table[static_cast<size_t>(g) * m + f]; };
  for (MorId f = 0; f < m; ++f) {
    const auto& mf = raw.morphisms[f];
    if (comp(raw.identity[mf.tgt], f) != f || comp(f, raw.identity[mf.src]) != f)
      r.add("unit", "identity law fails at " + mf.name);
  }
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      if (raw.morphisms[f].tgt != raw.morphisms[g].src) continue;
      const MorId gf = comp(g, f);
      for (MorId h = 0; h < m; ++h) {
        if (raw.morphisms[g].tgt != raw.morphisms[h].src) continue;
        if (comp(h, gf) != comp(comp(h, g), f))
          r.add("associativity", "(" + describe(raw, h) + "," + describe(raw, g) + "," + describe(raw, f) + ")");
      }
    }
  return r;
}

CatPtr FinCat::make(CategoryData raw) {
  Report r = validate_category(raw);
  if (!r.ok()) throw ValidationError("category " + raw.name, r);

  auto c = std::shared_ptr<FinCat>(new FinCat());
  const size_t n = raw.objects.size();
  const size_t m = raw.morphisms.size();
  c->name_ = std::move(raw.name);
  c->objects_ = std::move(raw.objects);
  c->morphisms_ = std::move(raw.morphisms);
  c->identity_ = std::move(raw.identity);
  c->table_.assign(m * m, kNone);
  for (const auto& [key, h] : raw.compose) c->table_[static_cast<size_t>(key.first) * m + key.second] = h;
  c->hom_.assign(n * n, {});
  for (MorId f = 0; f < static_cast<MorId>(m); ++f) c->hom_[c->src(f) * n + c->tgt(f)].push_back(f);
  for (size_t a = 0; a < n; ++a) c->object_index_.emplace(c->objects_[a], static_cast<ObjId>(a));
  for (size_t f = 0; f < m; ++f) c->morphism_index_.emplace(c->morphisms_[f].name, static_cast<MorId>(f));
  for (const auto& h : c->hom_)
    if (h.size() > 1) c->thin_ = false;
  c->skeletal_poset_ = c->thin_;
  if (c->thin_)
    for (size_t a = 0; a < n && c->skeletal_poset_; ++a)
      for (size_t b = 0; b < n; ++b)
        if (a != b && !c->hom_[a * n + b].empty() && !c->hom_[b * n + a].empty()) {
          c->skeletal_poset_ = false;
          break;
        }
  return c;
}

std::optional<ObjId> FinCat::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCat::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCat::inverse(MorId f) const {
  for (MorId g : hom(tgt(f), src(f)))
    if (compose(g, f) == id(src(f)) && compose(f, g) == id(tgt(f))) return g;
  return std::nullopt;
}

CategoryData FinCat::data() const {
  CategoryData d;
  d.name = name_;
  d.objects = objects_;
  d.morphisms = morphisms_;
  d.identity = identity_;
  const int m = num_morphisms();
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (tgt(f) == src(g)) d.compose[{g, f}] = compose(g, f);
  return d;
}

bool FinCat::same_structure(const FinCat& o) const {
  if (objects_ != o.objects_ || identity_ != o.identity_ || table_ != o.table_) return false;
  if (morphisms_.size() != o.morphisms_.size()) return false;
  for (size_t i = 0; i < morphisms_.size(); ++i) {
    const auto& a = morphisms_[i];
    const auto& b = o.morphisms_[i];
    if (a.name != b.name || a.src != b.src || a.tgt != b.tgt) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

bool operator==(const FinFunctor& a, const FinFunctor& b) {
  if (a.obj != b.obj || a.mor != b.mor) return false;
  auto same = [](const CatPtr& x, const CatPtr& y) { return x == y || (x && y && x->same_structure(*y)); };
  return same(a.source, b.source) && same(a.target, b.target);
}

Report validate_functor(const FinFunctor& F) {
  Report r;
  const FinCat& s = *F.source;
  const FinCat& t = *F.target;
  if (static_cast<int>(F.obj.size()) != s.num_objects() || static_cast<int>(F.mor.size()) != s.num_morphisms()) {
    r.add("shape", "object/morphism maps do not cover the source");
    return r;
  }
  for (ObjId a = 0; a < s.num_objects(); ++a)
    if (F.obj[a] < 0 || F.obj[a] >= t.num_objects()) r.add("shape", "object " + s.object_name(a) + " unmapped");
  for (MorId f = 0; f < s.num_morphisms(); ++f) {
    const MorId g = F.mor[f];
    if (g < 0 || g >= t.num_morphisms()) {
      r.add("shape", "morphism " + s.morphism_name(f) + " unmapped");
      continue;
    }
    if (t.src(g) != F.obj[s.src(f)] || t.tgt(g) != F.obj[s.tgt(f)])
      r.add("typing", "image of " + s.morphism_name(f) + " has wrong endpoints");
  }
  if (!r.ok()) return r;
  for (ObjId a = 0; a < s.num_objects(); ++a)
    if (F.mor[s.id(a)] != t.id(F.obj[a])) r.add("identities", "at " + s.object_name(a));
  for (MorId g = 0; g < s.num_morphisms(); ++g)
    for (MorId f = 0; f < s.num_morphisms(); ++f)
      if (s.tgt(f) == s.src(g) && F.mor[s.compose(g, f)] != t.compose(F.mor[g], F.mor[f]))
        r.add("composition", "(" + s.morphism_name(g) + "," + s.morphism_name(f) + ")");
  return r;
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor F{c, c, {}, {}};
  for (ObjId a = 0; a < c->num_objects(); ++a) F.obj.push_back(a);
  for (MorId f = 0; f < c->num_morphisms(); ++f) F.mor.push_back(f);
  return F;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor h{f.source, g.target, {}, {}};
  h.obj.reserve(f.obj.size());
  for (ObjId a : f.obj) h.obj.push_back(g.obj[a]);
  for (MorId m : f.mor) h.mor.push_back(g.mor[m]);
  return h;
}

std::optional<FinFunctor> functor_from_object_map(const CatPtr& source, const CatPtr& target,
                                                  const std::vector<ObjId>& obj) {
  if (!target->thin()) throw Error("functor_from_object_map: target " + target->name() + " is not thin");
  FinFunctor F{source, target, obj, {}};
  for (MorId f = 0; f < source->num_morphisms(); ++f) {
    const MorId g = target->unique_hom(obj[source->src(f)], obj[source->tgt(f)]);
    if (g == kNone) return std::nullopt;
    F.mor.push_back(g);
  }
  return F;
}

FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, ObjId x) {
  return FinFunctor{source, target, std::vector<ObjId>(source->num_objects(), x),
                    std::vector<MorId>(source->num_morphisms(), target->id(x))};
}

Report validate_nat_trans(const NatTrans& t) {
  Report r;
  const FinCat& s = *t.from.source;
  const FinCat& c = *t.from.target;
  if (!(t.from.source == t.to.source || t.from.source->same_structure(*t.to.source)) ||
      !(t.from.target == t.to.target || t.from.target->same_structure(*t.to.target))) {
    r.add("shape", "functors are not parallel");
    return r;
  }
  if (static_cast<int>(t.comp.size()) != s.num_objects()) {
    r.add("shape", "components do not cover the source");
    return r;
  }
  for (ObjId a = 0; a < s.num_objects(); ++a) {
    const MorId k = t.comp[a];
    if (k < 0 || k >= c.num_morphisms() || c.src(k) != t.from.obj[a] || c.tgt(k) != t.to.obj[a])
      r.add("typing", "component at " + s.object_name(a));
  }
  if (!r.ok()) return r;
  for (MorId f = 0; f < s.num_morphisms(); ++f) {
    const ObjId a = s.src(f), b = s.tgt(f);
    if (c.compose(t.to.mor[f], t.comp[a]) != c.compose(t.comp[b], t.from.mor[f]))
      r.add("naturality", "square at " + s.morphism_name(f));
  }
  return r;
}

NatTrans identity_nat(const FinFunctor& f) {
  NatTrans t{f, f, {}};
  for (ObjId a = 0; a < f.source->num_objects(); ++a) t.comp.push_back(f.target->id(f.obj[a]));
  return t;
}

bool is_nat_iso(const NatTrans& t) {
  for (MorId k : t.comp)
    if (!t.from.target->is_iso(k)) return false;
  return true;
}

NatTrans inverse_nat(const NatTrans& t) {
  NatTrans inv{t.to, t.from, {}};
  for (MorId k : t.comp) {
    auto i = t.from.target->inverse(k);
    if (!i) throw Error("inverse_nat: component " + t.from.target->morphism_name(k) + " is not invertible");
    inv.comp.push_back(*i);
  }
  return inv;
}

NatTrans vcompose(const NatTrans& beta, const NatTrans& alpha) {
  NatTrans t{alpha.from, beta.to, {}};
  for (size_t a = 0; a < alpha.comp.size(); ++a) t.comp.push_back(alpha.from.target->compose(beta.comp[a], alpha.comp[a]));
  return t;
}

NatTrans whisker_left(const FinFunctor& h, const NatTrans& alpha) {
  NatTrans t{compose(h, alpha.from), compose(h, alpha.to), {}};
  for (MorId k : alpha.comp) t.comp.push_back(h.mor[k]);
  return t;
}

NatTrans whisker_right(const NatTrans& alpha, const FinFunctor& k) {
  NatTrans t{compose(alpha.from, k), compose(alpha.to, k), {}};
  for (ObjId y : k.obj) t.comp.push_back(alpha.comp[y]);
  return t;
}

// ---------------------------------------------------------------------------

CatPtr build_poset(const std::string& name, const std::vector<std::pair<std::string, std::string>>& covers,
                   const std::vector<std::string>& extra_objects) {
  std::vector<std::string> objs;
  std::map<std::string, int> index;
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(objs.size()));
    if (fresh) objs.push_back(s);
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : covers) {
    const int ia = intern(a);
    const int ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  for (const auto& o : extra_objects) intern(o);
  const int n = static_cast<int>(objs.size());

  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) adj[a].push_back(b);
  for (auto [a, b] : edges) {
    if (a == b) throw Error("poset " + name + ": cycle " + objs[a] + " < " + objs[a]);
    // A path b ->* a closes a cycle through the edge a < b.
    std::vector<int> parent(n, -1);
    std::deque<int> q{b};
    parent[b] = b;
    while (!q.empty()) {
      const int x = q.front();
      q.pop_front();
      if (x == a) break;
      for (int y : adj[x])
        if (parent[y] < 0) {
          parent[y] = x;
          q.push_back(y);
        }
    }
    if (parent[a] >= 0) {
      std::vector<int> path{a};
      for (int x = a; x != b; x = parent[x]) path.push_back(parent[x]);
      std::reverse(path.begin(), path.end());
      std::string cyc = objs[a];
      for (int x : path) cyc += " < " + objs[x];
      throw Error("poset " + name + ": cycle " + cyc);
    }
  }

  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) le[a][a] = 1;
  for (auto [a, b] : edges) le[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i][k])
        for (int j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = 1;

  CategoryData d;
  d.name = name;
  d.objects = objs;
  d.identity.assign(n, kNone);
  std::vector<std::vector<MorId>> at(n, std::vector<MorId>(n, kNone));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b]) {
        at[a][b] = static_cast<MorId>(d.morphisms.size());
        d.morphisms.push_back({a == b ? "id_" + objs[a] : objs[a] + "<" + objs[b], a, b});
        if (a == b) d.identity[a] = at[a][b];
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b])
        for (int c = 0; c < n; ++c)
          if (le[b][c]) d.compose[{at[b][c], at[a][b]}] = at[a][c];
  return FinCat::make(std::move(d));
}

CatPtr chain(int n, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(std::to_string(i), std::to_string(i + 1));
  std::vector<std::string> extra;
  if (n == 1) extra.push_back("0");
  return build_poset(name.empty() ? "chain" + std::to_string(n) : name, covers, extra);
}

CatPtr boolean_lattice(int k, const std::string& name) {
  auto bits = [k](int mask) {
    std::string s;
    for (int i = k - 1; i >= 0; --i) s += (mask >> i & 1) ? '1' : '0';
    return s;
  };
  std::vector<std::pair<std::string, std::string>> covers;
  for (int mask = 0; mask < (1 << k); ++mask)
    for (int i = k - 1; i >= 0; --i)
      if (!(mask >> i & 1)) covers.emplace_back(bits(mask), bits(mask | 1 << i));
  std::vector<std::string> extra;
  if (k == 0) extra.push_back("");
  return build_poset(name.empty() ? "B" + std::to_string(k) : name, covers, extra);
}

CatPtr discrete(int n, const std::string& name) {
  CategoryData d;
  d.name = name.empty() ? "disc" + std::to_string(n) : name;
  for (int a = 0; a < n; ++a) {
    d.objects.push_back(std::to_string(a));
    d.morphisms.push_back({"id_" + std::to_string(a), a, a});
    d.identity.push_back(a);
    d.compose[{a, a}] = a;
  }
  return FinCat::make(std::move(d));
}

CatPtr point_category() {
  static const CatPtr pt = [] {
    CategoryData d;
    d.name = "pt";
    d.objects = {"*"};
    d.morphisms = {{"id_*", 0, 0}};
    d.identity = {0};
    d.compose[{0, 0}] = 0;
    return FinCat::make(std::move(d));
  }();
  return pt;
}

// ---------------------------------------------------------------------------

CatPtr opposite(const CatPtr& c) {
  CategoryData d = c->data();
  const std::string& n = c->name();
  d.name = (n.size() > 3 && n.compare(n.size() - 3, 3, "^op") == 0) ? n.substr(0, n.size() - 3) : n + "^op";
  for (auto& f : d.morphisms) std::swap(f.src, f.tgt);
  std::map<std::pair<MorId, MorId>, MorId> comp;
  for (const auto& [key, h] : d.compose) comp[{key.second, key.first}] = h;
  d.compose = std::move(comp);
  return FinCat::make(std::move(d));
}

FinFunctor opposite(const FinFunctor& f, const CatPtr& source_op, const CatPtr& target_op) {
  return FinFunctor{source_op, target_op, f.obj, f.mor};
}

ProductCat product(const CatPtr& c, const CatPtr& e) {
  ProductCat p;
  p.n2 = e->num_objects();
  p.m2 = e->num_morphisms();
  CategoryData d;
  d.name = c->name() + "x" + e->name();
  for (ObjId a = 0; a < c->num_objects(); ++a)
    for (ObjId b = 0; b < e->num_objects(); ++b) d.objects.push_back(pair_name(c->object_name(a), e->object_name(b)));
  for (MorId f = 0; f < c->num_morphisms(); ++f)
    for (MorId g = 0; g < e->num_morphisms(); ++g)
      d.morphisms.push_back({pair_name(c->morphism_name(f), e->morphism_name(g)), p.obj(c->src(f), e->src(g)),
                             p.obj(c->tgt(f), e->tgt(g))});
  for (ObjId a = 0; a < c->num_objects(); ++a)
    for (ObjId b = 0; b < e->num_objects(); ++b) d.identity.push_back(p.mor(c->id(a), e->id(b)));
  const int m = static_cast<int>(d.morphisms.size());
  for (MorId x = 0; x < m; ++x)
    for (MorId y = 0; y < m; ++y) {
      auto [f1, g1] = p.split_mor(x);
      auto [f2, g2] = p.split_mor(y);
      if (c->tgt(f2) == c->src(f1) && e->tgt(g2) == e->src(g1))
        d.compose[{x, y}] = p.mor(c->compose(f1, f2), e->compose(g1, g2));
    }
  p.cat = FinCat::make(std::move(d));
  p.proj1 = FinFunctor{p.cat, c, {}, {}};
  p.proj2 = FinFunctor{p.cat, e, {}, {}};
  for (ObjId x = 0; x < p.cat->num_objects(); ++x) {
    p.proj1.obj.push_back(p.split_obj(x).first);
    p.proj2.obj.push_back(p.split_obj(x).second);
  }
  for (MorId x = 0; x < p.cat->num_morphisms(); ++x) {
    p.proj1.mor.push_back(p.split_mor(x).first);
    p.proj2.mor.push_back(p.split_mor(x).second);
  }
  return p;
}

std::vector<ArrowMap> squares(const FinCat& c, MorId f, MorId g) {
  std::vector<ArrowMap> out;
  for (MorId u : c.hom(c.src(f), c.src(g)))
    for (MorId v : c.hom(c.tgt(f), c.tgt(g)))
      if (c.compose(g, u) == c.compose(v, f)) out.push_back({u, v});
  return out;
}

ArrowCat arrow_category(const CatPtr& c) {
  ArrowCat a;
  CategoryData d;
  d.name = c->name() + "^[1]";
  const int m = c->num_morphisms();
  for (MorId f = 0; f < m; ++f) d.objects.push_back(c->morphism_name(f));
  std::map<std::tuple<MorId, MorId, MorId, MorId>, MorId> index;
  std::vector<std::string> names, quals;
  d.identity.assign(m, kNone);
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      for (const ArrowMap& s : squares(*c, f, g)) {
        const MorId id = static_cast<MorId>(d.morphisms.size());
        index[{f, g, s.top, s.bottom}] = id;
        d.morphisms.push_back({"", f, g});
        names.push_back(pair_name(c->morphism_name(s.top), c->morphism_name(s.bottom)));
        quals.push_back(c->morphism_name(f));
        a.square.push_back(s);
        if (f == g && s.top == c->id(c->src(f)) && s.bottom == c->id(c->tgt(f))) d.identity[f] = id;
      }
  dedupe_names(names, quals);
  for (size_t i = 0; i < names.size(); ++i) d.morphisms[i].name = names[i];
  for (MorId x = 0; x < static_cast<MorId>(d.morphisms.size()); ++x)
    for (MorId y = 0; y < static_cast<MorId>(d.morphisms.size()); ++y)
      if (d.morphisms[y].tgt == d.morphisms[x].src) {
        const ArrowMap& sx = a.square[x];
        const ArrowMap& sy = a.square[y];
        d.compose[{x, y}] = index.at({d.morphisms[y].src, d.morphisms[x].tgt, c->compose(sx.top, sy.top),
                                      c->compose(sx.bottom, sy.bottom)});
      }
  a.cat = FinCat::make(std::move(d));
  a.dom = FinFunctor{a.cat, c, {}, {}};
  a.cod = FinFunctor{a.cat, c, {}, {}};
  for (MorId f = 0; f < m; ++f) {
    a.dom.obj.push_back(c->src(f));
    a.cod.obj.push_back(c->tgt(f));
  }
  for (const ArrowMap& s : a.square) {
    a.dom.mor.push_back(s.top);
    a.cod.mor.push_back(s.bottom);
  }
  return a;
}

namespace {

SliceCat slice_impl(const CatPtr& c, ObjId x, bool over) {
  SliceCat s;
  s.base_object = x;
  CategoryData d;
  d.name = c->name() + (over ? "/" : "\\") + c->object_name(x);
  std::vector<int> obj_of(c->num_morphisms(), kNone);
  for (MorId f = 0; f < c->num_morphisms(); ++f)
    if ((over ? c->tgt(f) : c->src(f)) == x) {
      obj_of[f] = static_cast<int>(s.structure.size());
      s.structure.push_back(f);
      d.objects.push_back(c->morphism_name(f));
    }
  const int n = static_cast<int>(s.structure.size());
  d.identity.assign(n, kNone);
  std::vector<std::string> names, quals;
  std::vector<MorId> under;
  std::map<std::tuple<int, int, MorId>, MorId> index;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const MorId xi = s.structure[i], xj = s.structure[j];
      const ObjId a = over ? c->src(xi) : c->tgt(xi);
      const ObjId b = over ? c->src(xj) : c->tgt(xj);
      for (MorId g : c->hom(a, b)) {
        const bool ok = over ? c->compose(xj, g) == xi : c->compose(g, xi) == xj;
        if (!ok) continue;
        const MorId id = static_cast<MorId>(d.morphisms.size());
        index[{i, j, g}] = id;
        d.morphisms.push_back({"", i, j});
        names.push_back(c->morphism_name(g));
        quals.push_back(d.objects[i]);
        under.push_back(g);
        if (i == j && g == c->id(a)) d.identity[i] = id;
      }
    }
  dedupe_names(names, quals);
  for (size_t k = 0; k < names.size(); ++k) d.morphisms[k].name = names[k];
  for (MorId p = 0; p < static_cast<MorId>(under.size()); ++p)
    for (MorId q = 0; q < static_cast<MorId>(under.size()); ++q)
      if (d.morphisms[q].tgt == d.morphisms[p].src)
        d.compose[{p, q}] = index.at({d.morphisms[q].src, d.morphisms[p].tgt, c->compose(under[p], under[q])});
  s.cat = FinCat::make(std::move(d));
  s.forget = FinFunctor{s.cat, c, {}, under};
  for (MorId f : s.structure) s.forget.obj.push_back(over ? c->src(f) : c->tgt(f));
  return s;
}

}  // namespace

SliceCat slice(const CatPtr& c, ObjId x) { return slice_impl(c, x, true); }
SliceCat coslice(const CatPtr& c, ObjId x) { return slice_impl(c, x, false); }

namespace {

ConeShape cone_impl(const CatPtr& shape, bool cocone) {
  ConeShape cs;
  cs.shape = shape;
  CategoryData d = shape->data();
  d.name = shape->name() + (cocone ? "^>" : "^<");
  std::string apex = "*";
  while (shape->find_object(apex)) apex += "'";
  const int n = shape->num_objects();
  cs.apex = n;
  d.objects.push_back(apex);
  for (ObjId i = 0; i < n; ++i) {
    cs.legs.push_back(static_cast<MorId>(d.morphisms.size()));
    d.morphisms.push_back({cocone ? shape->object_name(i) + "->" + apex : apex + "->" + shape->object_name(i),
                           cocone ? i : n, cocone ? n : i});
  }
  const MorId id_apex = static_cast<MorId>(d.morphisms.size());
  d.morphisms.push_back({"id_" + apex, n, n});
  d.identity.push_back(id_apex);
  d.compose[{id_apex, id_apex}] = id_apex;
  for (ObjId i = 0; i < n; ++i) {
    const MorId leg = cs.legs[i];
    if (cocone) {
      d.compose[{id_apex, leg}] = leg;
      for (MorId a = 0; a < shape->num_morphisms(); ++a)
        if (shape->tgt(a) == i) d.compose[{leg, a}] = cs.legs[shape->src(a)];
    } else {
      d.compose[{leg, id_apex}] = leg;
      for (MorId a = 0; a < shape->num_morphisms(); ++a)
        if (shape->src(a) == i) d.compose[{a, leg}] = cs.legs[shape->tgt(a)];
    }
  }
  cs.extended = FinCat::make(std::move(d));
  cs.inclusion = FinFunctor{shape, cs.extended, {}, {}};
  for (ObjId i = 0; i < n; ++i) cs.inclusion.obj.push_back(i);
  for (MorId a = 0; a < shape->num_morphisms(); ++a) cs.inclusion.mor.push_back(a);
  return cs;
}

}  // namespace

ConeShape cocone_shape(const CatPtr& shape) { return cone_impl(shape, true); }
ConeShape cone_shape(const CatPtr& shape) { return cone_impl(shape, false); }

CatPtr empty_shape() {
  static const CatPtr c = [] {
    CategoryData d;
    d.name = "empty";
    return FinCat::make(std::move(d));
  }();
  return c;
}

CatPtr pair_shape() {
  static const CatPtr c = discrete(2, "pair");
  return c;
}

CatPtr parallel_pair_shape() {
  static const CatPtr c = [] {
    CategoryData d;
    d.name = "parallel";
    d.objects = {"a", "b"};
    d.morphisms = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
    d.identity = {0, 1};
    d.compose = {{{0, 0}, 0}, {{1, 1}, 1}, {{2, 0}, 2}, {{3, 0}, 3}, {{1, 2}, 2}, {{1, 3}, 3}};
    return FinCat::make(std::move(d));
  }();
  return c;
}

CatPtr arrow_shape() {
  static const CatPtr c = chain(2, "arrow");
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// Backtracking enumeration of (co)cones over `diagram` with fixed apex.
std::vector<Cone> cone_search(const FinFunctor& diagram, ObjId apex, bool cocone) {
  const FinCat& shape = *diagram.source;
  const FinCat& c = *diagram.target;
  const int n = shape.num_objects();
  std::vector<Cone> out;
  std::vector<MorId> legs(n, kNone);
  // Non-identity shape morphisms grouped by their later endpoint.
  std::vector<std::vector<MorId>> check_at(n);
  for (MorId a = 0; a < shape.num_morphisms(); ++a)
    if (!shape.is_identity(a)) check_at[std::max(shape.src(a), shape.tgt(a))].push_back(a);

  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back({apex, legs});
      return;
    }
    const auto& cands = cocone ? c.hom(diagram.obj[i], apex) : c.hom(apex, diagram.obj[i]);
    for (MorId leg : cands) {
      legs[i] = leg;
      bool ok = true;
      for (MorId a : check_at[i]) {
        const ObjId s = shape.src(a), t = shape.tgt(a);
        const MorId da = diagram.mor[a];
        if (cocone ? c.compose(legs[t], da) != legs[s] : c.compose(da, legs[s]) != legs[t]) {
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

bool universal(const FinFunctor& diagram, const Cone& k, bool cocone) {
  const FinCat& c = *diagram.target;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (const Cone& other : cone_search(diagram, x, cocone)) {
      int factorizations = 0;
      const auto& cands = cocone ? c.hom(k.apex, x) : c.hom(x, k.apex);
      for (MorId u : cands) {
        bool ok = true;
        for (size_t i = 0; i < k.legs.size() && ok; ++i)
          ok = (cocone ? c.compose(u, k.legs[i]) : c.compose(k.legs[i], u)) == other.legs[i];
        if (ok && ++factorizations > 1) break;
      }
      if (factorizations != 1) return false;
    }
  return true;
}

std::optional<Cone> find_universal(const FinFunctor& diagram, bool cocone) {
  const FinCat& c = *diagram.target;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (const Cone& k : cone_search(diagram, x, cocone))
      if (universal(diagram, k, cocone)) return k;
  return std::nullopt;
}

}  // namespace

std::vector<Cone> cocones(const FinFunctor& diagram, ObjId apex) { return cone_search(diagram, apex, true); }
std::vector<Cone> cones(const FinFunctor& diagram, ObjId apex) { return cone_search(diagram, apex, false); }
std::optional<Cone> find_colimit(const FinFunctor& diagram) { return find_universal(diagram, true); }
std::optional<Cone> find_limit(const FinFunctor& diagram) { return find_universal(diagram, false); }
bool is_colimit(const FinFunctor& diagram, const Cone& k) { return universal(diagram, k, true); }
bool is_limit(const FinFunctor& diagram, const Cone& k) { return universal(diagram, k, false); }

std::optional<ObjId> initial_object(const FinCat& c) {
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    bool ok = true;
    for (ObjId y = 0; y < c.num_objects() && ok; ++y) ok = c.hom(x, y).size() == 1;
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<ObjId> terminal_object(const FinCat& c) {
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    bool ok = true;
    for (ObjId y = 0; y < c.num_objects() && ok; ++y) ok = c.hom(y, x).size() == 1;
    if (ok) return x;
  }
  return std::nullopt;
}

Report bicompleteness_report(const CatPtr& c) {
  Report r;
  if (!terminal_object(*c)) r.add("limits", "no terminal object");
  if (!initial_object(*c)) r.add("colimits", "no initial object");
  const int n = c->num_objects();
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = a; b < n; ++b) {
      FinFunctor d{pair_shape(), c, {a, b}, {c->id(a), c->id(b)}};
      const std::string w = c->object_name(a) + ", " + c->object_name(b);
      if (!find_limit(d)) r.add("limits", "no product of " + w);
      if (!find_colimit(d)) r.add("colimits", "no coproduct of " + w);
    }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      const auto& h = c->hom(a, b);
      for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j) {
          FinFunctor d{parallel_pair_shape(), c, {a, b}, {c->id(a), c->id(b), h[i], h[j]}};
          const std::string w = c->morphism_name(h[i]) + ", " + c->morphism_name(h[j]);
          if (!find_limit(d)) r.add("limits", "no equalizer of " + w);
          if (!find_colimit(d)) r.add("colimits", "no coequalizer of " + w);
        }
    }
  return r;
}

std::vector<RetractPresentation> enumerate_retracts(const FinCat& c, MorId f) {
  std::vector<RetractPresentation> out;
  const MorId ida = c.id(c.src(f)), idb = c.id(c.tgt(f));
  for (MorId g = 0; g < c.num_morphisms(); ++g) {
    const auto back = squares(c, g, f);
    if (back.empty()) continue;
    for (const ArrowMap& inc : squares(c, f, g))
      for (const ArrowMap& ret : back)
        if (c.compose(ret.top, inc.top) == ida && c.compose(ret.bottom, inc.bottom) == idb)
          out.push_back({g, inc, ret});
  }
  return out;
}

std::vector<MorId> retract_sources(const FinCat& c, MorId f) {
  if (c.skeletal_poset()) return {f};
  std::vector<MorId> out;
  for (const auto& p : enumerate_retracts(c, f))
    if (out.empty() || out.back() != p.of) out.push_back(p.of);
  return out;
}

}  // namespace fcat
