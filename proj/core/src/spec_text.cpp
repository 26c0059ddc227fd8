#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "fcat/interface.hpp"

namespace fcat {

ParseError::ParseError(int line, int column, const std::string& message, Report report)
    : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message +
            (report.ok() ? std::string() : " [" + report.summary() + "]")),
      line_(line),
      column_(column),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// Workspace

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, std::string_view name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw Error("no " + std::string(kind) + " named '" + std::string(name) + "'");
  return it->second;
}

}  // namespace

bool Workspace::contains(std::string_view name) const {
  return categories.count(name) || models.count(name) || functors.count(name) || adjunctions.count(name) ||
         modcats.count(name) || fibrations.count(name);
}

const CatPtr& Workspace::category(std::string_view n) const { return lookup(categories, n, "category"); }
const ModelDecl& Workspace::model(std::string_view n) const { return lookup(models, n, "model"); }
const FunctorDecl& Workspace::functor(std::string_view n) const { return lookup(functors, n, "functor"); }
const AdjunctionDecl& Workspace::adjunction(std::string_view n) const { return lookup(adjunctions, n, "adjunction"); }
const ModCatDecl& Workspace::modcat(std::string_view n) const { return lookup(modcats, n, "modcat-functor"); }
const FibrationDecl& Workspace::fibration(std::string_view n) const { return lookup(fibrations, n, "fibration"); }

#define FCAT_ADD(method, Type, field, kind)                                       \
  void Workspace::method(const std::string& name, Type d) {                        \
    if (contains(name)) throw Error("duplicate name '" + name + "'");              \
    field.emplace(name, std::move(d));                                             \
    order.emplace_back(kind, name);                                                \
  }
FCAT_ADD(add_category, CatPtr, categories, DeclKind::Category)
FCAT_ADD(add_model, ModelDecl, models, DeclKind::Model)
FCAT_ADD(add_functor, FunctorDecl, functors, DeclKind::Functor)
FCAT_ADD(add_adjunction, AdjunctionDecl, adjunctions, DeclKind::Adjunction)
FCAT_ADD(add_modcat, ModCatDecl, modcats, DeclKind::ModCat)
FCAT_ADD(add_fibration, FibrationDecl, fibrations, DeclKind::Fibration)
#undef FCAT_ADD

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0, col = 0;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c >= 0x80 || std::string_view("_'#*!^@$%~?+/\\|&").find(static_cast<char>(c)) !=
                                             std::string_view::npos;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const unsigned char c = s[i];
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Punct, {}, line, col};
    if (c == '"') {
      t.kind = Tok::String;
      advance(1);
      while (true) {
        if (i >= s.size() || s[i] == '\n') throw ParseError(t.line, t.col, "unterminated string");
        if (s[i] == '"') break;
        if (s[i] == '\\' && i + 1 < s.size()) advance(1);
        t.text += s[i];
        advance(1);
      }
      advance(1);
    } else if (s.substr(i, 2) == "->" || s.substr(i, 2) == "=>") {
      t.text = std::string(s.substr(i, 2));
      advance(2);
    } else if (std::string_view("{}:,[]=.<").find(static_cast<char>(c)) != std::string_view::npos) {
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else if (ident_char(c) || c == '-') {
      t.kind = Tok::Ident;
      while (i < s.size()) {
        const unsigned char d = s[i];
        if (d == '-' && s.substr(i, 2) != "->") {
          t.text += '-';
          advance(1);
        } else if (ident_char(d)) {
          t.text += static_cast<char>(d);
          advance(1);
        } else {
          break;
        }
      }
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, {}, line, col});
  return out;
}

bool plain_identifier(const std::string& s) {
  if (s.empty() || s[0] == '#') return false;
  for (size_t i = 0; i < s.size(); ++i) {
    const unsigned char c = s[i];
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') return false;
      continue;
    }
    if (!ident_char(c)) return false;
  }
  return true;
}

std::string quote(const std::string& s) {
  if (plain_identifier(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
// Parser

struct FactorSpec {
  Token at;
  std::string middle;
  std::string first, second;  // empty: inferred from a unique hom
};

struct ClassSpec {
  Token at;
  bool all = false;
  bool closed = false;
  std::vector<std::pair<Token, std::string>> members;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Workspace run() {
    while (peek().kind != Tok::End) statement();
    return std::move(ws_);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Workspace ws_;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg, Report r = {}) {
    throw ParseError(t.line, t.col, msg, std::move(r));
  }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(peek(), "expected '" + std::string(p) + "'" + found());
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "'" + found());
    next();
  }
  std::string found() const {
    return peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'";
  }
  std::string name(const char* what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::String) fail(peek(), std::string("expected ") + what + found());
    return next().text;
  }
  std::string fresh_name(const char* what) {
    const Token t = peek();
    std::string n = name(what);
    if (ws_.contains(n)) fail(t, "duplicate name '" + n + "'");
    return n;
  }
  std::vector<std::string> name_list(const char* what) {
    std::vector<std::string> out{name(what)};
    while (accept(",")) out.push_back(name(what));
    return out;
  }

  template <class F>
  auto resolve(const Token& t, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ValidationError& e) {
      fail(t, e.what(), e.report());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }

  static ObjId object_of(const FinCat& c, const Token& t, const std::string& n) {
    auto o = c.find_object(n);
    if (!o) fail(t, "no object '" + n + "' in " + c.name());
    return *o;
  }
  static MorId morphism_of(const FinCat& c, const Token& t, const std::string& n) {
    auto m = c.find_morphism(n);
    if (!m) fail(t, "no morphism '" + n + "' in " + c.name());
    return *m;
  }

  void statement() {
    const Token t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected a declaration" + found());
    next();
    if (t.text == "poset") return poset();
    if (t.text == "category") return category();
    if (t.text == "model") return model(t);
    if (t.text == "functor") return functor(t);
    if (t.text == "adjunction") return adjunction(t);
    if (t.text == "modcat-functor") return modcat(t);
    if (t.text == "fibration") return fibration(t);
    fail(t, "unknown declaration '" + t.text + "'");
  }

  void poset() {
    const Token at = peek();
    const std::string n = fresh_name("poset name");
    std::vector<std::pair<std::string, std::string>> covers;
    std::vector<std::string> extra;
    expect("{");
    while (!accept("}")) {
      if (at_word("order")) {
        next();
        expect(":");
        do {
          std::string a = name("object");
          expect("<");
          do {
            std::string b = name("object");
            covers.emplace_back(a, b);
            a = b;
          } while (accept("<"));
        } while (accept(","));
      } else if (at_word("objects")) {
        next();
        expect(":");
        for (auto& o : name_list("object")) extra.push_back(o);
      } else {
        fail(peek(), "expected 'order' or 'objects'" + found());
      }
    }
    std::set<std::string> mentioned;
    for (auto& [a, b] : covers) mentioned.insert({a, b});
    std::vector<std::string> isolated;
    for (auto& o : extra)
      if (!mentioned.count(o)) isolated.push_back(o);
    ws_.add_category(n, resolve(at, [&] { return build_poset(n, covers, isolated); }));
  }

  void category() {
    const Token at = peek();
    const std::string n = fresh_name("category name");
    CategoryData d;
    d.name = n;
    std::map<std::string, ObjId> obj;
    std::map<std::string, MorId> mor;
    std::vector<std::pair<Token, std::array<std::string, 3>>> comps;
    bool explicit_ids = false;
    auto object = [&](const Token& t, const std::string& o) {
      auto it = obj.find(o);
      if (it == obj.end()) fail(t, "undeclared object '" + o + "'");
      return it->second;
    };
    auto add_morphism = [&](const Token& t, const std::string& m, ObjId s, ObjId g) {
      if (mor.count(m)) fail(t, "duplicate morphism '" + m + "'");
      mor[m] = static_cast<MorId>(d.morphisms.size());
      d.morphisms.push_back({m, s, g});
    };
    std::vector<std::tuple<Token, std::string, ObjId, ObjId>> arrows;
    std::vector<int> kinds;  // 0 identity, 1 arrow, in declaration order
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      if (at_word("objects")) {
        next();
        expect(":");
        for (auto& o : name_list("object")) {
          if (obj.count(o)) fail(t, "duplicate object '" + o + "'");
          obj[o] = static_cast<ObjId>(d.objects.size());
          d.objects.push_back(o);
        }
      } else if (at_word("identity")) {
        next();
        explicit_ids = true;
        std::string m = name("morphism name");
        expect(":");
        const Token ot = peek();
        ObjId a = object(ot, name("object"));
        arrows.emplace_back(t, m, a, a);
        kinds.push_back(0);
      } else if (at_word("arrow")) {
        next();
        std::string m = name("morphism name");
        expect(":");
        const Token st = peek();
        ObjId s = object(st, name("object"));
        expect("->");
        const Token tt = peek();
        ObjId g = object(tt, name("object"));
        arrows.emplace_back(t, m, s, g);
        kinds.push_back(1);
      } else if (at_word("compose")) {
        next();
        std::string g = name("morphism");
        expect(".");
        std::string f = name("morphism");
        expect("=");
        std::string h = name("morphism");
        comps.push_back({t, {g, f, h}});
        // arrows must be declared before use
        for (auto& x : {g, f, h}) {
          bool known = false;
          for (auto& a : arrows) known = known || std::get<1>(a) == x;
          if (!known && !(x.rfind("id_", 0) == 0 && obj.count(x.substr(3)) && !explicit_ids))
            fail(t, "undeclared arrow '" + x + "'");
        }
      } else {
        fail(t, "expected 'objects', 'identity', 'arrow' or 'compose'" + found());
      }
    }
    d.identity.assign(d.objects.size(), kNone);
    if (!explicit_ids) {
      for (ObjId a = 0; a < static_cast<ObjId>(d.objects.size()); ++a) {
        add_morphism(at, "id_" + d.objects[a], a, a);
        d.identity[a] = a;
      }
    }
    for (size_t i = 0; i < arrows.size(); ++i) {
      auto& [t, m, s, g] = arrows[i];
      if (kinds[i] == 0) {
        if (d.identity[s] != kNone) fail(t, "second identity on '" + d.objects[s] + "'");
        d.identity[s] = static_cast<MorId>(d.morphisms.size());
      }
      add_morphism(t, m, s, g);
    }
    for (ObjId a = 0; a < static_cast<ObjId>(d.objects.size()); ++a)
      if (d.identity[a] == kNone) fail(at, "no identity declared on '" + d.objects[a] + "'");
    for (MorId f = 0; f < static_cast<MorId>(d.morphisms.size()); ++f) {
      d.compose[{d.identity[d.morphisms[f].tgt], f}] = f;
      d.compose[{f, d.identity[d.morphisms[f].src]}] = f;
    }
    for (auto& [t, gfh] : comps) {
      auto find = [&](const std::string& x) {
        auto it = mor.find(x);
        if (it == mor.end()) fail(t, "undeclared arrow '" + x + "'");
        return it->second;
      };
      const MorId g = find(gfh[0]), f = find(gfh[1]), h = find(gfh[2]);
      auto [it, fresh] = d.compose.emplace(std::make_pair(g, f), h);
      if (!fresh && it->second != h) fail(t, "conflicting composite " + gfh[0] + " . " + gfh[1]);
    }
    ws_.add_category(n, resolve(at, [&] { return FinCat::make(std::move(d)); }));
  }

  ClassSpec class_spec() {
    ClassSpec s;
    s.at = peek();
    if (at_word("closed")) {
      next();
      s.closed = true;
    }
    if (at_word("all")) {
      next();
      s.all = true;
    } else if (at_word("none")) {
      next();
    } else {
      expect("[");
      if (!accept("]")) {
        do {
          const Token t = peek();
          s.members.emplace_back(t, name("morphism"));
        } while (accept(","));
        expect("]");
      }
    }
    return s;
  }

  static MorSet realize(const FinCat& c, const ClassSpec& s) {
    if (s.all) return MorSet::all(c);
    MorSet m = MorSet::identities(c);
    for (auto& [t, n] : s.members) m.insert(morphism_of(c, t, n));
    return s.closed ? closure(c, m) : m;
  }

  static FunctorialFactorization realize(const FinCat& c, const Token& at, const std::map<MorId, FactorSpec>& given) {
    FunctorialFactorization fact;
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
      auto it = given.find(f);
      if (it == given.end()) {
        if (!c.is_identity(f)) fail(at, "factorization misses '" + c.morphism_name(f) + "'");
        fact.middle.push_back(c.src(f));
        fact.first.push_back(f);
        fact.second.push_back(f);
        continue;
      }
      const FactorSpec& s = it->second;
      const ObjId m = object_of(c, s.at, s.middle);
      auto leg = [&](const std::string& n, ObjId a, ObjId b) {
        if (!n.empty()) {
          const MorId l = morphism_of(c, s.at, n);
          if (c.src(l) != a || c.tgt(l) != b) fail(s.at, "leg '" + n + "' has the wrong ends");
          return l;
        }
        if (c.hom(a, b).size() != 1) fail(s.at, "legs of '" + c.morphism_name(f) + "' are not unique; add 'via'");
        return c.hom(a, b).front();
      };
      fact.middle.push_back(m);
      fact.first.push_back(leg(s.first, c.src(f), m));
      fact.second.push_back(leg(s.second, m, c.tgt(f)));
    }
    if (!complete_middle_map(c, fact)) fail(at, "factorization has no functorial middle map");
    return fact;
  }

  void model(const Token& at) {
    const std::string n = fresh_name("model name");
    expect_word("on");
    const Token ct = peek();
    const std::string cname = name("category");
    if (!ws_.categories.count(cname)) fail(ct, "unknown category '" + cname + "'");
    const CatPtr c = ws_.categories.at(cname);
    std::optional<ClassSpec> w, cof, fib;
    std::map<MorId, FactorSpec> f1, f2;
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      const std::string key = name("field");
      if (key == "weq" || key == "cof" || key == "fib") {
        expect(":");
        auto& slot = key == "weq" ? w : key == "cof" ? cof : fib;
        if (slot) fail(t, "duplicate '" + key + "'");
        slot = class_spec();
      } else if (key == "factor1" || key == "factor2") {
        const MorId f = morphism_of(*c, peek(), name("morphism"));
        expect("=");
        FactorSpec s{peek(), name("object"), {}, {}};
        if (at_word("via")) {
          next();
          s.first = name("morphism");
          expect(",");
          s.second = name("morphism");
        }
        auto& target = key == "factor1" ? f1 : f2;
        if (!target.emplace(f, s).second) fail(t, "duplicate factorization of '" + c->morphism_name(f) + "'");
      } else {
        fail(t, "unknown model field '" + key + "'");
      }
    }
    if (!w || !cof || !fib) fail(at, "model '" + n + "' needs weq, cof and fib");
    ModelDecl d;
    d.category = cname;
    d.pm = PreModel{n, c, realize(*c, *w), realize(*c, *cof), realize(*c, *fib)};
    if (Report r = validate_premodel(d.pm); !r.ok()) fail(at, "model '" + n + "' classes are not subcategories", r);
    std::optional<FunctorialFactorization> fact1, fact2;
    if (!f1.empty()) fact1 = realize(*c, at, f1);
    if (!f2.empty()) fact2 = realize(*c, at, f2);
    if (fact1)
      if (Report r = validate_factorization(*c, *fact1, d.pm.cof, d.pm.trivfib()); !r.ok())
        fail(at, "factor1 is not a (Cof, Fib∩W) factorization", r);
    if (fact2)
      if (Report r = validate_factorization(*c, *fact2, d.pm.trivcof(), d.pm.fib); !r.ok())
        fail(at, "factor2 is not a (Cof∩W, Fib) factorization", r);
    d.explicit_factorizations = fact1 || fact2;
    d.axioms = check_model_axioms(d.pm, fact1 ? &*fact1 : nullptr, fact2 ? &*fact2 : nullptr);
    if (d.axioms.ok()) {
      d.model = resolve(at, [&] { return make_model(d.pm, fact1 ? &*fact1 : nullptr, fact2 ? &*fact2 : nullptr); });
    }
    ws_.add_model(n, std::move(d));
  }

  void functor(const Token& at) {
    const std::string n = fresh_name("functor name");
    expect(":");
    const Token st = peek();
    const std::string s = name("category");
    expect("->");
    const Token tt = peek();
    const std::string g = name("category");
    if (!ws_.categories.count(s)) fail(st, "unknown category '" + s + "'");
    if (!ws_.categories.count(g)) fail(tt, "unknown category '" + g + "'");
    const CatPtr src = ws_.categories.at(s), tgt = ws_.categories.at(g);
    FinFunctor F{src, tgt, std::vector<ObjId>(src->num_objects(), kNone), std::vector<MorId>(src->num_morphisms(), kNone)};
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      if (at_word("obj")) {
        next();
        const ObjId a = object_of(*src, peek(), name("object"));
        expect("=>");
        F.obj[a] = object_of(*tgt, peek(), name("object"));
      } else if (at_word("arrow")) {
        next();
        const MorId f = morphism_of(*src, peek(), name("morphism"));
        expect("=>");
        F.mor[f] = morphism_of(*tgt, peek(), name("morphism"));
      } else {
        fail(t, "expected 'obj' or 'arrow'" + found());
      }
    }
    for (ObjId a = 0; a < src->num_objects(); ++a)
      if (F.obj[a] == kNone) fail(at, "functor '" + n + "' misses object '" + src->object_name(a) + "'");
    for (MorId f = 0; f < src->num_morphisms(); ++f) {
      if (F.mor[f] != kNone) continue;
      if (src->is_identity(f)) {
        F.mor[f] = tgt->id(F.obj[src->src(f)]);
      } else {
        const auto& h = tgt->hom(F.obj[src->src(f)], F.obj[src->tgt(f)]);
        if (h.size() != 1) fail(at, "functor '" + n + "' misses arrow '" + src->morphism_name(f) + "'");
        F.mor[f] = h.front();
      }
    }
    if (Report r = validate_functor(F); !r.ok()) fail(at, "functor '" + n + "' is not a functor", r);
    ws_.add_functor(n, FunctorDecl{s, g, std::move(F)});
  }

  const FunctorDecl& functor_ref(const Token& t, const std::string& n) {
    auto it = ws_.functors.find(n);
    if (it == ws_.functors.end()) fail(t, "unknown functor '" + n + "'");
    return it->second;
  }

  void adjunction(const Token& at) {
    const std::string n = fresh_name("adjunction name");
    std::string l, r;
    Token lt, rt;
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      const std::string key = name("field");
      expect(":");
      if (key == "left") {
        lt = peek();
        l = name("functor");
      } else if (key == "right") {
        rt = peek();
        r = name("functor");
      } else {
        fail(t, "unknown adjunction field '" + key + "'");
      }
    }
    if (l.empty() || r.empty()) fail(at, "adjunction '" + n + "' needs left and right");
    const FinFunctor& L = functor_ref(lt, l).functor;
    const FinFunctor& R = functor_ref(rt, r).functor;
    if (L.source != R.target || L.target != R.source) fail(at, "left and right do not run in opposite directions");
    ws_.add_adjunction(n, AdjunctionDecl{l, r, derive_adjunction(at, n, L, R)});
  }

  // The first universal arrow per object, as find_adjoint picks it; if that
  // does not reproduce R on morphisms, the counits are searched per object
  // among every universal candidate.
  static Adjunction derive_adjunction(const Token& at, const std::string& n, const FinFunctor& L, const FinFunctor& R) {
    if (auto a = find_adjoint(L, Side::Right); a && a->right == R) return *a;
    const FinCat& d = *L.target;
    std::vector<std::vector<MorId>> cands(d.num_objects());
    for (ObjId b = 0; b < d.num_objects(); ++b) cands[b] = d.hom(L.obj[R.obj[b]], b);
    std::vector<size_t> pick(d.num_objects(), 0);
    for (ObjId b = 0; b < d.num_objects(); ++b)
      if (cands[b].empty()) fail(at, "'" + n + "': no counit at '" + d.object_name(b) + "'");
    while (true) {
      std::vector<MorId> counit;
      for (ObjId b = 0; b < d.num_objects(); ++b) counit.push_back(cands[b][pick[b]]);
      if (auto a = adjunction_from_counits(L, R.obj, counit); a && a->right == R && check_adjunction(*a).ok()) return *a;
      ObjId b = 0;
      while (b < d.num_objects() && ++pick[b] == cands[b].size()) pick[b++] = 0;
      if (b == d.num_objects()) break;
    }
    fail(at, "'" + n + "': left is not adjoint to right");
  }

  const ModelDecl& model_ref(const Token& t, const std::string& n, bool need_axioms) {
    auto it = ws_.models.find(n);
    if (it == ws_.models.end()) fail(t, "unknown model '" + n + "'");
    if (need_axioms && !it->second.model)
      fail(t, "model '" + n + "' fails the axioms", it->second.axioms.merged());
    return it->second;
  }

  void modcat(const Token& at) {
    const std::string n = fresh_name("modcat-functor name");
    expect_word("on");
    const Token bt = peek();
    const std::string bname = name("model");
    const ModelPtr base = model_ref(bt, bname, true).model;
    const FinCat& b = *base->cat();
    ModCatDecl d;
    d.base = bname;
    d.fiber.assign(b.num_objects(), {});
    std::vector<ModelPtr> fibers(b.num_objects());
    std::vector<std::optional<Adjunction>> arrows(b.num_morphisms());
    std::vector<std::tuple<Token, bool, MorId, MorId, std::vector<std::string>>> cells;
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      if (at_word("fiber")) {
        next();
        const ObjId a = object_of(b, peek(), name("object"));
        expect("=");
        const Token mt = peek();
        const std::string m = name("model");
        if (!d.fiber[a].empty()) fail(t, "duplicate fiber");
        d.fiber[a] = m;
        fibers[a] = model_ref(mt, m, true).model;
      } else if (at_word("arrow")) {
        next();
        const MorId f = morphism_of(b, peek(), name("morphism"));
        expect("=");
        const Token adt = peek();
        const std::string ad = name("adjunction");
        auto it = ws_.adjunctions.find(ad);
        if (it == ws_.adjunctions.end()) fail(adt, "unknown adjunction '" + ad + "'");
        if (d.arrow.count(f)) fail(t, "duplicate arrow");
        d.arrow[f] = ad;
        arrows[f] = it->second.adjunction;
      } else if (at_word("coherence")) {
        next();
        std::vector<std::string> comps;
        if (at_word("comp")) {
          next();
          const MorId g = morphism_of(b, peek(), name("morphism"));
          expect(".");
          const MorId f = morphism_of(b, peek(), name("morphism"));
          expect("=");
          expect("[");
          comps = name_list("morphism");
          expect("]");
          cells.emplace_back(t, false, g, f, comps);
        } else {
          expect_word("id");
          const ObjId a = object_of(b, peek(), name("object"));
          expect("=");
          expect("[");
          comps = name_list("morphism");
          expect("]");
          cells.emplace_back(t, true, a, kNone, comps);
        }
      } else {
        fail(t, "expected 'fiber', 'arrow' or 'coherence'" + found());
      }
    }
    AdjCatFunctor F;
    F.name = n;
    F.base = base->cat();
    for (ObjId a = 0; a < b.num_objects(); ++a) {
      if (!fibers[a]) fail(at, "'" + n + "' misses the fiber over '" + b.object_name(a) + "'");
      F.fiber.push_back(fibers[a]->cat());
    }
    for (MorId f = 0; f < b.num_morphisms(); ++f) {
      if (arrows[f]) {
        const Adjunction& adj = *arrows[f];
        if (adj.lower() != F.fiber[b.src(f)] || adj.upper() != F.fiber[b.tgt(f)])
          fail(at, "adjunction on '" + b.morphism_name(f) + "' does not run between its fibers");
        F.on_arrow.push_back(adj);
      } else if (b.is_identity(f)) {
        F.on_arrow.push_back(identity_adjunction(F.fiber[b.src(f)]));
      } else {
        fail(at, "'" + n + "' misses the adjunction on '" + b.morphism_name(f) + "'");
      }
    }
    resolve(at, [&] {
      fill_coherence(F);
      return 0;
    });
    for (auto& [t, is_id, x, y, comps] : cells) {
      NatTrans& cell = is_id ? F.id_iso[x] : F.comp_iso.at({x, y});
      const FinCat& fib = is_id ? *F.fiber[x] : *F.fiber[b.tgt(x)];
      if (comps.size() != cell.comp.size()) fail(t, "coherence cell needs " + std::to_string(cell.comp.size()) + " components");
      for (size_t i = 0; i < comps.size(); ++i) cell.comp[i] = morphism_of(fib, t, comps[i]);
    }
    d.functor = ModCatFunctor{std::move(F), base, fibers};
    if (Report r = validate_modcat_functor(d.functor); !r.ok()) fail(at, "'" + n + "' is not a valid model-category-valued functor", r);
    ws_.add_modcat(n, std::move(d));
  }

  void fibration(const Token& at) {
    const std::string n = fresh_name("fibration name");
    FibrationDecl d;
    Token pt, ut, dt;
    expect("{");
    while (!accept("}")) {
      const Token t = peek();
      const std::string key = name("field");
      expect(":");
      if (key == "pi") {
        pt = peek();
        d.pi = name("functor");
      } else if (key == "upstairs") {
        ut = peek();
        d.upstairs = name("model");
      } else if (key == "downstairs") {
        dt = peek();
        d.downstairs = name("model");
      } else {
        fail(t, "unknown fibration field '" + key + "'");
      }
    }
    if (d.pi.empty() || d.upstairs.empty() || d.downstairs.empty())
      fail(at, "fibration '" + n + "' needs pi, upstairs and downstairs");
    const FinFunctor& pi = functor_ref(pt, d.pi).functor;
    const PreModel& up = model_ref(ut, d.upstairs, false).pm;
    const PreModel& down = model_ref(dt, d.downstairs, false).pm;
    if (pi.source != up.cat) fail(ut, "upstairs model is not on the source of pi");
    if (pi.target != down.cat) fail(dt, "downstairs model is not on the target of pi");
    d.candidate = FibrationCandidate{pi, up, down};
    ws_.add_fibration(n, std::move(d));
  }
};

// ---------------------------------------------------------------------------
// Printer

std::string join_names(const FinCat& c, const MorSet& s, bool skip_identities) {
  std::string out;
  for (MorId f : s.members()) {
    if (skip_identities && c.is_identity(f)) continue;
    if (!out.empty()) out += ", ";
    out += quote(c.morphism_name(f));
  }
  return out;
}

std::string class_text(const FinCat& c, const MorSet& s) {
  if (s == MorSet::all(c)) return "all";
  if (s == MorSet::identities(c)) return "none";
  return "[" + join_names(c, s, true) + "]";
}

// The Hasse diagram in morphism order, if rebuilding from it reproduces c.
std::optional<std::string> poset_text(const std::string& name, const FinCat& c) {
  if (!c.skeletal_poset()) return std::nullopt;
  std::vector<std::pair<std::string, std::string>> covers;
  std::set<ObjId> mentioned;
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    bool cover = true;
    for (ObjId m = 0; m < c.num_objects() && cover; ++m)
      if (m != c.src(f) && m != c.tgt(f) && c.unique_hom(c.src(f), m) != kNone && c.unique_hom(m, c.tgt(f)) != kNone)
        cover = false;
    if (!cover) continue;
    covers.emplace_back(c.object_name(c.src(f)), c.object_name(c.tgt(f)));
    mentioned.insert({c.src(f), c.tgt(f)});
  }
  std::vector<std::string> extra;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    if (!mentioned.count(a)) extra.push_back(c.object_name(a));
  try {
    if (!build_poset(name, covers, extra)->same_structure(c)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  std::string out = "poset " + quote(name) + " {";
  if (!covers.empty()) {
    out += " order: ";
    for (size_t i = 0; i < covers.size(); ++i)
      out += (i ? ", " : "") + quote(covers[i].first) + " < " + quote(covers[i].second);
  }
  if (!extra.empty()) {
    out += " objects: ";
    for (size_t i = 0; i < extra.size(); ++i) out += (i ? ", " : "") + quote(extra[i]);
  }
  return out + " }\n";
}

}  // namespace

std::string quote_name(const std::string& s) { return quote(s); }

std::string print_category(const std::string& name, const FinCat& c) {
  if (auto p = poset_text(name, c)) return *p;
  std::ostringstream os;
  os << "category " << quote(name) << " {\n  objects: ";
  for (ObjId a = 0; a < c.num_objects(); ++a) os << (a ? ", " : "") << quote(c.object_name(a));
  os << "\n";
  bool implicit = true;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    implicit = implicit && c.id(a) == a && c.morphism_name(a) == "id_" + c.object_name(a);
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) {
      if (!implicit) os << "  identity " << quote(c.morphism_name(f)) << ": " << quote(c.object_name(c.src(f))) << "\n";
    } else {
      os << "  arrow " << quote(c.morphism_name(f)) << ": " << quote(c.object_name(c.src(f))) << " -> "
         << quote(c.object_name(c.tgt(f))) << "\n";
    }
  }
  for (MorId g = 0; g < c.num_morphisms(); ++g)
    for (MorId f = 0; f < c.num_morphisms(); ++f)
      if (!c.is_identity(g) && !c.is_identity(f) && c.tgt(f) == c.src(g))
        os << "  compose " << quote(c.morphism_name(g)) << " . " << quote(c.morphism_name(f)) << " = "
           << quote(c.morphism_name(c.compose(g, f))) << "\n";
  os << "}\n";
  return os.str();
}

std::string print_model(const std::string& name, const std::string& category, const ModelDecl& d) {
  const FinCat& c = *d.pm.cat;
  std::ostringstream os;
  os << "model " << quote(name) << " on " << quote(category) << " {\n";
  os << "  weq: " << class_text(c, d.pm.weq) << "\n";
  os << "  cof: " << class_text(c, d.pm.cof) << "\n";
  os << "  fib: " << class_text(c, d.pm.fib) << "\n";
  if (d.explicit_factorizations && d.model) {
    auto emit = [&](const char* key, const FunctorialFactorization& fact) {
      for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f) && fact.middle[f] == c.src(f) && fact.first[f] == f) continue;
        os << "  " << key << " " << quote(c.morphism_name(f)) << " = " << quote(c.object_name(fact.middle[f]));
        if (c.hom(c.src(f), fact.middle[f]).size() != 1 || c.hom(fact.middle[f], c.tgt(f)).size() != 1)
          os << " via " << quote(c.morphism_name(fact.first[f])) << ", " << quote(c.morphism_name(fact.second[f]));
        os << "\n";
      }
    };
    emit("factor1", d.model->fact1);
    emit("factor2", d.model->fact2);
  }
  os << "}\n";
  return os.str();
}

std::string print_functor(const std::string& name, const FunctorDecl& d) {
  const FinFunctor& F = d.functor;
  const FinCat &s = *F.source, &t = *F.target;
  std::ostringstream os;
  os << "functor " << quote(name) << ": " << quote(d.source) << " -> " << quote(d.target) << " {\n";
  for (ObjId a = 0; a < s.num_objects(); ++a)
    os << "  obj " << quote(s.object_name(a)) << " => " << quote(t.object_name(F.obj[a])) << "\n";
  for (MorId f = 0; f < s.num_morphisms(); ++f)
    if (!s.is_identity(f)) os << "  arrow " << quote(s.morphism_name(f)) << " => " << quote(t.morphism_name(F.mor[f])) << "\n";
  os << "}\n";
  return os.str();
}

namespace {

std::string print_modcat(const std::string& name, const ModCatDecl& d) {
  const AdjCatFunctor& F = d.functor.underlying;
  const FinCat& b = *F.base;
  std::ostringstream os;
  os << "modcat-functor " << quote(name) << " on " << quote(d.base) << " {\n";
  for (ObjId a = 0; a < b.num_objects(); ++a)
    os << "  fiber " << quote(b.object_name(a)) << " = " << quote(d.fiber[a]) << "\n";
  for (auto& [f, adj] : d.arrow) os << "  arrow " << quote(b.morphism_name(f)) << " = " << quote(adj) << "\n";
  AdjCatFunctor defaults = F;
  fill_coherence(defaults);
  auto comps = [](const FinCat& c, const NatTrans& t) {
    std::string out;
    for (size_t i = 0; i < t.comp.size(); ++i) out += (i ? ", " : "") + quote(c.morphism_name(t.comp[i]));
    return out;
  };
  for (ObjId a = 0; a < b.num_objects(); ++a)
    if (F.id_iso[a].comp != defaults.id_iso[a].comp)
      os << "  coherence id " << quote(b.object_name(a)) << " = [" << comps(*F.fiber[a], F.id_iso[a]) << "]\n";
  for (auto& [gf, cell] : F.comp_iso)
    if (cell.comp != defaults.comp_iso.at(gf).comp)
      os << "  coherence comp " << quote(b.morphism_name(gf.first)) << " . " << quote(b.morphism_name(gf.second))
         << " = [" << comps(*F.fiber[b.tgt(gf.first)], cell) << "]\n";
  os << "}\n";
  return os.str();
}

}  // namespace

std::string print_workspace(const Workspace& ws) {
  std::string out;
  for (auto& [kind, n] : ws.order) {
    switch (kind) {
      case DeclKind::Category:
        out += print_category(n, *ws.category(n));
        break;
      case DeclKind::Model:
        out += print_model(n, ws.model(n).category, ws.model(n));
        break;
      case DeclKind::Functor:
        out += print_functor(n, ws.functor(n));
        break;
      case DeclKind::Adjunction: {
        auto& a = ws.adjunction(n);
        out += "adjunction " + quote(n) + " { left: " + quote(a.left) + "  right: " + quote(a.right) + " }\n";
        break;
      }
      case DeclKind::ModCat:
        out += print_modcat(n, ws.modcat(n));
        break;
      case DeclKind::Fibration: {
        auto& f = ws.fibration(n);
        out += "fibration " + quote(n) + " { pi: " + quote(f.pi) + "  upstairs: " + quote(f.upstairs) +
               "  downstairs: " + quote(f.downstairs) + " }\n";
        break;
      }
    }
  }
  return out;
}

Workspace parse_spec(std::string_view text) { return Parser(text).run(); }

Workspace load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string to_dot(const FinCat& c, const PreModel* classes) {
  auto q = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << q(c.name().empty() ? std::string("C") : c.name()) << " {\n";
  for (ObjId a = 0; a < c.num_objects(); ++a) os << "  " << q(c.object_name(a)) << ";\n";
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    os << "  " << q(c.object_name(c.src(f))) << " -> " << q(c.object_name(c.tgt(f))) << " [label=" << q(c.morphism_name(f));
    if (classes) {
      auto b = [](bool v) { return v ? "true" : "false"; };
      os << ", weq=" << b(classes->weq.contains(f)) << ", cof=" << b(classes->cof.contains(f))
         << ", fib=" << b(classes->fib.contains(f));
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fcat
