#include <chrono>
#include <set>
#include <sstream>

#include "fcat/interface.hpp"
#include "json.hpp"

namespace fcat {

void CommandReport::pass(const std::string& name, const std::string& anchor, const std::string& witness) {
  checks.push_back({name, anchor, "pass", witness});
}
void CommandReport::fail(const std::string& name, const std::string& anchor, const std::string& witness) {
  checks.push_back({name, anchor, "fail", witness});
}
void CommandReport::info(const std::string& name, const std::string& anchor, const std::string& witness) {
  checks.push_back({name, anchor, "info", witness});
}
void CommandReport::record(const std::string& name, const std::string& anchor, const Report& r) {
  if (r.ok()) return pass(name, anchor);
  for (const Issue& i : r.issues()) fail(name + "/" + i.check, anchor, i.witness);
}
void CommandReport::touch(const FinCat& c) {
  ++categories;
  morphisms += c.num_morphisms();
}
bool CommandReport::ok() const {
  for (const auto& c : checks)
    if (c.status == "fail" || c.status == "error") return false;
  return true;
}

std::string to_json(const CommandReport& r) {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["paper_anchor"] = c.anchor;
    e["status"] = c.status;
    e["witness"] = c.witness;
    j["checks"].push_back(std::move(e));
  }
  j["stats"]["categories"] = r.categories;
  j["stats"]["morphisms"] = r.morphisms;
  j["stats"]["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2) + "\n";
}

std::string to_text(const CommandReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : c.status == "info" ? "INFO " : "ERROR ") << c.name;
    if (!c.witness.empty()) os << ": " << c.witness;
    os << "\n";
  }
  os << r.categories << " categories, " << r.morphisms << " morphisms";
  if (r.elapsed_ms) os << ", " << r.elapsed_ms << " ms";
  os << "\n";
  return os.str();
}

namespace {

namespace anchor {
constexpr const char* kModel = "definition:model-category";
constexpr const char* kProperRelative = "definition:proper-relative-functor";
constexpr const char* kIntegral = "theorem:integral-model-structure";
constexpr const char* kCharacterization = "lemma:trivial-classes";
constexpr const char* kSymmetry = "observation:weq-symmetry";
constexpr const char* kInvariance = "theorem:base-change-invariance";
constexpr const char* kFubini = "proposition:fubini";
constexpr const char* kCorrespondence = "theorem:model-fibration-correspondence";
constexpr const char* kCartesian = "lemma:cartesian-transfer";
constexpr const char* kSquare = "lemma:square-transfer";
constexpr const char* kProjection = "proposition:projection-quillen";
constexpr const char* kExample = "example:two-object-base";
constexpr const char* kArrow = "corollary:injective-arrow";
constexpr const char* kEnumerate = "definition:model-category";
}  // namespace anchor

class Runner {
 public:
  Runner(const Workspace& ws, const Command& cmd) : ws_(ws), cmd_(cmd) {}

  CommandReport run() {
    const std::string& v = cmd_.verb;
    if (v == "validate") validate();
    else if (v == "model-check") model_check();
    else if (v == "enumerate-models") enumerate();
    else if (v == "integrate") integrate();
    else if (v == "check-proper-relative") proper_relative();
    else if (v == "straighten") straighten();
    else if (v == "export-dot") export_dot();
    else if (v == "verify-theorem") verify();
    else throw Error("unknown command '" + v + "'");
    out_.exit_code = out_.ok() ? 0 : 1;
    return std::move(out_);
  }

 private:
  const Workspace& ws_;
  const Command& cmd_;
  CommandReport out_;
  std::set<const FinCat*> seen_;

  void touch(const CatPtr& c) {
    if (c && seen_.insert(c.get()).second) out_.touch(*c);
  }
  void touch(const ModCatFunctor& fm) {
    touch(fm.base());
    for (const auto& f : fm.underlying.fiber) touch(f);
  }

  const std::string& option(const std::string& key) const {
    auto it = cmd_.options.find(key);
    if (it == cmd_.options.end() || it->second.empty()) throw Error(cmd_.verb + " needs --" + key);
    return it->second;
  }
  bool has(const std::string& key) const { return cmd_.options.count(key) > 0; }

  ModelPtr model_named(const std::string& n) {
    const ModelDecl& d = ws_.model(n);
    if (!d.model) throw Error("model '" + n + "' fails the axioms: " + d.axioms.merged().summary());
    touch(d.model->cat());
    return d.model;
  }
  const ModCatFunctor& modcat_named(const std::string& n) {
    const ModCatFunctor& fm = ws_.modcat(n).functor;
    touch(fm);
    return fm;
  }

  void axioms(const AxiomReport& a, const std::string& prefix, const char* anc) {
    out_.record(prefix + "structure", anc, a.structure);
    out_.record(prefix + "MC1", anc, a.mc1);
    out_.record(prefix + "MC2", anc, a.mc2);
    out_.record(prefix + "MC3", anc, a.mc3);
    out_.record(prefix + "MC4", anc, a.mc4);
    out_.record(prefix + "MC5", anc, a.mc5);
  }

  // Both properness halves and relativeness; true when all hold.
  bool hypotheses(const ModCatFunctor& fm) {
    ProperReport p = check_proper(fm);
    Report rel = check_relative(fm);
    out_.record("left-proper", anchor::kProperRelative, p.left);
    out_.record("right-proper", anchor::kProperRelative, p.right);
    out_.record("relative", anchor::kProperRelative, rel);
    return p.ok() && rel.ok();
  }

  void validate() {
    for (auto& [kind, n] : ws_.order) {
      switch (kind) {
        case DeclKind::Category:
          touch(ws_.category(n));
          out_.pass("category/" + n, {});
          break;
        case DeclKind::Model: {
          const ModelDecl& d = ws_.model(n);
          touch(d.pm.cat);
          if (d.model) out_.pass("model/" + n, anchor::kModel);
          else out_.fail("model/" + n, anchor::kModel, d.axioms.merged().summary());
          break;
        }
        case DeclKind::Functor:
          out_.pass("functor/" + n, {});
          break;
        case DeclKind::Adjunction:
          out_.record("adjunction/" + n, {}, check_adjunction(ws_.adjunction(n).adjunction));
          break;
        case DeclKind::ModCat:
          touch(ws_.modcat(n).functor);
          out_.record("modcat-functor/" + n, {}, validate_modcat_functor(ws_.modcat(n).functor));
          break;
        case DeclKind::Fibration:
          out_.pass("fibration/" + n, {});
          break;
      }
    }
  }

  void model_check() {
    const ModelDecl& d = ws_.model(option("model"));
    touch(d.pm.cat);
    axioms(d.axioms, "", anchor::kModel);
    if (d.model) {
      const Report lp = left_proper(*d.model), rp = right_proper(*d.model);
      out_.info("left-proper", anchor::kModel, lp.ok() ? "yes" : "no: " + lp.summary());
      out_.info("right-proper", anchor::kModel, rp.ok() ? "yes" : "no: " + rp.summary());
    }
  }

  static std::string classes_text(const PreModel& pm) {
    const FinCat& c = *pm.cat;
    auto list = [&](const MorSet& s) {
      std::string o;
      for (MorId f : s.members())
        if (!c.is_identity(f)) o += (o.empty() ? "" : ",") + c.morphism_name(f);
      return "[" + o + "]";
    };
    return "W=" + list(pm.weq) + " C=" + list(pm.cof) + " F=" + list(pm.fib);
  }

  void enumerate() {
    const std::string& n = option("category");
    const CatPtr& c = ws_.category(n);
    touch(c);
    auto ms = enumerate_model_structures(c, cmd_.shape_bound);
    std::string text;
    for (size_t k = 0; k < ms.size(); ++k) {
      const std::string name = n + "#" + std::to_string(k);
      out_.pass("structure/" + name, anchor::kEnumerate, classes_text(ms[k]->pm));
      ModelDecl d{n, ms[k]->pm, {}, ms[k], false};
      text += print_model(name, n, d);
    }
    out_.info("count", anchor::kEnumerate, std::to_string(ms.size()));
    out_.output = text;
  }

  void proper_relative() { hypotheses(modcat_named(option("functor"))); }

  void integrate() {
    const std::string& n = option("functor");
    const ModCatFunctor& fm = modcat_named(n);
    const bool hyp = hypotheses(fm);
    if (!hyp && !cmd_.force) {
      out_.info("integral", anchor::kIntegral, "skipped: hypotheses fail (use --force)");
      return;
    }
    IntegralStructure is = build_integral(fm, BuildMode::Force);
    touch(is.total.total);
    axioms(is.axioms, "integral/", anchor::kIntegral);
    // The emitted file carries the total, its classes and factorizations, and
    // the projection to a copy of the base.
    const std::string total = n + "_total", base = n + "_base";
    std::string text = print_category(total, *is.total.total) + print_category(base, *fm.base());
    if (is.model) text += print_model(n + "_integral", total, ModelDecl{total, is.classes, {}, is.model, true});
    else text += print_model(n + "_integral", total, ModelDecl{total, is.classes, is.axioms, nullptr, false});
    text += print_functor(n + "_projection", FunctorDecl{total, base, is.total.projection});
    out_.output = text;
  }

  void straighten() {
    const std::string& n = option("fibration");
    const FibrationCandidate& fc = ws_.fibration(n).candidate;
    touch(fc.pi.source);
    touch(fc.pi.target);
    Report r = check_model_fibration(fc);
    out_.record("model-fibration", anchor::kCorrespondence, r);
    if (!r.ok()) return;
    ModelStraightening ms = straighten_modelfib(fc, n + "_straightened");
    touch(ms.functor);
    out_.record("roundtrip", anchor::kCorrespondence, roundtrip_fibration(fc));
    out_.output = emit_modcat(n + "_straightened", ms.functor);
  }

  // Every fiber, adjunction functor and the functor itself as .fcat text.
  static std::string emit_modcat(const std::string& n, const ModCatFunctor& fm) {
    const FinCat& b = *fm.base();
    std::string text;
    const std::string base_cat = n + "_B";
    text += print_category(base_cat, b);
    text += print_model(n + "_base", base_cat, ModelDecl{base_cat, fm.base_model->pm, {}, fm.base_model, false});
    std::vector<std::string> fib_cat(b.num_objects()), fib_model(b.num_objects());
    for (ObjId a = 0; a < b.num_objects(); ++a) {
      fib_cat[a] = n + "_F" + std::to_string(a);
      fib_model[a] = n + "_M" + std::to_string(a);
      text += print_category(fib_cat[a], *fm.fiber(a).cat());
      text += print_model(fib_model[a], fib_cat[a], ModelDecl{fib_cat[a], fm.fiber(a).pm, {}, fm.fiber_models[a], false});
    }
    std::string body = "modcat-functor " + n + " on " + n + "_base {\n";
    for (ObjId a = 0; a < b.num_objects(); ++a) body += "  fiber " + quote_name(b.object_name(a)) + " = " + fib_model[a] + "\n";
    for (MorId f = 0; f < b.num_morphisms(); ++f) {
      if (b.is_identity(f)) continue;
      const std::string tag = n + "_f" + std::to_string(f);
      const Adjunction& adj = fm.underlying.on_arrow[f];
      const std::string s = fib_cat[b.src(f)], t = fib_cat[b.tgt(f)];
      text += print_functor(tag + "_push", FunctorDecl{s, t, adj.left});
      text += print_functor(tag + "_pull", FunctorDecl{t, s, adj.right});
      text += "adjunction " + tag + " { left: " + tag + "_push  right: " + tag + "_pull }\n";
      body += "  arrow " + quote_name(b.morphism_name(f)) + " = " + tag + "\n";
    }
    return text + body + "}\n";
  }

  void export_dot() {
    const std::string& n = option("name");
    if (ws_.categories.count(n)) {
      touch(ws_.category(n));
      out_.output = to_dot(*ws_.category(n));
    } else if (ws_.models.count(n)) {
      const ModelDecl& d = ws_.model(n);
      touch(d.pm.cat);
      out_.output = to_dot(*d.pm.cat, &d.pm);
    } else if (ws_.modcats.count(n)) {
      IntegralStructure is = build_integral(modcat_named(n), BuildMode::Force);
      touch(is.total.total);
      out_.output = to_dot(*is.total.total, &is.classes);
    } else {
      throw Error("export-dot: no category, model or modcat-functor named '" + n + "'");
    }
    out_.pass("export-dot/" + n, {});
  }

  void verify() {
    const std::string& t = cmd_.theorem;
    if (t == "integral") verify_integral();
    else if (t == "invariance") verify_invariance();
    else if (t == "fubini") verify_fubini();
    else if (t == "correspondence") verify_correspondence();
    else if (t == "example44") verify_example();
    else if (t == "slice") verify_slice();
    else throw Error("unknown theorem '" + t + "'");
  }

  void verify_integral() {
    const ModCatFunctor& fm = modcat_named(option("functor"));
    if (!hypotheses(fm)) return;
    IntegralStructure is = build_integral(fm);
    touch(is.total.total);
    axioms(is.axioms, "integral/", anchor::kIntegral);
    out_.record("trivial-classes", anchor::kCharacterization, verify_trivial_characterization(fm, is));
    out_.record("weq-symmetry", anchor::kSymmetry, verify_weq_symmetry(fm, is));
  }

  // Base change of F into G along a named adjunction between the bases, with
  // a family given by adjunction names in base-object order. Without
  // --target everything defaults to the identity.
  void verify_invariance() {
    const ModCatFunctor& fm = modcat_named(option("functor"));
    const ModCatFunctor& gm = has("target") ? modcat_named(option("target")) : fm;
    if (!hypotheses(fm)) return;
    Report rel_g = check_relative(gm);
    if (&gm != &fm) {
      ProperReport pg = check_proper(gm);
      out_.record("target/left-proper", anchor::kProperRelative, pg.left);
      out_.record("target/right-proper", anchor::kProperRelative, pg.right);
      out_.record("target/relative", anchor::kProperRelative, rel_g);
      if (!pg.ok() || !rel_g.ok()) return;
    }
    const Adjunction bc = has("adjunction") ? ws_.adjunction(option("adjunction")).adjunction : identity_adjunction(fm.base());
    MorphismKind kind = MorphismKind::Left;
    if (has("kind")) {
      if (option("kind") == "right") kind = MorphismKind::Right;
      else if (option("kind") != "left") throw Error("--kind is left or right");
    }
    const ModCatFunctor& idx = kind == MorphismKind::Left ? fm : gm;
    std::vector<Adjunction> comps;
    if (has("family")) {
      std::stringstream ss(option("family"));
      for (std::string item; std::getline(ss, item, ',');) comps.push_back(ws_.adjunction(item).adjunction);
    } else {
      if (&gm != &fm) throw Error("invariance with --target needs --family");
      for (ObjId a = 0; a < fm.base()->num_objects(); ++a) comps.push_back(identity_adjunction(fm.underlying.fiber[a]));
    }
    if (static_cast<int>(comps.size()) != idx.base()->num_objects())
      throw Error("--family needs one adjunction per base object");
    const AdjCatFunctor h = kind == MorphismKind::Left ? fm.underlying : reindex(fm.underlying, bc.right, "FR");
    const AdjCatFunctor k = kind == MorphismKind::Left ? reindex(gm.underlying, bc.left, "GL") : gm.underlying;
    AdjFamily fam = family_with_canonical_cells(h, k, comps);
    IntegralStructure fi = build_integral(fm), gi = build_integral(gm);
    touch(fi.total.total);
    touch(gi.total.total);
    BaseChangeCert cert = base_change(fm, fi, gm, gi, bc, kind, fam);
    out_.record("base-equivalence", anchor::kInvariance, cert.base.report);
    out_.record("family", anchor::kInvariance, cert.family_report);
    out_.record("total", anchor::kInvariance, cert.total.report);
    if (cert.hypotheses()) {
      if (cert.total.cert.equivalence) out_.pass("total-equivalence", anchor::kInvariance);
      else out_.fail("total-equivalence", anchor::kInvariance, cert.total.cert.report.summary());
    } else {
      out_.info("total-equivalence", anchor::kInvariance,
                cert.total.cert.equivalence ? "equivalence (hypotheses fail)" : "not an equivalence (hypotheses fail)");
    }
  }

  void verify_fubini() {
    const ModelPtr m = model_named(option("left")), n = model_named(option("right"));
    ProductCat p = product(m->cat(), n->cat());
    ModelPtr mn = product_model(*m, *n, p);
    ModCatFunctor fm;
    if (has("functor")) {
      fm = modcat_named(option("functor"));
      if (!fm.base()->same_structure(*p.cat)) throw Error("fubini: the functor's base is not the product of --left and --right");
      if (!same_classes(fm.base_model->pm, mn->pm)) throw Error("fubini: the base model is not the product model");
    } else {
      fm = constant_modcat("const", mn, model_named(option("fiber")));
    }
    touch(p.cat);
    FubiniReport r = fubini(fm, m, n, p);
    touch(r.whole.total.total);
    out_.record("whole/axioms", anchor::kFubini, r.whole.axioms.merged());
    out_.record("iterated-left", anchor::kFubini, r.iso_m);
    out_.record("iterated-right", anchor::kFubini, r.iso_n);
  }

  void correspondence_of(const FibrationCandidate& fc, const std::string& prefix) {
    Report mf = check_model_fibration(fc);
    out_.record(prefix + "model-fibration", anchor::kCorrespondence, mf);
    if (!mf.ok()) return;
    out_.record(prefix + "roundtrip-fibration", anchor::kCorrespondence, roundtrip_fibration(fc));
    auto lemma = [&](const char* name, const char* anc, const LemmaCheck& l) {
      out_.record(prefix + name, anc, l.failures);
      out_.info(prefix + name + "/instances", anc, std::to_string(l.instances));
    };
    lemma("cartesian-transfer", anchor::kCartesian, check_cartesian_transfer(fc));
    lemma("square-transfer", anchor::kSquare, check_square_transfer(fc));
    ProjectionQuillen pq = projection_quillen(fc);
    out_.record(prefix + "projection-quillen", anchor::kProjection, pq.report);
  }

  void verify_correspondence() {
    if (has("functor")) {
      const ModCatFunctor& fm = modcat_named(option("functor"));
      if (!hypotheses(fm)) return;
      out_.record("roundtrip-functor", anchor::kCorrespondence, roundtrip_functor(fm));
      IntegralStructure is = build_integral(fm);
      touch(is.total.total);
      correspondence_of(integral_candidate(fm, is), "integral/");
    } else {
      const FibrationCandidate& fc = ws_.fibration(option("fibration")).candidate;
      touch(fc.pi.source);
      touch(fc.pi.target);
      correspondence_of(fc, "");
    }
  }

  void verify_example() {
    Example44 ex = example_4_4(model_named(option("fiber")));
    touch(ex.functor);
    touch(ex.total.total.total);
    out_.info("relative", anchor::kExample, ex.relative ? "yes" : "no");
    out_.record("claims", anchor::kExample, ex.report);
    auto cert = [&](const std::string& name, const BaseChangeCert& c) {
      const bool eq = c.total.cert.equivalence;
      out_.info(name, anchor::kExample, eq ? "Quillen equivalence" : "not a Quillen equivalence: " + c.total.cert.report.summary());
    };
    cert("star", ex.star);
    cert("empty", ex.empty);
  }

  void verify_slice() {
    const ModelPtr mc = model_named(option("model"));
    ArrowStructures as = arrow_structures(mc);
    touch(as.arrows.cat);
    if (as.slice_integral) {
      touch(as.slice_integral->total.total);
      out_.record("injective-match", anchor::kArrow, as.injective_match);
    } else {
      out_.info("injective-match", anchor::kArrow, "not right proper: " + as.injective_match.summary());
    }
    if (as.coslice_integral) {
      touch(as.coslice_integral->total.total);
      out_.record("projective-match", anchor::kArrow, as.projective_match);
    } else {
      out_.info("projective-match", anchor::kArrow, "not left proper: " + as.projective_match.summary());
    }
  }
};

}  // namespace

CommandReport run_command(const Workspace& ws, const Command& cmd) {
  const auto start = std::chrono::steady_clock::now();
  CommandReport r = Runner(ws, cmd).run();
  if (cmd.timing)
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fcat
