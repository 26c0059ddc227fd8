// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fcat/interface.hpp"
#include "poset_oracle.hpp"

using namespace fcat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Outcome()>& run) {
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-24s %s\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str());
  std::fflush(stdout);
}

std::set<oracle::Pair> as_pairs(const FinCat& c, const MorSet& s) {
  std::set<oracle::Pair> out;
  for (MorId f : s.members())
    if (!c.is_identity(f)) out.insert({c.src(f), c.tgt(f)});
  return out;
}

struct Instance {
  std::string name;
  ModCatFunctor fm;
  IntegralStructure is;
};

// Corpus functors, split by whether they are proper and relative.
struct Corpus {
  std::vector<std::pair<std::string, ModCatFunctor>> all;
  std::vector<Instance> proper_relative;
  double build_seconds = 0;
  Report build_failures;
};

Corpus& corpus() {
  static Corpus c = [] {
    Corpus out;
    for (auto& e : generate_corpus()) {
      auto* fm = std::get_if<ModCatFunctor>(&e.payload);
      if (!fm) continue;
      out.all.emplace_back(e.name, *fm);
    }
    const auto t0 = Clock::now();
    for (const auto& [name, fm] : out.all) {
      if (!check_proper(fm).ok() || !check_relative(fm).ok()) continue;
      try {
        auto is = build_integral(fm, BuildMode::Require);
        if (!is.axioms.ok() || !is.model) out.build_failures.add(name, is.axioms.merged().summary());
        out.proper_relative.push_back({name, fm, std::move(is)});
      } catch (const Error& e) {
        out.build_failures.add(name, e.what());
      }
    }
    out.build_seconds = seconds_since(t0);
    return out;
  }();
  return c;
}

std::string count_detail(int n, const std::string& what) { return std::to_string(n) + " " + what; }

Outcome enumerate_interval() {
  const auto t0 = Clock::now();
  auto i1 = build_poset("I1", {{"0", "1"}});
  auto ms = enumerate_model_structures(i1);
  const double secs = seconds_since(t0);
  std::set<oracle::Triple> got;
  for (const auto& m : ms)
    got.emplace(as_pairs(*i1, m->pm.weq), as_pairs(*i1, m->pm.cof), as_pairs(*i1, m->pm.fib));
  const auto want = oracle::chain_models(2);
  const bool match = got == std::set<oracle::Triple>(want.begin(), want.end()) && ms.size() == want.size();
  return {match && secs < 1.0,
          count_detail(static_cast<int>(ms.size()), "structures, oracle " + std::to_string(want.size())) + ", " +
              std::to_string(secs) + " s"};
}

Outcome integral_axioms() {
  auto& c = corpus();
  const int n = static_cast<int>(c.proper_relative.size());
  return {c.build_failures.ok() && n >= 30 && c.build_seconds < 60.0,
          count_detail(n, "proper relative functors, ") + std::to_string(c.build_seconds) + " s" +
              (c.build_failures.ok() ? "" : ", " + c.build_failures.summary())};
}

Outcome characterization() {
  Report bad;
  for (const auto& inst : corpus().proper_relative) {
    bad.merge(verify_trivial_characterization(inst.fm, inst.is), inst.name);
    bad.merge(verify_weq_symmetry(inst.fm, inst.is), inst.name);
  }
  return {bad.ok(), count_detail(static_cast<int>(corpus().proper_relative.size()), "instances, ") + bad.summary()};
}

Outcome two_object_base() {
  Report bad;
  auto triv = example_4_4(trivial_model(build_poset("I1", {{"0", "1"}})));
  if (!triv.total.axioms.ok()) bad.add("trivial/axioms", triv.total.axioms.merged().summary());
  if (!triv.star.total.cert.equivalence) bad.add("trivial/star", triv.star.total.cert.report.summary());
  if (triv.empty.total.cert.equivalence) bad.add("trivial/empty", "unexpectedly an equivalence");
  auto weak = example_4_4(all_weak_interval());
  if (!weak.total.axioms.ok()) bad.add("weak/axioms", weak.total.axioms.merged().summary());
  if (!weak.star.total.cert.equivalence) bad.add("weak/star", weak.star.total.cert.report.summary());
  if (!weak.empty.total.cert.equivalence) bad.add("weak/empty", weak.empty.total.cert.report.summary());
  bad.merge(triv.report, "trivial");
  bad.merge(weak.report, "weak");
  return {bad.ok(), bad.summary()};
}

BaseChangeCert identity_base_change(const Instance& inst, MorphismKind kind, const std::vector<Adjunction>& comps) {
  const Adjunction bc = identity_adjunction(inst.fm.base());
  const AdjCatFunctor h = kind == MorphismKind::Left ? inst.fm.underlying : reindex(inst.fm.underlying, bc.right, "h");
  const AdjCatFunctor k = kind == MorphismKind::Left ? reindex(inst.fm.underlying, bc.left, "k") : inst.fm.underlying;
  auto fam = family_with_canonical_cells(h, k, comps);
  Report famr = validate_family(h, k, fam);
  if (!famr.ok()) throw ValidationError("family", famr);
  return base_change(inst.fm, inst.is, inst.fm, inst.is, bc, kind, fam);
}

Outcome invariance() {
  Report bad;
  int certified = 0, flipped = 0;
  for (const auto& inst : corpus().proper_relative) {
    if (inst.fm.base()->num_objects() > 2) continue;
    std::vector<Adjunction> ids;
    for (const auto& f : inst.fm.underlying.fiber) ids.push_back(identity_adjunction(f));
    bool all = true;
    for (MorphismKind kind : {MorphismKind::Left, MorphismKind::Right}) {
      auto cert = identity_base_change(inst, kind, ids);
      if (!cert.hypotheses() || !cert.total.ok() || !cert.total.cert.equivalence) {
        bad.add(inst.name, cert.total.report.summary() + "; " + cert.total.cert.report.summary());
        all = false;
      }
    }
    if (all) ++certified;

    // Swap one component for a Quillen adjunction that is not an equivalence.
    for (ObjId a = 0; a < inst.fm.base()->num_objects(); ++a) {
      const ModelPtr& fib = inst.fm.fiber_models[a];
      for (const auto& l : enumerate_functors(fib->cat(), fib->cat(), {}, {})) {
        auto adj = find_adjoint(l, Side::Right);
        if (!adj) continue;
        auto q = check_quillen(*adj, *fib, *fib, QuillenMode::Equivalence);
        if (!q.left_quillen || q.equivalence) continue;
        auto comps = ids;
        comps[a] = *adj;
        BaseChangeCert cert;
        try {
          cert = identity_base_change(inst, MorphismKind::Left, comps);
        } catch (const Error&) {
          continue;  // no canonical naturality cells for this component
        }
        if (!cert.total.adjunction) continue;
        if (cert.total.cert.equivalence || cert.total.cert.report.ok())
          bad.add(inst.name + "/mutated", "total still an equivalence");
        else
          ++flipped;
      }
    }
  }
  return {bad.ok() && certified >= 5 && flipped >= 1,
          count_detail(certified, "setups certified, ") + count_detail(flipped, "mutations flip") +
              (bad.ok() ? "" : ", " + bad.summary())};
}

Outcome fubini_products() {
  auto i1 = build_poset("I1", {{"0", "1"}});
  auto structures = enumerate_model_structures(i1);
  Report bad;
  int bases = 0;
  for (size_t i = 0; i < structures.size(); ++i) {
    for (size_t j = i; j < structures.size(); ++j) {
      auto p = product(structures[i]->cat(), structures[j]->cat());
      auto mn = product_model(*structures[i], *structures[j], p);
      for (const auto& fiber : {point_model(), all_weak_interval()}) {
        auto fm = constant_modcat("const", mn, fiber);
        auto fr = fubini(fm, structures[i], structures[j], p);
        bad.merge(fr.iso_m, "iso_m");
        bad.merge(fr.iso_n, "iso_n");
      }
      ++bases;
    }
  }
  return {bad.ok() && bases >= 3, count_detail(bases, "product bases, ") + bad.summary()};
}

Outcome arrow_match() {
  auto as = arrow_structures(all_weak_interval());
  return {as.injective_match.ok(), as.injective_match.summary()};
}

Outcome roundtrips() {
  Report bad;
  for (const auto& inst : corpus().proper_relative) {
    bad.merge(roundtrip_functor(inst.fm), inst.name + "/functor");
    auto fc = integral_candidate(inst.fm, inst.is);
    bad.merge(roundtrip_fibration(fc), inst.name + "/fibration");
    bad.merge(check_cartesian_transfer(fc).failures, inst.name + "/cartesian");
    bad.merge(check_square_transfer(fc).failures, inst.name + "/square");
  }
  return {bad.ok(), count_detail(static_cast<int>(corpus().proper_relative.size()), "instances, ") + bad.summary()};
}

Outcome relative_colimits() {
  const std::vector<CatPtr> shapes{empty_shape(), pair_shape(), parallel_pair_shape()};
  std::vector<ConeShape> cones;
  for (const auto& s : shapes) cones.push_back(cocone_shape(s));
  Report bad;
  int totals = 0;
  long diagrams = 0;
  for (const auto& [name, fm] : corpus().all) {
    GrothCat g = integrate_cat(fm.underlying);
    if (g.total->num_objects() > 12) continue;
    ++totals;
    const FinFunctor& p = g.projection;
    for (const auto& cs : cones) {
      for (const auto& delta : enumerate_functors(cs.shape, g.total, {}, {})) {
        std::vector<ObjId> fo(cs.extended->num_objects(), kNone);
        std::vector<MorId> fm_(cs.extended->num_morphisms(), kNone);
        for (ObjId i = 0; i < cs.shape->num_objects(); ++i) fo[cs.inclusion.obj[i]] = p.obj[delta.obj[i]];
        for (MorId m = 0; m < cs.shape->num_morphisms(); ++m) fm_[cs.inclusion.mor[m]] = p.mor[delta.mor[m]];
        for (const auto& eps : enumerate_functors(cs.extended, fm.base(), fo, fm_)) {
          ++diagrams;
          auto lift = relative_colimit(p, delta, cs, eps);
          if (lift) {
            if (!is_relative_colimit(p, delta, cs, eps, *lift)) bad.add(name, "output not initial");
            continue;
          }
          for (const auto& l : enumerate_lifts(p, delta, cs, eps))
            if (is_relative_colimit(p, delta, cs, eps, l)) {
              bad.add(name, "missed a relative colimit");
              break;
            }
        }
      }
    }
  }
  return {bad.ok() && totals > 0,
          count_detail(totals, "totals, ") + std::to_string(diagrams) + " diagrams" + (bad.ok() ? "" : ", " + bad.summary())};
}

std::string suite_json() {
  const Workspace ws = load_spec_file(FCAT_TEST_DATA "/two_object.fcat");
  std::string out;
  auto run = [&](Command c) { out += to_json(run_command(ws, c)); };
  run({"validate"});
  run({"enumerate-models", "", {{"category", "I1"}}});
  run({"integrate", "", {{"functor", "SLICE"}}});
  run({"verify-theorem", "integral", {{"functor", "SLICE"}}});
  run({"verify-theorem", "slice", {{"model", "ex44"}}});
  run({"verify-theorem", "correspondence", {{"fibration", "TERMINAL"}}});
  run({"verify-theorem", "example44", {{"fiber", "triv"}}});
  return out;
}

Outcome stable_json() {
  const std::string a = suite_json();
  const std::string b = suite_json();
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes"};
}

}  // namespace

int main() {
  criterion(1, "enumerate-interval", enumerate_interval);
  criterion(2, "integral-axioms", integral_axioms);
  criterion(3, "characterization", characterization);
  criterion(4, "two-object-base", two_object_base);
  criterion(5, "base-change-invariance", invariance);
  criterion(6, "fubini", fubini_products);
  criterion(7, "arrow-structures", arrow_match);
  criterion(8, "correspondence", roundtrips);
  criterion(9, "relative-colimits", relative_colimits);
  criterion(10, "stable-json", stable_json);
  return failures == 0 ? 0 : 1;
}
