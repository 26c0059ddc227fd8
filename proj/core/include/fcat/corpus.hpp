#pragma once

// Worked examples and generators: slice and coslice functors, the injective
// and projective arrow structures, the two-object base scenario, and the
// lattice corpus used by the theorem suites.

#include <variant>

#include "fcat/modelfib.hpp"

namespace fcat {

ModelPtr point_model();
/// W = isomorphisms, Cof = Fib = everything.
ModelPtr trivial_model(const CatPtr& c);
/// I1 with every morphism a weak equivalence and a cofibration, Fib = isos.
ModelPtr all_weak_interval();

/// A ↦ M/A with the inherited classes; φ_! composes, φ* pulls back.
/// Throws Error when some φ* does not exist.
ModCatFunctor slice_functor(const ModelPtr& mc);
/// A ↦ A/M with the inherited classes; φ* precomposes, φ_! pushes out.
ModCatFunctor coslice_functor(const ModelPtr& mc);

struct ArrowStructures {
  ArrowCat arrows;
  ModelPtr injective;   // W, Cof componentwise; Fib by lifting
  ModelPtr projective;  // W, Fib componentwise; Cof by lifting
  std::optional<IntegralStructure> slice_integral;    // when mc is right proper
  std::optional<IntegralStructure> coslice_integral;  // when mc is left proper
  FinFunctor slice_iso, coslice_iso;                  // integral totals -> M^[1]
  Report injective_match, projective_match;
};
/// Both structures are computed directly on M^[1] and compared with the
/// integrals of the slice and coslice functors through the canonical
/// isomorphisms, whose inverses are checked too.
ArrowStructures arrow_structures(const ModelPtr& mc);

struct Example44 {
  ModCatFunctor functor;  // F(0) = pt, F(1) = fiber, arrow by the initial object
  IntegralStructure total;
  bool relative = false;
  BaseChangeCert star;   // γ_* ⊣ ι_*, base change along I1 -> pt
  BaseChangeCert empty;  // ι_∅ ⊣ γ_∅, base change along 0: pt -> I1
  Report report;         // the claims that did not hold
};
/// Over the all-weak interval; the total is built in force mode.
Example44 example_4_4(const ModelPtr& fiber);

struct CorpusSpec {
  int max_chain = 4;    // chains with 1..max_chain elements
  int max_boolean = 2;  // boolean lattices B2..B_max_boolean
  bool slices = true;
  bool constants = true;
};

struct CorpusEntry {
  std::string name;
  std::variant<ModelPtr, ModCatFunctor, FibrationCandidate> payload;
  std::string provenance;
};

/// Every model structure on each lattice, then slice, coslice and constant
/// functors (fibers pt and every structure on I1) over each of them. Names
/// are stable: lattice "C3", structure "C3#4", functor "slice(C3#4)".
/// Throws Error above chains of 5 or B3.
std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec = {});

}  // namespace fcat
