#pragma once

// π-weak factorization systems, relative model categories and model
// fibrations, with the correspondence to proper relative functors run as
// executable roundtrips.

#include "fcat/integral.hpp"

namespace fcat {

/// Every functor shape -> target in canonical order; `fixed_obj` and
/// `fixed_mor` pin values (kNone = free, empty = all free).
std::vector<FinFunctor> enumerate_functors(const CatPtr& shape, const CatPtr& target, std::vector<ObjId> fixed_obj,
                                           std::vector<MorId> fixed_mor);

struct FibrationCandidate {
  FinFunctor pi;        // N -> M
  PreModel upstairs;    // on N
  PreModel downstairs;  // on M
};

/// π applied to a class of N lands in the given class of M.
Report check_class_image(const FinFunctor& pi, const MorSet& upstairs, const MorSet& downstairs,
                         const std::string& label);

/// (ln, rn) is a π-weak factorization system relative to (lm, rm): relative
/// retract closure, lifted factorizations and lifted lifts, each checked
/// exhaustively. Issues: class-image, retract-left, retract-right,
/// factorization, lifting.
Report check_pi_wfs(const FinFunctor& pi, const MorSet& ln, const MorSet& rn, const MorSet& lm, const MorSet& rm);

/// Relative initial objects, binary coproducts and coequalizers (and the
/// dual limits) for every diagram in N and every compatible cocone in M.
Report check_relative_bicomplete(const FinFunctor& pi);

/// Two of f, g, g∘f in W_N and π of the third in W_M force the third into W_N.
Report check_relative_two_of_three(const FibrationCandidate& fc);

/// Issues are prefixed bicomplete/, two-of-three, wfs-trivcof/, wfs-cof/.
Report check_relative_model(const FibrationCandidate& fc);

/// ∅_A → X covering id_A is a cofibration (dually *_A for fibrant).
/// Both return false when the fiber lacks the initial (terminal) object.
bool pi_cofibrant(const FibrationCandidate& fc, ObjId x);
bool pi_fibrant(const FibrationCandidate& fc, ObjId x);

/// Relative model category, biCartesian projection, and weak equivalence of
/// coCartesian (Cartesian) arrows out of π-cofibrant (into π-fibrant)
/// objects over W_M. Issues: relative/..., bicartesian/..., cocartesian-weq,
/// cartesian-weq.
Report check_model_fibration(const FibrationCandidate& fc);

/// The projection of an integral structure as a candidate.
FibrationCandidate integral_candidate(const ModCatFunctor& fm, const IntegralStructure& is);

struct ModelStraightening {
  Straightening underlying;
  ModCatFunctor functor;
};

/// Fibers carry the restricted classes (validated as model categories) and
/// arrows act by canonical lifts. The base must be a model category here;
/// throws ValidationError when fc is not a model fibration.
ModelStraightening straighten_modelfib(const FibrationCandidate& fc, const std::string& name = "straightened");

/// straighten ∘ ∫ on fm: fibers, adjunctions, coherence and all three
/// classes agree with fm through X ↦ (A, X).
Report roundtrip_functor(const ModCatFunctor& fm);
/// ∫ ∘ straighten on fc: the canonical comparison is an isomorphism over the
/// base carrying the integral classes onto fc's upstairs classes.
Report roundtrip_fibration(const FibrationCandidate& fc);

struct ProjectionQuillen {
  std::optional<Adjunction> initial_section;   // A ↦ ∅_A, left adjoint of π
  std::optional<Adjunction> terminal_section;  // A ↦ *_A, right adjoint of π
  bool left_quillen = false;   // π as a left adjoint
  bool right_quillen = false;  // π as a right adjoint
  Report report;
};
ProjectionQuillen projection_quillen(const FibrationCandidate& fc);

/// Counts and failures for an implication checked over all instances.
struct LemmaCheck {
  bool hypotheses = false;
  int instances = 0;
  Report failures;
  bool ok() const { return failures.ok(); }
};

/// coCartesian φ over a (trivial) cofibration is a (trivial) cofibration
/// when π is right Quillen, and the Cartesian dual when π is left Quillen.
LemmaCheck check_cartesian_transfer(const FibrationCandidate& fc);

/// Squares with coCartesian horizontal edges transfer (trivial)
/// cofibrations from the left column to the right one when π of the right
/// column is one; dually Cartesian edges transfer (trivial) fibrations from
/// the right column to the left one.
LemmaCheck check_square_transfer(const FibrationCandidate& fc);

/// Composite π'∘π of candidates N -> M -> M' (upstairs of `outer` equal to
/// the downstairs of `inner`): whenever both pairs are π-wfs for each
/// factor, they are for the composite. Issues: wfs-comp-trivcof, wfs-comp-cof.
LemmaCheck check_wfs_composition(const FibrationCandidate& inner, const FibrationCandidate& outer);

}  // namespace fcat
