#pragma once

// Model-category-valued pseudo-functors, properness and relativeness, the
// integral model structure on the Grothendieck construction, Quillen
// transformations, base change and the Fubini comparison.

#include "fcat/grothendieck.hpp"
#include "fcat/modelstruct.hpp"

namespace fcat {

struct ModCatFunctor {
  AdjCatFunctor underlying;
  ModelPtr base_model;
  std::vector<ModelPtr> fiber_models;  // per base object

  const std::string& name() const { return underlying.name; }
  const CatPtr& base() const { return underlying.base; }
  const ModelCat& fiber(ObjId a) const { return *fiber_models[a]; }
};

/// Underlying coherence, matching categories, and every f_! ⊣ f* Quillen.
Report validate_modcat_functor(const ModCatFunctor& fm);

/// Constant functor at `fiber` with identity adjunctions.
ModCatFunctor constant_modcat(const std::string& name, const ModelPtr& base, const ModelPtr& fiber);

/// F∘u as a pseudo-functor on u's source.
AdjCatFunctor reindex(const AdjCatFunctor& f, const FinFunctor& u, const std::string& name);

struct IntegralFlags {
  bool weq = false;
  bool fib = false;
  bool cof = false;
};

/// Membership of the total morphism m = (f, φ) in the three classes, using
/// the fiber's stored cofibrant replacement and the adjunct φ^ad.
IntegralFlags classify_integral(const ModCatFunctor& fm, const GrothCat& g, MorId m);

/// Every base weak equivalence induces a Quillen equivalence.
Report check_relative(const ModCatFunctor& fm);

struct ProperReport {
  Report left;   // f_! preserves W over trivial cofibrations f
  Report right;  // f* preserves W over trivial fibrations f
  bool ok() const { return left.ok() && right.ok(); }
};
ProperReport check_proper(const ModCatFunctor& fm);

enum class BuildMode { Require, Force };

struct IntegralStructure {
  GrothCat total;
  PreModel classes;
  FunctorialFactorization fact1;  // (Cof, Fib∩W)
  FunctorialFactorization fact2;  // (Cof∩W, Fib)
  AxiomReport axioms;
  ModelPtr model;  // null when the axioms fail

  const FinCat& cat() const { return *total.total; }
};

/// Require: proper and relative are checked first and failing axioms throw.
/// Force: the axioms are checked and reported, never assumed.
IntegralStructure build_integral(const ModCatFunctor& fm, BuildMode mode = BuildMode::Require);

/// Trivial (co)fibrations of the total against componentwise ones.
Report verify_trivial_characterization(const ModCatFunctor& fm, const IntegralStructure& is);
/// W of the total against the fibrant-replacement description.
Report verify_weq_symmetry(const ModCatFunctor& fm, const IntegralStructure& is);

/// Pseudo-natural family of adjunctions H ⇒ K over a common base.
/// naturality[f] runs from σ_B∘f_! ⊣ f*∘τ_B to f_!∘σ_A ⊣ τ_A∘f*.
struct AdjFamily {
  std::vector<Adjunction> component;
  std::vector<AdjPseudoTrans> naturality;
};

/// Naturality cells chosen as canonical isomorphisms. Throws Error when a
/// component has none.
AdjFamily family_with_canonical_cells(const AdjCatFunctor& h, const AdjCatFunctor& k,
                                      std::vector<Adjunction> component);
Report validate_family(const AdjCatFunctor& h, const AdjCatFunctor& k, const AdjFamily& fam);

struct TotalAdjunction {
  std::optional<Adjunction> adjunction;
  QuillenCert cert;
  Report report;  // component, coherence or construction failures
  bool ok() const { return adjunction && report.ok() && cert.left_quillen; }
};

/// σ_*(A,X) = (A, σ_A X) ⊣ τ_*(B,Y) = (B, τ_B Y) between the integral
/// totals, certified against both integral structures.
TotalAdjunction integrate_quillen_transformation(const ModCatFunctor& fm, const IntegralStructure& fi,
                                                 const ModCatFunctor& gm, const IntegralStructure& gi,
                                                 const AdjFamily& fam, QuillenMode mode = QuillenMode::Adjunction);

enum class MorphismKind { Left, Right };

struct BaseChangeCert {
  TotalAdjunction total;
  QuillenCert base;            // bc on the bases, equivalence mode
  bool family_quillen = false;
  bool family_equivalence = false;  // on cofibrant (left) or fibrant (right) indices
  Report family_report;
  bool hypotheses() const { return base.equivalence && family_quillen && family_equivalence; }
};

/// Left kind: family over M for F ⇒ G∘L; Φ^L(A,X) = (LA, Σ_A X) and
/// Φ^R(B,Y) = (RB, Σ^R_{RB}(ε_B^* Y)). Right kind: family over N for
/// F∘R ⇒ G; Ψ^R(B,Y) = (RB, Θ^R_B Y) and Ψ^L(A,X) = (LA, Θ^L_{LA}((η_A)_! X)).
/// The totals' Quillen (equivalence) property is checked directly.
BaseChangeCert base_change(const ModCatFunctor& fm, const IntegralStructure& fi, const ModCatFunctor& gm,
                           const IntegralStructure& gi, const Adjunction& bc, MorphismKind kind,
                           const AdjFamily& fam);

struct FubiniReport {
  IntegralStructure whole;         // over M×N
  ModCatFunctor outer_m, outer_n;  // A ↦ ∫_N F^A and B ↦ ∫_M F_B
  std::vector<IntegralStructure> inner_m, inner_n;
  IntegralStructure iterated_m, iterated_n;
  Report iso_m, iso_n;
  bool ok() const { return iso_m.ok() && iso_n.ok(); }
};

/// `fm` lives over product_model(m, n, p). Throws Error when a restriction
/// F^A or F_B is not proper and relative.
FubiniReport fubini(const ModCatFunctor& fm, const ModelPtr& m, const ModelPtr& n, const ProductCat& p);

}  // namespace fcat
