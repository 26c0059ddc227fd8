#pragma once

// Grothendieck construction of AdjCat-valued pseudo-functors, (co)Cartesian
// morphisms, straightening of biCartesian fibrations and relative
// (co)limits.

#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "fcat/adjunction.hpp"

namespace fcat {

/// Pseudo-functor base -> AdjCat. on_arrow[f] is f_! ⊣ f*.
struct AdjCatFunctor {
  std::string name;
  CatPtr base;
  std::vector<CatPtr> fiber;
  std::vector<Adjunction> on_arrow;
  std::map<std::pair<MorId, MorId>, NatTrans> comp_iso;  // (g, f): (g∘f)_! ⇒ g_! f_!
  std::vector<NatTrans> id_iso;                          // id ⇒ (id_A)_!

  const FinFunctor& push(MorId f) const { return on_arrow[f].left; }
  const FinFunctor& pull(MorId f) const { return on_arrow[f].right; }
};

/// Adjunction typing, invertibility of the coherence cells, the cocycle
/// condition on composable triples and both unit laws.
Report validate_adjcat_functor(const AdjCatFunctor& f);

/// Sets every coherence cell to the identity where the functors agree on
/// the nose and to the first isomorphism in canonical order otherwise.
/// Throws Error if some component has no isomorphism.
void fill_coherence(AdjCatFunctor& f);

/// Constant pseudo-functor at `fiber` with identity adjunctions.
AdjCatFunctor constant_adjcat(const std::string& name, const CatPtr& base, const CatPtr& fiber);

struct GrothCat {
  std::shared_ptr<const AdjCatFunctor> functor;
  CatPtr total;
  FinFunctor projection;
  std::vector<std::pair<ObjId, ObjId>> obj_pair;  // total object -> (A, X)
  std::vector<std::pair<MorId, MorId>> mor_pair;  // total morphism -> (f, φ)
  std::vector<std::vector<ObjId>> obj_index;      // [A][X] -> total object

  ObjId object(ObjId a, ObjId x) const { return obj_index[a][x]; }
  /// The total morphism (f, φ) out of total object `src`, or kNone.
  MorId morphism(ObjId src, MorId f, MorId phi) const;

 private:
  friend GrothCat integrate_cat(const AdjCatFunctor& f);
  std::map<std::tuple<ObjId, MorId, MorId>, MorId> mor_index_;
};

/// Validates the pseudo-functor, builds ∫F and its projection. Throws
/// ValidationError on coherence failure.
GrothCat integrate_cat(const AdjCatFunctor& f);

struct CartesianFlags {
  bool cocartesian = false;
  bool cartesian = false;
};
CartesianFlags classify_cartesian(const FinFunctor& p, MorId phi);
bool is_cocartesian(const FinFunctor& p, MorId phi);
bool is_cartesian(const FinFunctor& p, MorId phi);

/// Canonical coCartesian lift of f starting at x: the identity when f is an
/// identity, else the first coCartesian lift in canonical order.
std::optional<MorId> cocartesian_lift(const FinFunctor& p, ObjId x, MorId f);
/// Canonical Cartesian lift of f ending at y.
std::optional<MorId> cartesian_lift(const FinFunctor& p, ObjId y, MorId f);

/// Unique γ: tgt φ -> tgt ψ with γ∘φ = ψ and p(γ) = g, for coCartesian φ.
MorId factor_cocartesian(const FinFunctor& p, MorId phi, MorId psi, MorId g);
/// Unique γ: src ψ -> src φ with φ∘γ = ψ and p(γ) = g, for Cartesian φ.
MorId factor_cartesian(const FinFunctor& p, MorId phi, MorId psi, MorId g);

Report check_bicartesian(const FinFunctor& p);

/// Subcategory of objects over A and morphisms over id_A.
struct Fiber {
  CatPtr cat;
  std::vector<ObjId> objects;    // local -> total
  std::vector<MorId> morphisms;  // local -> total
  std::vector<int> local_obj;    // total -> local or -1
  std::vector<int> local_mor;    // total -> local or -1
};
Fiber fiber_of(const FinFunctor& p, ObjId a);

struct Straightening {
  AdjCatFunctor functor;
  std::vector<Fiber> fibers;
};
/// Throws ValidationError if p is not biCartesian.
Straightening straighten_cat(const FinFunctor& p, const std::string& name = "straightened");

/// Checks that X ↦ (A, X) identifies each F(A) with the fiber of ∫F over A
/// and that the straightened adjunctions and coherence cells agree with F's
/// through these identifications (on-the-nose equality).
Report compare_straightening(const AdjCatFunctor& f, const GrothCat& g, const Straightening& s);

/// Checks that integrating a straightening recovers p: the canonical map
/// ∫S -> total(p) is an isomorphism of categories over the base.
Report compare_integration(const FinFunctor& p, const Straightening& s, const GrothCat& g);

/// A lift of a cone-extended diagram: apex over ε(*) with legs over ε(θ_i).
struct ConeLift {
  ObjId apex = kNone;
  std::vector<MorId> legs;
  friend bool operator==(const ConeLift&, const ConeLift&) = default;
};

/// Every lift in canonical order. `eps` is defined on shape.extended.
std::vector<ConeLift> enumerate_lifts(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                      const FinFunctor& eps);
/// Initial (colimit) or terminal (limit) among all enumerated lifts.
bool is_relative_colimit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape, const FinFunctor& eps,
                         const ConeLift& lift);
bool is_relative_limit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape, const FinFunctor& eps,
                       const ConeLift& lift);

/// Relative colimit: when p is biCartesian, push δ forward along coCartesian
/// lifts of ε(θ_i) and take the colimit in the fiber over ε(*); otherwise
/// search. Either way the result is certified initial by enumeration.
/// `shape` is cocone_shape(I).
std::optional<ConeLift> relative_colimit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                         const FinFunctor& eps);
/// Dual; `shape` is cone_shape(I).
std::optional<ConeLift> relative_limit(const FinFunctor& p, const FinFunctor& delta, const ConeShape& shape,
                                       const FinFunctor& eps);

}  // namespace fcat
