#pragma once

// Adjunctions between finite categories and pseudo-transformations of
// adjunctions. An adjunction L ⊣ R goes from `lower` (source of L) to
// `upper` (target of L).

#include <optional>

#include "fcat/fincat.hpp"

namespace fcat {

struct Adjunction {
  FinFunctor left;   // L: C -> D
  FinFunctor right;  // R: D -> C
  NatTrans unit;     // id_C => R L
  NatTrans counit;   // L R => id_D

  const CatPtr& lower() const { return left.source; }
  const CatPtr& upper() const { return left.target; }
};

/// Functors, unit/counit naturality, both triangle identities and the hom
/// bijection Hom(La, b) ≅ Hom(a, Rb). Witnesses name the failing objects.
Report check_adjunction(const Adjunction& adj);

Adjunction identity_adjunction(const CatPtr& c);

enum class Side { Left, Right };

/// Searches for the partner of `f` on the given side (Side::Right finds a
/// right adjoint of f). Each value of the partner is the first universal
/// arrow in canonical order, so on skeletal posets the result is unique.
std::optional<Adjunction> find_adjoint(const FinFunctor& f, Side side);

/// Completes L with prescribed R on objects and counit components to an
/// adjunction, or nothing if some counit component is not a universal arrow.
std::optional<Adjunction> adjunction_from_counits(const FinFunctor& left, const std::vector<ObjId>& right_obj,
                                                  const std::vector<MorId>& counit);
/// Dual: completes R with prescribed L on objects and unit components.
std::optional<Adjunction> adjunction_from_units(const FinFunctor& right, const std::vector<ObjId>& left_obj,
                                                const std::vector<MorId>& unit);

/// φ: L a → b  ↦  R(φ)∘η_a : a → R b. Throws Error on a shape mismatch.
MorId transpose(const Adjunction& adj, ObjId a, MorId phi);
/// ψ: a → R b  ↦  ε_b∘L(ψ) : L a → b.
MorId untranspose(const Adjunction& adj, ObjId b, MorId psi);

/// Pseudo-transformation (σ, τ): (L ⊣ R) ⇒ (L' ⊣ R') with σ: L ⇒ L' and
/// τ: R' ⇒ R.
struct AdjPseudoTrans {
  Adjunction from;
  Adjunction to;
  NatTrans sigma;
  NatTrans tau;
};

Report check_adj_pseudo_trans(const AdjPseudoTrans& t);
AdjPseudoTrans identity_pseudo_trans(const Adjunction& adj);

/// a2 ∘ a1: lefts compose, rights compose in reverse, unit and counit pasted.
Adjunction compose_adjunctions(const Adjunction& a1, const Adjunction& a2);

/// Structural equality of all four components.
bool same_adjunction(const Adjunction& a, const Adjunction& b);

}  // namespace fcat
