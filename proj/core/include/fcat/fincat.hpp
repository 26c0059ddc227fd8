#pragma once

// Finite categories given by explicit composition tables, together with
// functors, natural transformations, the standard derived constructions and
// exhaustive (co)limit / retract search.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fcat/report.hpp"

namespace fcat {

using ObjId = int;
using MorId = int;
inline constexpr int kNone = -1;

struct Morphism {
  std::string name;
  ObjId src = kNone;
  ObjId tgt = kNone;
};

/// Unvalidated presentation of a finite category. `compose` maps (g, f) to
/// g∘f and must contain exactly the composable pairs.
struct CategoryData {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<MorId> identity;
  std::map<std::pair<MorId, MorId>, MorId> compose;
};

/// Checks every category axiom; each violation carries a witness.
Report validate_category(const CategoryData& raw);

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

/// An immutable, validated finite category. Identifiers are dense indices in
/// canonical (declaration) order; every search iterates in this order.
class FinCat {
 public:
  /// Validates `raw` and throws ValidationError on failure.
  static CatPtr make(CategoryData raw);

  const std::string& name() const { return name_; }
  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  const std::string& object_name(ObjId a) const { return objects_[a]; }
  const std::string& morphism_name(MorId f) const { return morphisms_[f].name; }
  ObjId src(MorId f) const { return morphisms_[f].src; }
  ObjId tgt(MorId f) const { return morphisms_[f].tgt; }
  MorId id(ObjId a) const { return identity_[a]; }
  bool is_identity(MorId f) const { return identity_[src(f)] == f; }

  /// g∘f; requires tgt(f) == src(g).
  MorId compose(MorId g, MorId f) const { return table_[static_cast<size_t>(g) * morphisms_.size() + f]; }
  MorId compose(MorId h, MorId g, MorId f) const { return compose(h, compose(g, f)); }

  const std::vector<MorId>& hom(ObjId a, ObjId b) const { return hom_[static_cast<size_t>(a) * objects_.size() + b]; }
  /// The unique morphism a→b, or kNone. Requires |Hom(a,b)| <= 1.
  MorId unique_hom(ObjId a, ObjId b) const {
    const auto& h = hom(a, b);
    return h.empty() ? kNone : h.front();
  }
  bool thin() const { return thin_; }
  /// Thin with no non-identity isomorphisms.
  bool skeletal_poset() const { return skeletal_poset_; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  std::optional<MorId> inverse(MorId f) const;
  bool is_iso(MorId f) const { return inverse(f).has_value(); }

  CategoryData data() const;
  /// Identifier-for-identifier equality of names and tables (category name ignored).
  bool same_structure(const FinCat& other) const;

 private:
  FinCat() = default;

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;
  std::vector<std::vector<MorId>> hom_;
  std::map<std::string, ObjId, std::less<>> object_index_;
  std::map<std::string, MorId, std::less<>> morphism_index_;
  bool thin_ = true;
  bool skeletal_poset_ = true;
};

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct FinFunctor {
  CatPtr source;
  CatPtr target;
  std::vector<ObjId> obj;
  std::vector<MorId> mor;

  ObjId on_obj(ObjId a) const { return obj[a]; }
  MorId on_mor(MorId f) const { return mor[f]; }
};

/// Structural equality: same underlying categories (by structure) and maps.
bool operator==(const FinFunctor& a, const FinFunctor& b);

Report validate_functor(const FinFunctor& f);
FinFunctor identity_functor(const CatPtr& c);
/// g∘f
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
/// Builds the functor with the given object map into a thin target, or
/// nothing if the object map is not monotone.
std::optional<FinFunctor> functor_from_object_map(const CatPtr& source, const CatPtr& target,
                                                  const std::vector<ObjId>& obj);
/// Constant functor at object `x`.
FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, ObjId x);

struct NatTrans {
  FinFunctor from;
  FinFunctor to;
  std::vector<MorId> comp;  // per source object, a morphism from(a) -> to(a)
};

Report validate_nat_trans(const NatTrans& t);
NatTrans identity_nat(const FinFunctor& f);
bool is_nat_iso(const NatTrans& t);
/// Componentwise inverse; requires is_nat_iso(t).
NatTrans inverse_nat(const NatTrans& t);
/// Vertical composite beta·alpha.
NatTrans vcompose(const NatTrans& beta, const NatTrans& alpha);
/// H∘alpha
NatTrans whisker_left(const FinFunctor& h, const NatTrans& alpha);
/// alpha∘K
NatTrans whisker_right(const NatTrans& alpha, const FinFunctor& k);

// ---------------------------------------------------------------------------
// Builders

/// Builds the skeletal poset generated by the covering relations `a < b`.
/// Objects appear in first-mention order, followed by `extra_objects`.
/// Identities are named `id_a`, other morphisms `a<b`. Throws Error naming
/// the cycle if the relation is not antisymmetric.
CatPtr build_poset(const std::string& name, const std::vector<std::pair<std::string, std::string>>& covers,
                   const std::vector<std::string>& extra_objects = {});
/// The chain 0 < 1 < ... < n-1.
CatPtr chain(int n, const std::string& name = {});
/// The boolean lattice on k atoms; objects are bit strings.
CatPtr boolean_lattice(int k, const std::string& name = {});
CatPtr discrete(int n, const std::string& name = {});
CatPtr point_category();

// ---------------------------------------------------------------------------
// Derived constructions

/// Same identifiers, reversed arrows. opposite(opposite(C)) has C's structure.
CatPtr opposite(const CatPtr& c);
/// The opposite functor between opposite categories.
FinFunctor opposite(const FinFunctor& f, const CatPtr& source_op, const CatPtr& target_op);

struct ProductCat {
  CatPtr cat;
  FinFunctor proj1, proj2;
  ObjId obj(ObjId a, ObjId b) const { return a * n2 + b; }
  std::pair<ObjId, ObjId> split_obj(ObjId p) const { return {p / n2, p % n2}; }
  MorId mor(MorId f, MorId g) const { return f * m2 + g; }
  std::pair<MorId, MorId> split_mor(MorId p) const { return {p / m2, p % m2}; }
  int n2 = 0, m2 = 0;
};
ProductCat product(const CatPtr& c, const CatPtr& d);

/// Commutative square f ⇒ g: top: src f → src g, bottom: tgt f → tgt g with
/// g∘top = bottom∘f.
struct ArrowMap {
  MorId top = kNone;
  MorId bottom = kNone;
  friend bool operator==(const ArrowMap&, const ArrowMap&) = default;
  friend auto operator<=>(const ArrowMap&, const ArrowMap&) = default;
};

/// All squares f ⇒ g in canonical order.
std::vector<ArrowMap> squares(const FinCat& c, MorId f, MorId g);

struct ArrowCat {
  CatPtr cat;  // object i is the base morphism i
  FinFunctor dom, cod;
  std::vector<ArrowMap> square;  // per arrow-category morphism
};
ArrowCat arrow_category(const CatPtr& c);

struct SliceCat {
  CatPtr cat;
  FinFunctor forget;
  std::vector<MorId> structure;  // per object: the structure morphism to (or from) X
  ObjId base_object = kNone;
};
SliceCat slice(const CatPtr& c, ObjId x);
SliceCat coslice(const CatPtr& c, ObjId x);

/// Shape I with a freely adjoined terminal (cocone) or initial (cone) apex.
struct ConeShape {
  CatPtr shape;
  CatPtr extended;
  ObjId apex = kNone;
  std::vector<MorId> legs;  // per shape object, the arrow to/from the apex
  FinFunctor inclusion;
};
ConeShape cocone_shape(const CatPtr& shape);
ConeShape cone_shape(const CatPtr& shape);

// Small standard shapes.
CatPtr empty_shape();
CatPtr pair_shape();            // two objects, identities only
CatPtr parallel_pair_shape();   // a ⇉ b
CatPtr arrow_shape();           // 0 → 1

// ---------------------------------------------------------------------------
// Limits, colimits, retracts

struct Cone {
  ObjId apex = kNone;
  std::vector<MorId> legs;
  friend bool operator==(const Cone&, const Cone&) = default;
};

/// All cocones on `diagram` with the given apex, canonical order.
std::vector<Cone> cocones(const FinFunctor& diagram, ObjId apex);
std::vector<Cone> cones(const FinFunctor& diagram, ObjId apex);
/// First colimiting cocone in canonical order; universality is verified
/// against every enumerated cocone.
std::optional<Cone> find_colimit(const FinFunctor& diagram);
std::optional<Cone> find_limit(const FinFunctor& diagram);
bool is_colimit(const FinFunctor& diagram, const Cone& c);
bool is_limit(const FinFunctor& diagram, const Cone& c);
std::optional<ObjId> initial_object(const FinCat& c);
std::optional<ObjId> terminal_object(const FinCat& c);

/// Finite (co)completeness: terminal/initial objects, binary (co)products
/// of all pairs and (co)equalizers of all parallel pairs. Together these
/// generate every finite (co)limit.
Report bicompleteness_report(const CatPtr& c);

/// f presented as a retract of g: inclusion f ⇒ g, retraction g ⇒ f,
/// composing to the identity square on f.
struct RetractPresentation {
  MorId of = kNone;
  ArrowMap inclusion;
  ArrowMap retraction;
};
std::vector<RetractPresentation> enumerate_retracts(const FinCat& c, MorId f);
/// Morphisms g of which f is a retract (deduplicated, canonical order).
std::vector<MorId> retract_sources(const FinCat& c, MorId f);

}  // namespace fcat
