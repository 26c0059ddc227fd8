#pragma once

// Pre-model structures, lifting problems, the MC1-MC5 axiom checker,
// functorial factorizations and Quillen adjunction checks.

#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "fcat/adjunction.hpp"

namespace fcat {

/// Membership set over the morphisms of one category.
class MorSet {
 public:
  MorSet() = default;
  explicit MorSet(int universe, bool full = false) : bits_(universe, full ? 1 : 0) {}
  static MorSet identities(const FinCat& c);
  static MorSet all(const FinCat& c) { return MorSet(c.num_morphisms(), true); }
  static MorSet of(const FinCat& c, const std::vector<MorId>& members);

  bool contains(MorId f) const { return bits_[f] != 0; }
  void insert(MorId f) { bits_[f] = 1; }
  void erase(MorId f) { bits_[f] = 0; }
  int universe() const { return static_cast<int>(bits_.size()); }
  int count() const;
  std::vector<MorId> members() const;

  friend MorSet operator&(const MorSet& a, const MorSet& b);
  friend MorSet operator|(const MorSet& a, const MorSet& b);
  friend bool operator==(const MorSet&, const MorSet&) = default;

 private:
  std::vector<char> bits_;
};

/// Smallest subcategory containing `s`.
MorSet closure(const FinCat& c, const MorSet& s);
/// Contains all identities and is closed under composition.
bool is_subcategory(const FinCat& c, const MorSet& s);

struct PreModel {
  std::string name;
  CatPtr cat;
  MorSet weq, cof, fib;

  MorSet trivcof() const { return cof & weq; }
  MorSet trivfib() const { return fib & weq; }
};

/// Each class is a subcategory.
Report validate_premodel(const PreModel& pm);

/// Key of a square f ⇒ g in the arrow category.
struct SquareKey {
  MorId from = kNone, to = kNone;
  ArrowMap square;
  friend auto operator<=>(const SquareKey&, const SquareKey&) = default;
};

struct FunctorialFactorization {
  std::vector<ObjId> middle;
  std::vector<MorId> first;   // src f -> middle f
  std::vector<MorId> second;  // middle f -> tgt f
  std::map<SquareKey, MorId> middle_map;
};

/// Composite law, membership of the legs in (left, right), naturality of
/// middle_map and its functoriality on squares.
Report validate_factorization(const FinCat& c, const FunctorialFactorization& fact, const MorSet& left,
                              const MorSet& right);

/// Fills middle_map for fixed middles and legs; thin categories have at
/// most one candidate per square. False when some square has no mediator
/// or no functorial choice exists.
bool complete_middle_map(const FinCat& c, FunctorialFactorization& fact);

/// Exhaustive backtracking over middle assignments in canonical order
/// (smallest middle object first), with arc-consistency pruning on squares
/// and a completion search for middle_map in non-thin categories.
std::optional<FunctorialFactorization> search_functorial_factorization(const FinCat& c, const MorSet& left,
                                                                      const MorSet& right);

/// Diagonal h: tgt i -> src p with h∘i = top and p∘h = bottom. Throws Error
/// if the square does not commute.
std::optional<MorId> lifting_exists(const FinCat& c, MorId i, MorId p, MorId top, MorId bottom);

struct AxiomReport {
  Report mc1, mc2, mc3, mc4, mc5;
  Report structure;  // subcategory conditions
  std::optional<FunctorialFactorization> fact1, fact2;

  bool ok() const { return structure.ok() && mc1.ok() && mc2.ok() && mc3.ok() && mc4.ok() && mc5.ok(); }
  Report merged() const;
};

struct AxiomOptions {
  bool check_mc1 = true;
  bool stop_at_first = true;  // one witness per axiom
};

/// Runs MC1-MC5. Missing factorizations are searched; found ones are
/// returned in the report.
AxiomReport check_model_axioms(const PreModel& pm, const FunctorialFactorization* f1 = nullptr,
                               const FunctorialFactorization* f2 = nullptr, const AxiomOptions& opt = {});

struct ModelCat {
  PreModel pm;
  FunctorialFactorization fact1;  // (Cof, Fib∩W)
  FunctorialFactorization fact2;  // (Cof∩W, Fib)
  ObjId initial = kNone;
  ObjId terminal = kNone;

  const CatPtr& cat() const { return pm.cat; }
  const std::string& name() const { return pm.name; }
  bool weq(MorId f) const { return pm.weq.contains(f); }
  bool cof(MorId f) const { return pm.cof.contains(f); }
  bool fib(MorId f) const { return pm.fib.contains(f); }
  bool cofibrant(ObjId x) const;
  bool fibrant(ObjId x) const;
};
using ModelPtr = std::shared_ptr<const ModelCat>;

/// Validates all axioms and throws ValidationError on failure.
ModelPtr make_model(const PreModel& pm, const FunctorialFactorization* f1 = nullptr,
                    const FunctorialFactorization* f2 = nullptr, const AxiomOptions& opt = {});
/// Wraps already-verified data without rechecking the axioms.
ModelPtr assume_model(const PreModel& pm, FunctorialFactorization f1, FunctorialFactorization f2);

enum class Replacement { Cofibrant, Fibrant };
/// (X^cof, X^cof -> X) from factoring ∅ -> X, or (X^fib, X -> X^fib) from
/// factoring X -> *.
std::pair<ObjId, MorId> replacement(const ModelCat& mc, ObjId x, Replacement kind);

struct QuillenCert {
  bool left_quillen = false;   // L preserves Cof and Cof∩W
  bool right_quillen = false;  // R preserves Fib and Fib∩W
  bool equivalence_checked = false;
  bool equivalence = false;
  Report report;
};

enum class QuillenMode { Adjunction, Equivalence };
QuillenCert check_quillen(const Adjunction& adj, const ModelCat& src, const ModelCat& tgt, QuillenMode mode);

/// Every model structure on a skeletal category, ordered by (W, Cof, Fib)
/// membership masks over the non-identity morphisms. Throws Error when the
/// category has more than `max_arrows` non-identity morphisms.
std::vector<ModelPtr> enumerate_model_structures(const CatPtr& c, int max_arrows = 12);

/// Pushouts of weak equivalences along cofibrations are weak equivalences.
Report left_proper(const ModelCat& mc);
/// Pullbacks of weak equivalences along fibrations are weak equivalences.
Report right_proper(const ModelCat& mc);

/// Componentwise classes and factorizations on the product category.
ModelPtr product_model(const ModelCat& a, const ModelCat& b, const ProductCat& p);

/// Structural equality of categories and the three classes.
bool same_classes(const PreModel& a, const PreModel& b);

}  // namespace fcat
