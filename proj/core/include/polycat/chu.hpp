#pragma once

#include <memory>
#include <vector>

#include "polycat/finset.hpp"
#include "polycat/laws.hpp"
#include "polycat/module.hpp"
#include "polycat/polycategory.hpp"

namespace polycat {

/// An object of the Chu *-polycategory over (E, bot): a pair of E-objects
/// with a pairing element of bot at ((plus, minus); ()).
struct ChuObject {
    std::string name;
    ObjectId plus;
    ObjectId minus;
    PolyMorphism pairing;
};

/// The component family of a Chu morphism (A_1..A_m) -> (B_1..B_n):
/// `plus_parts[j]` is an E-morphism (A_1+..A_m+, B_1-..^j..B_n-) -> B_j+,
/// `minus_parts[i]` an E-morphism (A_1+..^i..A_m+, B_1-..B_n-) -> A_i-,
/// and `core` an element of bot at ((A_1+..A_m+, B_1-..B_n-); ()).
/// Compatibility: pairing each part against its slot's pairing element
/// recovers `core` (after restoring the canonical slot order).
struct ChuParts {
    std::vector<PolyMorphism> plus_parts;
    std::vector<PolyMorphism> minus_parts;
    PolyMorphism core;
};

/// The Chu construction over a multicategory E (hom-sets of co-arity != 1
/// empty) and a presheaf bot on E. Objects are a fixed finite registry of
/// ChuObjects; the formal dual swaps the components, so double dual is
/// the identity on the nose.
class ChuPolycategory final : public Polycategory {
public:
    ChuPolycategory(std::shared_ptr<const Polycategory> e, ModulePtr bot,
                    std::vector<ChuObject> objs, std::size_t arity_bound);

    const Polycategory& env() const { return *e_; }
    const Module& bot() const { return *bot_; }

    /// Resolves a registry name to its components; a barred name yields
    /// the swapped triple.
    ChuObject triple(const ObjectId& name) const;

    /// Assembles a morphism from its component family, checking shapes
    /// and the compatibility equations.
    PolyMorphism make_morphism(const Context& source, const Context& target, ChuParts parts) const;

    static const ChuParts& parts(const PolyMorphism& f);

    std::vector<ObjectId> objects() const override;
    std::size_t arity_bound() const override { return arity_bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;
    std::optional<ObjectId> dual(const ObjectId& a) const override { return a.dualized(); }

    /// The E-context (A_1+..A_m+, B_1-..B_n-) of a boundary.
    Context carrier_context(const Context& source, const Context& target) const;

private:
    /// The core of `parts` recomputed by pairing the given part against
    /// its slot; compares equal to parts.core iff compatible.
    PolyMorphism paired_core(const Context& source, const Context& target, bool plus_side,
                             std::size_t slot, const PolyMorphism& part) const;

    std::shared_ptr<const Polycategory> e_;
    ModulePtr bot_;
    std::vector<ChuObject> objs_;
    std::size_t arity_bound_;
};

/// --- Chu over a *-polycategory P (the right adjoint side) ---

/// The image of a P-object under the comparison: (A, ~A, eps_A) where
/// eps_A is the duality counit in P(A,~A;).
ChuObject chu_embed_object(const Polycategory& p, const ObjectId& a);

/// The first snake pair for `a` in key order: (eps in P(a,~a;), eta in
/// P(;~a,a)) with both snake composites equal to identities. Throws
/// NotStarAutonomous when none exists.
std::pair<PolyMorphism, PolyMorphism> duality_morphisms(const Polycategory& p, const ObjectId& a);

/// A Chu polycategory over P itself (used as its co-subunary part, with
/// bot(Gamma) = P(Gamma;)), whose objects are the embeddings of P's
/// objects.
std::shared_ptr<ChuPolycategory> chu_over(std::shared_ptr<const Polycategory> p,
                                          std::size_t arity_bound);

/// The image of f in P(Gamma;Delta) under the comparison: components are
/// the duality transposes of f.
PolyMorphism chu_embed_morphism(const ChuPolycategory& chu, const PolyMorphism& f);

/// Extraction in the other direction: the co-subunary E-morphism carried
/// by a Chu morphism with |target| <= 1 (its first plus part, or its core
/// as an element at ((Gamma+);()) when the target is empty).
PolyMorphism chu_extract(const ChuPolycategory& chu, const PolyMorphism& f);

/// First triangle identity, elementwise on bounded co-subunary hom-sets
/// of P: extracting the embedded morphism gives it back.
bool check_chu_triangle_extract(const ChuPolycategory& chu, std::size_t bound,
                                std::string* why = nullptr);

/// Second triangle identity, elementwise on bounded hom-sets of chu_over(P):
/// transposing a Chu morphism with the canonical duality counits and
/// extracting components reproduces its own part family.
bool check_chu_triangle_transpose(const ChuPolycategory& chu, std::size_t bound,
                                  std::string* why = nullptr);

/// --- Chu structure over finite sets, bot the sets mapping into k ---

/// The bot element at the given coordinate whose key matches.
PolyMorphism as_bot_element(const Module& bot, const Context& ctx, const std::string& key);

struct ChuWithStructural {
    ChuObject object;
    ChuParts structural;
};

/// Tensor of two Chu objects over finite sets: plus is the product, minus
/// the set of pairing-compatible function pairs, with the structural
/// morphism witnessing representability. Registers the derived sets in e.
ChuWithStructural chu_tensor_finset(FinSetMulticategory& e, ModulePtr bot, const ObjectId& k,
                                    const ChuObject& a, const ChuObject& b);

/// Tensor unit over finite sets: plus a singleton, minus the dualizing
/// carrier itself.
ChuWithStructural chu_unit_finset(FinSetMulticategory& e, ModulePtr bot, const ObjectId& k);

}  // namespace polycat
