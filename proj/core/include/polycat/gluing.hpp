#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "polycat/chu.hpp"
#include "polycat/module.hpp"
#include "polycat/quantale.hpp"

namespace polycat {

/// A candidate square: horizontal poly-arrows `top` and `bottom` with
/// vertical legs left[i] : top.source[i] -> bottom.source[i] and
/// right[j] : top.target[j] -> bottom.target[j].
struct TwoCell {
    PolyMorphism top;
    PolyMorphism bottom;
    std::vector<PolyMorphism> left;
    std::vector<PolyMorphism> right;
};

/// A category internal to the world of polycategories: horizontal
/// poly-arrows, an ordinary vertical category on the same objects, and a
/// 2-cell predicate over squares.
struct PolyDoubleCategory {
    std::shared_ptr<const Polycategory> horizontal;
    std::function<bool(const PolyMorphism&)> is_vertical;
    std::function<bool(const TwoCell&)> is_two_cell;
};

/// The poly double category of P: verticals are the morphisms with one
/// source and one target; a square commutes iff bottom o (left legs)
/// equals (right legs) o top.
PolyDoubleCategory q_double(std::shared_ptr<const Polycategory> p);

/// outer o (legs): precomposes every source slot of `outer` with the
/// matching unary leg (legs[t] must target outer.source[t]) and restores
/// the source order X_0..X_{r-1}.
PolyMorphism precompose_all(const Polycategory& e, const PolyMorphism& outer,
                            const std::vector<PolyMorphism>& legs);

/// (legs) o inner: postcomposes every target slot with the matching
/// unary leg and restores the target order.
PolyMorphism postcompose_all(const Polycategory& e, const PolyMorphism& inner,
                             const std::vector<PolyMorphism>& legs);

/// The same source reindexing on a module element with no target
/// coordinates: x . (legs), slots kept in order.
PolyMorphism act_all(const Module& bot, const PolyMorphism& x,
                     const std::vector<PolyMorphism>& legs);

// --- the double Chu construction ---

/// A vertical arrow of the double Chu construction: both components go
/// forward, A+ -> B+ and A- -> B-.
struct ChuVertical {
    PolyMorphism plus;
    PolyMorphism minus;
};

/// True iff u is a vertical arrow a -> b: components have the right
/// boundaries and pairing-of-b composed with (u+, u-) equals pairing-of-a.
bool chu_vertical_valid(const ChuPolycategory& chu, const ObjectId& a, const ObjectId& b,
                        const ChuVertical& u, std::string* why = nullptr);

/// A candidate 2-cell between horizontal Chu morphisms, with vertical
/// legs down every source and target.
struct ChuTwoCell {
    PolyMorphism top;
    PolyMorphism bottom;
    std::vector<ChuVertical> left;
    std::vector<ChuVertical> right;
};

/// The square families of a double-Chu 2-cell: one square per component
/// of the horizontal morphisms plus the pairing square. When both
/// boundaries are empty the pairing square is the only condition.
bool chu_two_cell_valid(const ChuPolycategory& chu, const ChuTwoCell& cell,
                        std::string* why = nullptr);

/// The double Chu construction packaged over its horizontal part.
struct ChuDoubleCategory {
    std::shared_ptr<const ChuPolycategory> horizontal;
    std::function<bool(const ObjectId&, const ObjectId&, const ChuVertical&)> is_vertical;
    std::function<bool(const ChuTwoCell&)> is_two_cell;
};

ChuDoubleCategory double_chu(std::shared_ptr<const ChuPolycategory> chu);

// --- gl(Lambda, psi) ---

/// A functor Lambda : D -> chu(E, bot2), given by its object and
/// morphism assignments into a concrete Chu polycategory.
struct ChuFunctor {
    std::shared_ptr<const Polycategory> d;
    std::shared_ptr<const ChuPolycategory> chu2;
    std::function<ObjectId(const ObjectId&)> on_object;
    std::function<PolyMorphism(const PolyMorphism&)> on_morphism;
};

/// A map of presheaves psi : bot1 -> bot2, componentwise on elements.
struct PresheafMap {
    ModulePtr source;
    ModulePtr target;
    std::function<PolyMorphism(const PolyMorphism&)> apply;
};

inline PresheafMap identity_psi(ModulePtr bot) {
    return {bot, bot, [](const PolyMorphism& x) { return x; }};
}

/// The unique map into the terminal presheaf.
PresheafMap terminal_psi(ModulePtr bot1, std::shared_ptr<const Polycategory> e);

/// Spot-checks naturality of psi against unary source actions on bounded
/// coordinates.
bool check_presheaf_map(const PresheafMap& psi, const Polycategory& e, std::size_t bound,
                        std::string* why = nullptr);

/// An object of gl(Lambda, psi): a base object of D, a Chu object over
/// bot1, and the two legs of the comparison vertical. Validity demands
/// that pushing the bot1 pairing through psi agrees with pulling the
/// pairing of Lambda(base) back along the legs.
struct GluingObject {
    std::string name;
    ObjectId base;           // object of D
    ObjectId chu_object;     // object of chu(E, bot1)
    PolyMorphism leg_plus;   // E(A+ ; L(base))
    PolyMorphism leg_minus;  // E(A- ; K(base))
};

/// The two components of a gluing morphism.
struct GluingParts {
    PolyMorphism d_part;
    PolyMorphism chu_part;
};

/// The comma polycategory gl(Lambda, psi): morphisms are pairs of a
/// D-morphism on the bases and a chu(E,bot1)-morphism on the Chu parts
/// whose components commute with the legs (one square per component and
/// one for the pairings; with empty boundaries the pairing square is the
/// only condition). Every constructed morphism re-validates the squares.
class GluedPolycategory final : public Polycategory {
public:
    GluedPolycategory(ChuFunctor lambda, std::shared_ptr<const ChuPolycategory> chu1,
                      PresheafMap psi, std::vector<GluingObject> objs, std::size_t arity_bound);

    /// Resolves a registry name; a barred name yields the dual object
    /// (dual base, swapped Chu components, swapped legs).
    GluingObject resolve(const ObjectId& name) const;

    PolyMorphism make_morphism(const Context& source, const Context& target,
                               GluingParts parts) const;
    static const GluingParts& parts(const PolyMorphism& f);

    const Polycategory& base_category() const { return *lambda_.d; }
    const ChuPolycategory& chu_part() const { return *chu1_; }

    std::vector<ObjectId> objects() const override;
    std::size_t arity_bound() const override { return arity_bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;
    std::optional<ObjectId> dual(const ObjectId& a) const override;

    Context base_context(const Context& c) const;
    Context chu_context(const Context& c) const;

private:
    void validate_object(const GluingObject& o) const;
    /// Empty when the squares commute, else a description of the failure.
    std::string squares(const Context& source, const Context& target, const PolyMorphism& d_part,
                        const PolyMorphism& chu_part) const;

    ChuFunctor lambda_;
    std::shared_ptr<const ChuPolycategory> chu1_;
    PresheafMap psi_;
    std::vector<GluingObject> objs_;
    std::size_t arity_bound_;
    bool has_duals_ = false;
};

/// Searches for a snake pair (eps, eta) on `a` and checks that the
/// induced transposition hom(Gamma,a;Delta) = hom(Gamma;Delta,~a) is a
/// bijection on all bounded hom-sets.
bool check_duality(const Polycategory& p, const ObjectId& a, std::size_t bound,
                   std::string* why = nullptr);

// --- posetal instances ---

/// Builds double-gluing instances over a quantale: D is the posetal
/// *-autonomous polycategory at `dualizer`, E its co-unary multicategory,
/// Lambda the canonical embedding a |-> (a, ~a), and the presheaves are
/// either both representable at the dualizer (psi = identity), both
/// terminal, or representable-into-terminal (psi the terminal map; no
/// structure formulas in that mode).
class PosetalGlueBuilder {
public:
    enum class BotMode { Representable, Terminal, Mixed };

    struct Triple {
        std::string base, plus, minus;
        friend bool operator==(const Triple&, const Triple&) = default;
    };

    PosetalGlueBuilder(Quantale q, std::string dualizer, BotMode mode, std::size_t arity_bound);

    /// Registers a validated triple (plus <= base, minus <= ~base) and
    /// returns its id.
    ObjectId add(const std::string& base, const std::string& plus, const std::string& minus);
    /// Registers every valid triple.
    void add_all();

    /// Structure formulas; each registers its carrier and returns its id.
    /// The general path takes the meet over the full displayed diagram
    /// (including the bot1 corner in representable mode); cotensors and
    /// the counit are duals of tensors of duals.
    ObjectId tensor(const ObjectId& a, const ObjectId& b);
    ObjectId unit();
    ObjectId cotensor(const ObjectId& a, const ObjectId& b);
    ObjectId counit();
    ObjectId hom_object(const ObjectId& a, const ObjectId& b);
    static ObjectId dual(const ObjectId& a) { return a.dualized(); }

    /// The component triple of a registered id (bar resolved by swapping).
    Triple triple_of(const ObjectId& a) const;

    std::shared_ptr<GluedPolycategory> build() const;

    /// A structural witness read off from the built polycategory.
    ProductWitness witness(const GluedPolycategory& gl, ProductWitness::Kind kind,
                           std::vector<ObjectId> operands, const ObjectId& carrier) const;

    const Quantale& quantale() const { return q_; }

private:
    ObjectId reg(Triple t);
    Triple tensor_triple(const Triple& a, const Triple& b) const;
    Triple hom_triple(const Triple& a, const Triple& b) const;
    Triple unit_triple() const;
    static Triple dual_triple(const Quantale& q, const std::string& d0, const Triple& t);
    std::string negate(const std::string& x) const;
    std::string meet_all(const std::vector<std::string>& xs) const;

    Quantale q_;
    std::string d0_;
    BotMode mode_;
    std::size_t arity_bound_;
    std::vector<std::pair<std::string, Triple>> reg_;
};

/// The classic formulas for the terminal-presheaf case, coded directly
/// (three-term meets and the plain dual/unit shapes) as an independent
/// reference for the limit-diagram path.
namespace terminal_formulas {

PosetalGlueBuilder::Triple tensor(const Quantale& q, const std::string& d0,
                                  const PosetalGlueBuilder::Triple& a,
                                  const PosetalGlueBuilder::Triple& b);
PosetalGlueBuilder::Triple cotensor(const Quantale& q, const std::string& d0,
                                    const PosetalGlueBuilder::Triple& a,
                                    const PosetalGlueBuilder::Triple& b);
PosetalGlueBuilder::Triple hom(const Quantale& q, const std::string& d0,
                               const PosetalGlueBuilder::Triple& a,
                               const PosetalGlueBuilder::Triple& b);
PosetalGlueBuilder::Triple unit(const Quantale& q, const std::string& d0);
PosetalGlueBuilder::Triple dual(const Quantale& q, const std::string& d0,
                                const PosetalGlueBuilder::Triple& a);

}  // namespace terminal_formulas

// --- the restricted Yoneda data of a functor ---

/// A polycategory functor Phi : P -> D by its assignments.
struct PolyFunctor {
    std::shared_ptr<const Polycategory> source;
    std::shared_ptr<const Polycategory> target;
    std::function<ObjectId(const ObjectId&)> on_object;
    std::function<PolyMorphism(const PolyMorphism&)> on_morphism;
};

/// U[Phi]: the P-module with values U(Phi Gamma; Phi Delta) and actions
/// through Phi.
ModulePtr restrict_module(ModulePtr u, PolyFunctor phi);

/// The data of the restricted-Yoneda functor Lambda along Phi: the module
/// D[Phi], the per-object components L(R) = D[;R][Phi] and
/// K(R) = D[R;][Phi], their composition pairing, and the induced map
/// phi : P -> D[Phi] on elements.
struct LambdaData {
    PolyFunctor phi;
    ModulePtr d_phi;
    std::function<ModulePtr(const ObjectId&)> l;
    std::function<ModulePtr(const ObjectId&)> k;
    /// gamma_R(x, y) for x in L(R)(Gamma;Delta), y in K(R)(Gamma';Delta'):
    /// the composite in D at R, at coordinates (Gamma,Gamma'; Delta,Delta').
    std::function<PolyMorphism(const ObjectId& r, const PolyMorphism& x, const PolyMorphism& y)>
        pair;
    std::function<PolyMorphism(const PolyMorphism&)> phi_map;
};

/// Checks that Phi preserves each declared witness (throwing JNotPreserved
/// otherwise) and assembles the restricted Yoneda data.
LambdaData build_lambda(PolyFunctor phi, const std::vector<ProductWitness>& j, std::size_t bound);

struct JNotPreserved : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a structure formula needs a meet/pullback the instance
/// does not have.
struct LimitUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polycat
