#pragma once

#include <memory>
#include <string>

#include "polycat/laws.hpp"
#include "polycat/polycategory.hpp"

namespace polycat {

/// A P-module: a family of finite sets indexed by context pairs, with
/// actions of P on both sides and symmetric actions.
///
/// Elements are PolyMorphism tokens whose `source`/`target` are the
/// module coordinates (Gamma;Delta); the payload carries whatever
/// witness backs the element.
///
/// Action layout conventions (mirroring compose_at):
///   act_src(x @ (Gamma;Delta) with Gamma[i]=A, f in P(Gamma';Delta',A) at
///     target slot j) -> element at (Gamma\i ++ Gamma' ; Delta ++ Delta')
///   act_tgt(x @ (Gamma;Delta) with Delta[k]=A, g in P(...,A,...;Delta')
///     at source slot i) -> element at (Gamma ++ (g.source\i) ; Delta\k ++ Delta')
class Module {
public:
    virtual ~Module() = default;

    virtual const Polycategory& base() const = 0;
    virtual std::string name() const = 0;

    /// The finite set U(gamma;delta), key-sorted.
    virtual std::vector<PolyMorphism> value_at(const Context& gamma, const Context& delta) const = 0;

    virtual PolyMorphism act_src(const PolyMorphism& x, std::size_t x_src_pos,
                                 const PolyMorphism& f, std::size_t f_tgt_pos) const = 0;
    virtual PolyMorphism act_tgt(const PolyMorphism& x, std::size_t x_tgt_pos,
                                 const PolyMorphism& g, std::size_t g_src_pos) const = 0;
    virtual PolyMorphism permute(const PolyMorphism& x, const Permutation& src_perm,
                                 const Permutation& tgt_perm) const = 0;
};

using ModulePtr = std::shared_ptr<const Module>;

/// P itself as a P-module: values are the hom-sets, actions are
/// composition.
ModulePtr module_of(std::shared_ptr<const Polycategory> p);

/// The shifted module U[pi;sigma]: valueAt(Gamma;Delta) =
/// U(Gamma,pi ; Delta,sigma). Shifting twice concatenates the shifts.
ModulePtr shift(ModulePtr inner, Context pi, Context sigma);

/// Representables: y_A = P[;A] and y^_A = P[A;].
ModulePtr covariant_rep(std::shared_ptr<const Polycategory> p, const ObjectId& a);
ModulePtr contravariant_rep(std::shared_ptr<const Polycategory> p, const ObjectId& a);

/// The terminal module: a singleton at every context pair.
ModulePtr terminal_module(std::shared_ptr<const Polycategory> p);

/// One source slot of a module multi-morphism out of representables:
/// y_A (covariant) or y^_A (contravariant).
struct RepSource {
    ObjectId object;
    bool covariant = true;
};

/// The representable module of a RepSource.
ModulePtr rep_module(std::shared_ptr<const Polycategory> p, const RepSource& s);

/// A module multi-morphism (U_1,...,U_n) -> V with all U_i representable,
/// stored intensionally by its value on the tuple of identities. By the
/// Yoneda argument this determines the whole family: components are
/// computed by acting with the arguments.
class ModuleMorphism {
public:
    ModuleMorphism(std::vector<RepSource> sources, ModulePtr target, PolyMorphism seed);

    const std::vector<RepSource>& sources() const { return sources_; }
    const ModulePtr& target() const { return target_; }
    /// The value on the identity tuple, at (A's of covariant sources ;
    /// A's of contravariant sources) in source order.
    const PolyMorphism& seed() const { return seed_; }

    /// Component at a tuple of representable elements; args[i] must be an
    /// element of the i-th source module.
    PolyMorphism apply(const std::vector<PolyMorphism>& args) const;
    /// Same, acting in the given slot order; all orders agree for a
    /// natural family (used as an independent cross-check).
    PolyMorphism apply(const std::vector<PolyMorphism>& args,
                       const std::vector<std::size_t>& order) const;

    friend bool operator==(const ModuleMorphism& a, const ModuleMorphism& b) {
        return a.seed_ == b.seed_;
    }

private:
    std::vector<RepSource> sources_;
    ModulePtr target_;
    PolyMorphism seed_;
};

/// A value set that may have been cut off by an arity bound.
struct ValueSet {
    std::vector<PolyMorphism> elements;
    bool truncated = false;
};

/// phi(1_A) for a unary phi out of a representable.
PolyMorphism yoneda_forward(const ModuleMorphism& phi);

/// psi_x: y_A -> V (or y^_A -> V) determined by x; inverse to
/// yoneda_forward.
ModuleMorphism yoneda_backward(const RepSource& source, ModulePtr target, PolyMorphism x);

/// (U -o V)(gamma;delta) for a representable U: computed through the
/// Yoneda identification with a shift of V, no enumeration.
ValueSet internal_hom_value(const RepSource& u, ModulePtr v, const Context& gamma,
                            const Context& delta);

/// All module multi-morphisms (sources) -> target restricted to contexts
/// of total length <= bound. Every returned morphism has passed an
/// independent naturality re-check on the bounded tuples; seeds failing
/// it are dropped (and would indicate a bug in the module data).
std::vector<ModuleMorphism> enumerate_module_morphisms(
    const std::vector<RepSource>& sources, ModulePtr target, std::size_t bound,
    std::size_t naturality_samples = 2000);

/// True iff U maps each distinguished (co)tensor/(co)unit of J to a
/// bijection of values at every bounded context pair.
bool check_pj_module(const Module& u, const std::vector<ProductWitness>& j, std::size_t bound,
                     std::string* why = nullptr);

/// A distinguished cone over a discrete diagram: for a limit cone the
/// legs are P(apex;d_i), for a colimit cone P(d_i;apex).
struct Cone {
    bool is_limit = true;
    ObjectId apex;
    std::vector<ObjectId> diagram;
    std::vector<PolyMorphism> legs;
};

/// True iff U maps each cone of K to a limit of sets at every bounded
/// context pair (the empty diagram demands a singleton value). With
/// `counary_support` the check quantifies only over the coordinates a
/// co-unary base can populate: limit cones at Delta = (), colimit cones
/// at |Delta| = 1. Without it, the empty diagram is demanding: it fails
/// on a free *-polycategory at coordinates with extra context, which is
/// exactly how terminality can be lost there.
bool check_pjk_module(const Module& u, const std::vector<Cone>& k, std::size_t bound,
                      std::string* why = nullptr, bool counary_support = false);

}  // namespace polycat
