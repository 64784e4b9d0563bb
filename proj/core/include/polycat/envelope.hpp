#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polycat/module.hpp"
#include "polycat/quantale.hpp"

namespace polycat {

/// An object of the envelope of P: a Chu-style triple over the module
/// world. Only representable-backed objects are materialized; `object`
/// names the backing P-object and `dualized` whether the components are
/// swapped.
struct EnvelopeObject {
    ObjectId object;
    bool dualized = false;
    ModulePtr plus;          // y_object (or its swap)
    ModulePtr minus;         // y^_object (or its swap)
    ModuleMorphism pairing;  // composition in P at the shared object

    friend bool operator==(const EnvelopeObject& a, const EnvelopeObject& b) {
        return a.object == b.object && a.dualized == b.dualized;
    }
};

/// A ↦ (y_A, y^_A, gamma_A) with gamma_A the composition pairing.
EnvelopeObject env_embed(std::shared_ptr<const Polycategory> p, const ObjectId& a);

/// The Chu dual: swap the components and transpose the pairing.
EnvelopeObject env_dual(const EnvelopeObject& o);

struct EnvHomReport {
    bool ok = false;
    std::size_t env_count = 0;
    std::size_t p_count = 0;
    std::string why;
};

/// Enumerates the envelope morphisms between the representable-backed
/// images of `sources` and `targets` — compatible families of module
/// morphisms (g+_j, g-_i, g_core) — and reports a bijection with
/// P(sources; targets). The inverse direction is the explicit recipe:
/// evaluate the core at the tuple of identities, which is its seed.
EnvHomReport env_hom_bijection(std::shared_ptr<const Polycategory> p, const Context& sources,
                               const Context& targets, std::size_t bound);

struct PreservationReport {
    bool ok = true;
    std::string why;
    std::vector<std::string> warnings;
};

/// For each distinguished (co)tensor/(co)unit, instantiates the natural
/// bijection chain through the shifted modules — e.g. for a tensor T of
/// (A,B):  Mod(G, y_A, y_B; U) = Mod(G; U[A,B;]) = Mod(G; U[T;]) =
/// Mod(G, y_T; U) — with G a representable prefix and U a shift of P,
/// and requires all four cardinalities to agree at the bound.
PreservationReport check_j_preservation(std::shared_ptr<const Polycategory> p,
                                        const std::vector<ProductWitness>& j, std::size_t bound);

/// Verifies y_{lim D} = lim y_{D_i} (and dually for colimit cones)
/// elementwise at the bound, via the pointwise limit criterion on P as a
/// module over itself. Cones with empty diagrams are flagged with a
/// warning since emptiness is exactly where preservation can fail.
PreservationReport check_k_preservation(std::shared_ptr<const Polycategory> p,
                                        const std::vector<Cone>& k, std::size_t bound,
                                        bool counary_support = false);

/// The Chu-level limit/colimit formulas on a posetal instance: a limit of
/// embedded objects is the embedded meet (plus components meet, minus
/// components join), and dually for colimits, with the universal property
/// checked against every object.
bool check_chu_limit_formulas(const PosetalPolycategory& p, const std::vector<Cone>& k,
                              std::string* why = nullptr);

}  // namespace polycat
