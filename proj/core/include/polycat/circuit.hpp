#pragma once

#include <map>
#include <memory>

#include "polycat/polycategory.hpp"
#include "polycat/signature.hpp"

namespace polycat {

/// A labeled port-graph witness for a morphism of a free polycategory.
///
/// Wires run from a value provider (boundary source slot or node output
/// port) to a consumer (boundary target slot or node input port); every
/// port is connected exactly once. Equality is boundary-preserving graph
/// isomorphism, decided through a deterministic canonical form.
struct Circuit {
    enum class EndKind { BoundarySrc, BoundaryTgt, NodeIn, NodeOut };

    struct End {
        EndKind kind;
        std::size_t node = 0;  // unused for boundary ends
        std::size_t port = 0;  // slot index for boundary ends

        friend bool operator==(const End&, const End&) = default;
    };

    struct Node {
        std::string gen;
        Context inputs;
        Context outputs;
    };

    struct Wire {
        End from;  // provider: BoundarySrc or NodeOut
        End to;    // consumer: BoundaryTgt or NodeIn
    };

    std::vector<Node> nodes;
    std::vector<Wire> wires;
    Context source;
    Context target;

    static Circuit wire_identity(const ObjectId& a);
    static Circuit from_generator(const Generator& g);

    /// Grafts g's output `g_tgt_pos` into f's input `f_src_pos`.
    static Circuit graft(const Circuit& f, std::size_t f_src_pos, const Circuit& g,
                         std::size_t g_tgt_pos);

    Circuit permuted(const Permutation& src_perm, const Permutation& tgt_perm) const;

    /// Canonical encoding; equal strings iff isomorphic over the same
    /// boundary.
    std::string canonical_key() const;

    /// Structural sanity: every port connected exactly once, wire types
    /// match port labels.
    void validate() const;
};

/// The free polycategory on a signature. Morphisms are circuits built
/// from the generators by single-object grafting; identities are single
/// wires. Hom enumeration saturates graftings up to `node_budget`
/// generator occurrences per circuit and `arity_bound` boundary length.
class FreePolycategory final : public Polycategory {
public:
    FreePolycategory(Signature sig, std::size_t arity_bound, std::size_t node_budget);

    std::vector<ObjectId> objects() const override { return sig_.objects; }
    std::size_t arity_bound() const override { return arity_bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;
    bool in_fragment(const PolyMorphism& m) const override;

    const Signature& signature() const { return sig_; }

    PolyMorphism morphism_of(Circuit c) const;
    PolyMorphism generator_morphism(const std::string& name) const;

private:
    void saturate();

    Signature sig_;
    std::size_t arity_bound_;
    std::size_t node_budget_;
    // key -> circuit, grouped by boundary; built once at construction
    std::map<std::pair<Context, Context>, std::vector<PolyMorphism>> table_;
};

}  // namespace polycat
