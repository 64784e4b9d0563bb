#pragma once

#include <optional>
#include <vector>

#include "polycat/errors.hpp"
#include "polycat/morphism.hpp"

namespace polycat {

/// The polycategory contract: a finite set of objects with a computable
/// finite hom oracle, composition along a single object occurrence, and
/// symmetric group actions.
///
/// Hom queries whose contexts exceed `arity_bound()` raise ArityBoundError
/// rather than silently truncating. All implementations must be pure:
/// the same query always yields the same (key-sorted) result, and values
/// are immutable after construction, so concurrent queries are safe.
class Polycategory {
public:
    virtual ~Polycategory() = default;

    virtual std::vector<ObjectId> objects() const = 0;

    virtual std::size_t arity_bound() const = 0;

    /// All morphisms in P(source; target), sorted by key.
    virtual std::vector<PolyMorphism> hom(const Context& source, const Context& target) const = 0;

    virtual PolyMorphism identity(const ObjectId& a) const = 0;

    /// Composition P(Gamma,A;Delta) x P(Sigma;Pi,A) -> P(Gamma,Sigma;Delta,Pi):
    /// `f_src_pos` addresses the occurrence of the cut object in f's source,
    /// `g_tgt_pos` the matching occurrence in g's target. The result has
    /// source (f.source minus cut) ++ g.source and target f.target ++
    /// (g.target minus cut).
    virtual PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                    const PolyMorphism& g, std::size_t g_tgt_pos) const = 0;

    virtual PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                                 const Permutation& tgt_perm) const = 0;

    /// Strict dual, for *-polycategories; nullopt when the presentation
    /// has no duals.
    virtual std::optional<ObjectId> dual(const ObjectId&) const { return std::nullopt; }

    /// Whether `m` lies inside the finitely tabulated fragment this
    /// instance enumerates. Composition is total, so composites may fall
    /// outside the fragment; hom/value membership tests are inconclusive
    /// for such morphisms and callers should skip them.
    virtual bool in_fragment(const PolyMorphism&) const { return true; }

protected:
    void require_cut(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                     std::size_t g_tgt_pos) const {
        if (f_src_pos >= f.source.size() || g_tgt_pos >= g.target.size())
            throw OccurrenceOutOfRange("compose_at: occurrence out of range");
        if (!(f.source[f_src_pos] == g.target[g_tgt_pos]))
            throw TypeMismatchError("compose_at: cut objects differ: " +
                                    f.source[f_src_pos].render() + " vs " +
                                    g.target[g_tgt_pos].render());
    }

    void require_bound(const Context& src, const Context& tgt) const {
        if (src.size() > arity_bound() || tgt.size() > arity_bound())
            throw ArityBoundError("hom query exceeds arity bound");
    }
};

/// All contexts over `objects` of length <= max_len, shortest first,
/// lexicographic within a length.
std::vector<Context> enumerate_contexts(const std::vector<ObjectId>& objects, std::size_t max_len);

/// All pairs (src, tgt) with |src| + |tgt| <= total_bound.
std::vector<std::pair<Context, Context>> enumerate_context_pairs(
    const std::vector<ObjectId>& objects, std::size_t total_bound);

}  // namespace polycat
