#pragma once

#include <memory>

#include "polycat/laws.hpp"
#include "polycat/polycategory.hpp"

namespace polycat {

/// The free *-polycategory on a polycategory P. Objects come in two
/// copies A and ~A, and
///
///   fsp P(Gamma, ~Pi ; Delta, ~Sigma) = P(Gamma, Sigma ; Delta, Pi)
///
/// for arbitrary interleavings: the underlying boundary lists first the
/// plain entries of the signed side, then the un-barred entries of the
/// opposite side, preserving order. Composition along a barred object
/// swaps the two composands.
class FspPolycategory final : public Polycategory {
public:
    /// `arity_bound` limits the signed boundaries served by hom(); the
    /// base must be able to answer queries up to twice that, since a
    /// fully barred boundary unsigns to one side.
    FspPolycategory(std::shared_ptr<const Polycategory> base, std::size_t arity_bound);

    std::vector<ObjectId> objects() const override;
    std::size_t arity_bound() const override { return bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;
    std::optional<ObjectId> dual(const ObjectId& a) const override { return a.dualized(); }

    const Polycategory& base() const { return *base_; }

    /// Underlying boundary of a signed boundary.
    static std::pair<Context, Context> unsign(const Context& src, const Context& tgt);

    /// The full embedding P -> fsp P: identity on objects and witnesses.
    PolyMorphism embed(const PolyMorphism& f) const;
    /// The underlying P-morphism of an fsp morphism.
    PolyMorphism underlying(const PolyMorphism& f) const;
    /// fsp morphism over a signed boundary from its underlying witness.
    PolyMorphism wrap(PolyMorphism under, Context src, Context tgt) const;

private:
    std::shared_ptr<const Polycategory> base_;
    std::size_t bound_;
};

/// Hom-set agreement of the embedding P -> fsp P on all plain boundaries
/// up to `bound` (full-faithfulness, checked elementwise). Returns a
/// failing boundary description or empty on success.
std::string check_fsp_embedding(const Polycategory& p, const FspPolycategory& fsp,
                                std::size_t bound);

/// For a co-unary closed P with internal hom `carrier` of (a, b): the
/// witness that `carrier` is a cotensor product ~a # b in fsp P.
/// Throws TypeMismatchError when P has no evaluation morphism
/// (carrier, a) -> b.
ProductWitness hom_as_cotensor(const FspPolycategory& fsp, const ObjectId& a, const ObjectId& b,
                               const ObjectId& carrier);

}  // namespace polycat
