#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "polycat/polycategory.hpp"

namespace polycat {

/// A finite commutative quantale: a finite lattice order with a monotone
/// commutative associative tensor, a unit, and residuals computed as
/// joins (x.a <= b iff x <= a -o b).
class Quantale {
public:
    /// `leq` holds the generating pairs; the constructor closes them
    /// reflexively and transitively and verifies antisymmetry, the
    /// monoid laws, monotonicity, and the residuation adjunction.
    Quantale(std::vector<std::string> elements, std::set<std::pair<std::string, std::string>> leq,
             std::map<std::pair<std::string, std::string>, std::string> tensor, std::string unit);

    const std::vector<std::string>& elements() const { return elems_; }
    const std::string& unit() const { return unit_; }

    bool leq(const std::string& a, const std::string& b) const;
    const std::string& tensor(const std::string& a, const std::string& b) const;
    std::string tensor_all(const std::vector<std::string>& xs) const;

    /// a -o b, the largest x with x.a <= b.
    const std::string& residual(const std::string& a, const std::string& b) const;

    /// Meet/join when they exist in the order.
    std::optional<std::string> meet(const std::string& a, const std::string& b) const;
    std::optional<std::string> join(const std::string& a, const std::string& b) const;
    std::optional<std::string> bottom() const;
    std::optional<std::string> top() const;

private:
    std::size_t index(const std::string& e) const;

    std::vector<std::string> elems_;
    std::set<std::pair<std::string, std::string>> leq_;
    std::map<std::pair<std::string, std::string>, std::string> ten_;
    std::map<std::pair<std::string, std::string>, std::string> res_;
    std::string unit_;
};

/// File format:
///   elems: a b c
///   leq: a b
///   ten: a b = c
///   unit: e
///   dual: z        (optional)
struct QuantaleFile {
    Quantale quantale;
    std::optional<std::string> dualizer;
};
QuantaleFile parse_quantale(const std::string& text);

/// The posetal polycategory of a quantale. With a dualizer element the
/// model is *-autonomous (double negation must hold, else
/// NotStarAutonomous is thrown) and hom(Gamma;Delta) is nonempty iff
/// tensor(Gamma) <= par(Delta). Without one the polycategory is co-unary:
/// hom(Gamma;b) nonempty iff tensor(Gamma) <= b.
class PosetalPolycategory final : public Polycategory {
public:
    PosetalPolycategory(Quantale q, std::optional<std::string> dualizer, std::size_t arity_bound);

    std::vector<ObjectId> objects() const override;
    std::size_t arity_bound() const override { return arity_bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;
    std::optional<ObjectId> dual(const ObjectId& a) const override;

    const Quantale& quantale() const { return q_; }
    bool counary() const { return !dualizer_.has_value(); }
    const std::optional<std::string>& dualizer() const { return dualizer_; }

    /// Negation a -o bot0 (dualizer required).
    std::string negate(const std::string& a) const;
    /// Nonemptiness fact for a boundary.
    bool holds(const Context& source, const Context& target) const;

private:
    std::string par_all(const Context& c) const;
    PolyMorphism token(const Context& src, const Context& tgt) const;

    Quantale q_;
    std::optional<std::string> dualizer_;
    std::size_t arity_bound_;
};

/// The co-unary polycategory (multicategory) of a closed symmetric
/// monoidal poset: hom(Gamma;Delta) nonempty only when |Delta| = 1 and
/// tensor(Gamma) <= Delta.
PosetalPolycategory counary_from_smc_poset(Quantale q, std::size_t arity_bound);

}  // namespace polycat
