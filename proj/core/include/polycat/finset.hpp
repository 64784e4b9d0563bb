#pragma once

#include <map>
#include <memory>

#include "polycat/polycategory.hpp"

namespace polycat {

/// The multicategory of named finite sets: a morphism (X_1,...,X_k) -> Y
/// is a function from the product of the X_i to Y, stored as its value
/// list over the lexicographically ordered domain tuples. Hom-sets with
/// co-arity != 1 are empty.
///
/// Derived sets (products, function sets, pullbacks) may be registered
/// with the builder methods; do this before handing the instance to any
/// checker, queries are pure afterwards.
class FinSetMulticategory final : public Polycategory {
public:
    FinSetMulticategory(std::map<std::string, std::vector<std::string>> sets,
                        std::size_t arity_bound, std::size_t hom_budget = 200000);

    std::vector<ObjectId> objects() const override;
    std::size_t arity_bound() const override { return arity_bound_; }
    std::vector<PolyMorphism> hom(const Context& source, const Context& target) const override;
    PolyMorphism identity(const ObjectId& a) const override;
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t f_src_pos, const PolyMorphism& g,
                            std::size_t g_tgt_pos) const override;
    PolyMorphism permute(const PolyMorphism& f, const Permutation& src_perm,
                         const Permutation& tgt_perm) const override;

    const std::vector<std::string>& elements(const ObjectId& a) const;

    /// Domain tuples of a context, lexicographic, leftmost slot slowest.
    std::vector<std::vector<std::string>> tuples(const Context& gamma) const;

    /// A function as a morphism: values[t] is the image of tuples(gamma)[t].
    PolyMorphism function(const Context& gamma, const ObjectId& b,
                          std::vector<std::string> values) const;
    /// Evaluate a morphism at a domain tuple.
    const std::string& eval(const PolyMorphism& f, const std::vector<std::string>& args) const;

    /// Builder methods; idempotent on repeated names.
    ObjectId add_set(const std::string& name, std::vector<std::string> elems);
    /// Product set with elements "a|b"; name "(AxB)".
    ObjectId product(const ObjectId& a, const ObjectId& b);
    /// Function set with elements = value-list encodings; name "(A=>B)".
    ObjectId function_set(const ObjectId& a, const ObjectId& b);

private:
    std::map<std::string, std::vector<std::string>> sets_;
    std::size_t arity_bound_;
    std::size_t hom_budget_;
};

}  // namespace polycat
