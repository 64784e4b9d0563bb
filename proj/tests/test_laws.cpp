#include <memory>

#include "doctest.h"
#include "fixtures.hpp"
#include "polycat/laws.hpp"

using namespace polycat;
using namespace fixtures;

namespace {

// Delegating wrapper whose composition silently reverses the composite
// source whenever it has at least two entries.
class CorruptedComposition final : public Polycategory {
public:
    explicit CorruptedComposition(std::shared_ptr<const Polycategory> inner)
        : inner_(std::move(inner)) {}

    std::vector<ObjectId> objects() const override { return inner_->objects(); }
    std::size_t arity_bound() const override { return inner_->arity_bound(); }
    std::vector<PolyMorphism> hom(const Context& s, const Context& t) const override {
        return inner_->hom(s, t);
    }
    PolyMorphism identity(const ObjectId& a) const override { return inner_->identity(a); }
    PolyMorphism permute(const PolyMorphism& f, const Permutation& sp,
                         const Permutation& tp) const override {
        return inner_->permute(f, sp, tp);
    }
    PolyMorphism compose_at(const PolyMorphism& f, std::size_t i, const PolyMorphism& g,
                            std::size_t j) const override {
        PolyMorphism h = inner_->compose_at(f, i, g, j);
        if (h.source.size() < 2) return h;
        Permutation rev;
        for (std::size_t k = h.source.size(); k-- > 0;) rev.map.push_back(k);
        return inner_->permute(h, rev, Permutation::identity(h.target.size()));
    }

private:
    std::shared_ptr<const Polycategory> inner_;
};

}  // namespace

TEST_CASE("laws hold in the free polycategory on a merge signature") {
    FreePolycategory p(merge_signature(), 3, 3);
    LawReport r = check_laws(p, 3);
    for (const auto& lr : r.results) {
        INFO(lr.law << ": " << lr.counterexample);
        CHECK(lr.passed);
    }
}

TEST_CASE("laws hold in the free polycategory with a closed loop") {
    FreePolycategory p(closed_loop_signature(), 3, 3);
    CHECK(check_laws(p, 3).all_passed());
}

TEST_CASE("laws hold in posetal models") {
    PosetalPolycategory b(boolean_quantale(), "0", 3);
    CHECK(check_laws(b, 3).all_passed());
    PosetalPolycategory l(lukasiewicz3_quantale(), "0", 3);
    CHECK(check_laws(l, 3).all_passed());
    PosetalPolycategory h = counary_from_smc_poset(chain3_quantale(), 3);
    CHECK(check_laws(h, 3).all_passed());
}

TEST_CASE("corrupted composition is caught with a counterexample") {
    auto inner = std::make_shared<FreePolycategory>(split_signature(), 3, 3);
    CorruptedComposition p(inner);
    LawReport r = check_laws(p, 3);
    CHECK_FALSE(r.all_passed());
    bool have_counterexample = false;
    for (const auto& lr : r.results)
        if (!lr.passed && !lr.counterexample.empty()) have_counterexample = true;
    CHECK(have_counterexample);
}

TEST_CASE("tensor representability in a posetal model") {
    PosetalPolycategory b(boolean_quantale(), "0", 3);
    ObjectId zero{"0"}, one{"1"};
    // 1 @ 0 = 0 with structural morphism (1,0;0)
    ProductWitness w{ProductWitness::Kind::Tensor, {one, zero}, zero,
                     b.hom({one, zero}, {zero}).at(0)};
    std::string why;
    CHECK(check_representability(b, w, 3, &why));
    // a wrong carrier is rejected
    ProductWitness bad{ProductWitness::Kind::Tensor, {one, zero}, one,
                       b.hom({one, zero}, {one}).at(0)};
    CHECK_FALSE(check_representability(b, bad, 3, &why));
    CHECK_FALSE(why.empty());
}
