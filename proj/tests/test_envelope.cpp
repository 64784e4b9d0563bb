#include <memory>

#include "doctest.h"
#include "fixtures.hpp"
#include "polycat/envelope.hpp"
#include "polycat/fsp.hpp"

using namespace polycat;
using namespace fixtures;

TEST_CASE("embedded objects pair by composition") {
    auto p = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    ObjectId one{"1"}, zero{"0"};
    EnvelopeObject e = env_embed(p, one);
    // f in y_1(0;) and g in y^_1(0;): pairing = g o_1 f in P(0,0;)
    PolyMorphism f = p->hom({zero}, {one}).at(0);
    PolyMorphism g = p->hom({zero, one}, {}).at(0);
    // module coordinates: y_1(0;) element has boundary (0;), y^_1(0;) too
    PolyMorphism fe = covariant_rep(p, one)->value_at({zero}, {}).at(0);
    PolyMorphism ge = contravariant_rep(p, one)->value_at({zero}, {}).at(0);
    PolyMorphism paired = e.pairing.apply({fe, ge});
    CHECK(paired.source == (Context{zero, zero}));
    CHECK(paired.target.empty());
    CHECK(p->hom({zero, zero}, {}).at(0) == paired);
    (void)f;
    (void)g;
}

TEST_CASE("the envelope dual swaps components and is involutive") {
    auto p = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    ObjectId one{"1"};
    EnvelopeObject e = env_embed(p, one);
    EnvelopeObject d = env_dual(e);
    CHECK(d.plus->name() == e.minus->name());
    CHECK(d.minus->name() == e.plus->name());
    CHECK(env_dual(d) == e);
    CHECK_FALSE(d == e);
}

TEST_CASE("envelope hom-sets biject with P's on free instances") {
    auto p = std::make_shared<FreePolycategory>(merge_signature(), 4, 3);
    for (const auto& [src, tgt] : enumerate_context_pairs(p->objects(), 3)) {
        EnvHomReport r = env_hom_bijection(p, src, tgt, 2);
        INFO(r.why);
        CHECK(r.ok);
        CHECK(r.env_count == r.p_count);
    }
}

TEST_CASE("a one-generator hom transfers with count one") {
    auto p = std::make_shared<FreePolycategory>(arrow_signature(), 4, 3);
    ObjectId a{"A"}, b{"B"};
    EnvHomReport r = env_hom_bijection(p, {a}, {b}, 2);
    CHECK(r.ok);
    CHECK(r.env_count == 1);
    EnvHomReport nullary = env_hom_bijection(p, {}, {}, 2);
    CHECK(nullary.ok);
    CHECK(nullary.env_count == p->hom({}, {}).size());
}

TEST_CASE("distinguished tensors survive the embedding") {
    auto p = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    ObjectId zero{"0"}, one{"1"};
    std::vector<ProductWitness> j;
    j.push_back({ProductWitness::Kind::Tensor, {one, zero}, zero,
                 p->hom({one, zero}, {zero}).at(0)});
    j.push_back({ProductWitness::Kind::Tensor, {one, one}, one, p->hom({one, one}, {one}).at(0)});
    j.push_back({ProductWitness::Kind::Unit, {}, one, p->hom({}, {one}).at(0)});
    PreservationReport r = check_j_preservation(p, j, 2);
    INFO(r.why);
    CHECK(r.ok);
    // empty J is vacuous
    CHECK(check_j_preservation(p, {}, 2).ok);
}

TEST_CASE("a wrong tensor witness is rejected before the chain") {
    auto p = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    ObjectId zero{"0"}, one{"1"};
    // 1 is not the tensor of (1,0): the structural morphism exists but
    // induces no bijection
    std::vector<ProductWitness> j;
    j.push_back({ProductWitness::Kind::Tensor, {one, zero}, one,
                 p->hom({one, zero}, {one}).at(0)});
    PreservationReport r = check_j_preservation(p, j, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.why.find("invalid") != std::string::npos);
}

TEST_CASE("internal homs of a closed poset are cotensors after fsp") {
    auto base = std::make_shared<PosetalPolycategory>(counary_from_smc_poset(chain3_quantale(), 8));
    auto fsp = std::make_shared<FspPolycategory>(base, 3);
    const Quantale& q = base->quantale();
    std::vector<ProductWitness> j;
    j.push_back(hom_as_cotensor(*fsp, ObjectId{"m"}, ObjectId{"0"},
                                ObjectId{q.residual("m", "0")}));
    j.push_back(hom_as_cotensor(*fsp, ObjectId{"1"}, ObjectId{"m"},
                                ObjectId{q.residual("1", "m")}));
    PreservationReport r = check_j_preservation(fsp, j, 2);
    INFO(r.why);
    CHECK(r.ok);
}

TEST_CASE("binary cones are preserved; empty diagrams are flagged") {
    auto p = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    ObjectId zero{"0"}, one{"1"};
    Cone meet{true, zero, {zero, one}, {p->hom({zero}, {zero}).at(0), p->hom({zero}, {one}).at(0)}};
    Cone join{false, one, {zero, one}, {p->hom({zero}, {one}).at(0), p->hom({one}, {one}).at(0)}};
    PreservationReport r = check_k_preservation(p, {meet, join}, 2);
    INFO(r.why);
    CHECK(r.ok);
    CHECK(r.warnings.empty());

    Cone terminal{true, one, {}, {}};
    PreservationReport rt = check_k_preservation(p, {terminal}, 2, /*counary_support=*/false);
    CHECK(rt.warnings.size() == 1);
}

TEST_CASE("the terminal cone fails across fsp with a cited coordinate") {
    auto base = std::make_shared<PosetalPolycategory>(counary_from_smc_poset(chain3_quantale(), 8));
    auto fsp = std::make_shared<FspPolycategory>(base, 3);
    Cone terminal{true, ObjectId{"1"}, {}, {}};
    PreservationReport r = check_k_preservation(fsp, {terminal}, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.why.find("@") != std::string::npos);
    CHECK(r.warnings.size() == 1);
}

TEST_CASE("chu-level limits are meets and colimits are joins on posetal models") {
    auto pb = std::make_shared<PosetalPolycategory>(boolean_quantale(), "0", 6);
    auto pl = std::make_shared<PosetalPolycategory>(lukasiewicz3_quantale(), "0", 6);
    for (const auto& p : {pb, pl}) {
        const Quantale& q = p->quantale();
        std::vector<Cone> k;
        for (const auto& x : q.elements())
            for (const auto& y : q.elements()) {
                auto m = q.meet(x, y);
                auto jn = q.join(x, y);
                REQUIRE(m.has_value());
                REQUIRE(jn.has_value());
                k.push_back({true, ObjectId{*m}, {ObjectId{x}, ObjectId{y}},
                             {p->hom({ObjectId{*m}}, {ObjectId{x}}).at(0),
                              p->hom({ObjectId{*m}}, {ObjectId{y}}).at(0)}});
                k.push_back({false, ObjectId{*jn}, {ObjectId{x}, ObjectId{y}},
                             {p->hom({ObjectId{x}}, {ObjectId{*jn}}).at(0),
                              p->hom({ObjectId{y}}, {ObjectId{*jn}}).at(0)}});
            }
        // empty cones: the lattice bounds
        k.push_back({true, ObjectId{*q.top()}, {}, {}});
        k.push_back({false, ObjectId{*q.bottom()}, {}, {}});
        std::string why;
        CHECK(check_chu_limit_formulas(*p, k, &why));
        INFO(why);
    }
}
