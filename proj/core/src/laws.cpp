#include "polycat/laws.hpp"

#include <map>

#include "polycat/align.hpp"

namespace polycat {

namespace {

std::string show(const PolyMorphism& m) {
    return "(" + render(m.source) + " ; " + render(m.target) + ") " + m.key;
}

struct HomCache {
    const Polycategory& p;
    std::map<std::pair<Context, Context>, std::vector<PolyMorphism>> cache;

    const std::vector<PolyMorphism>& get(const Context& s, const Context& t) {
        auto key = std::make_pair(s, t);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, p.hom(s, t)).first;
        return it->second;
    }
};

struct Budget {
    std::size_t left;
    bool spend() {
        if (left == 0) return false;
        --left;
        return true;
    }
};

}  // namespace

LawReport check_laws(const Polycategory& p, std::size_t arity_bound, std::size_t samples) {
    LawReport report;
    const auto objs = p.objects();
    const auto contexts = enumerate_contexts(objs, arity_bound);
    HomCache homs{p, {}};

    std::vector<PolyMorphism> morphisms;
    for (const auto& s : contexts)
        for (const auto& t : contexts)
            for (const auto& m : homs.get(s, t)) morphisms.push_back(m);

    auto fail = [&](const std::string& law, const std::string& ce) {
        report.results.push_back({law, false, ce});
    };
    auto pass = [&](const std::string& law) { report.results.push_back({law, true, ""}); };

    // oracle determinism
    {
        bool ok = true;
        std::string ce;
        for (const auto& s : contexts) {
            for (const auto& t : contexts) {
                if (p.hom(s, t) != homs.get(s, t)) {
                    ok = false;
                    ce = "hom(" + render(s) + ";" + render(t) + ") differs between calls";
                    break;
                }
            }
            if (!ok) break;
        }
        ok ? pass("determinism") : fail("determinism", ce);
    }

    // unit laws
    {
        bool ok = true;
        std::string ce;
        Budget b{samples};
        for (const auto& f : morphisms) {
            if (!ok) break;
            for (std::size_t i = 0; i < f.source.size() && ok && b.spend(); ++i) try {
                PolyMorphism id = p.identity(f.source[i]);
                PolyMorphism r = p.compose_at(f, i, id, 0);
                PolyMorphism want =
                    p.permute(f, move_to_end(f.source.size(), i), Permutation::identity(f.target.size()));
                if (!(r == want)) {
                    ok = false;
                    ce = "f=" + show(f) + " cut src " + std::to_string(i);
                }
            } catch (const std::exception& e) {
                ok = false;
                ce = "f=" + show(f) + " cut src " + std::to_string(i) + ": " + e.what();
            }
            for (std::size_t j = 0; j < f.target.size() && ok && b.spend(); ++j) try {
                PolyMorphism id = p.identity(f.target[j]);
                PolyMorphism r = p.compose_at(id, 0, f, j);
                PolyMorphism want =
                    p.permute(f, Permutation::identity(f.source.size()), move_to_front(f.target.size(), j));
                if (!(r == want)) {
                    ok = false;
                    ce = "f=" + show(f) + " cut tgt " + std::to_string(j);
                }
            } catch (const std::exception& e) {
                ok = false;
                ce = "f=" + show(f) + " cut tgt " + std::to_string(j) + ": " + e.what();
            }
        }
        ok ? pass("unit") : fail("unit", ce);
    }

    // index: object -> morphisms having it among their outputs
    std::map<ObjectId, std::vector<std::pair<const PolyMorphism*, std::size_t>>> by_output;
    for (const auto& m : morphisms)
        for (std::size_t j = 0; j < m.target.size(); ++j) by_output[m.target[j]].push_back({&m, j});
    static const std::vector<std::pair<const PolyMorphism*, std::size_t>> kNone;
    auto with_output = [&](const ObjectId& o) -> const auto& {
        auto it = by_output.find(o);
        return it == by_output.end() ? kNone : it->second;
    };

    // associativity: h along an input of g, g along an input of f
    {
        bool ok = true;
        std::string ce;
        Budget b{samples};
        for (const auto& f : morphisms) {
            if (!ok) break;
            for (std::size_t i = 0; i < f.source.size() && ok; ++i)
                for (auto [gp, j] : with_output(f.source[i])) {
                    if (!ok) break;
                    const auto& g = *gp;
                    for (std::size_t k = 0; k < g.source.size() && ok; ++k)
                        for (auto [hp, l] : with_output(g.source[k])) {
                            if (!ok) break;
                            const auto& h = *hp;
                            if (!b.spend()) { goto assoc_done; }
                            try {
                                PolyMorphism fg = p.compose_at(f, i, g, j);
                                std::size_t k_in_fg = f.source.size() - 1 + k;
                                PolyMorphism r1 = p.compose_at(fg, k_in_fg, h, l);
                                PolyMorphism gh = p.compose_at(g, k, h, l);
                                PolyMorphism r2 = p.compose_at(f, i, gh, j);
                                if (!(r1 == r2)) {
                                    ok = false;
                                    ce = "f=" + show(f) + " g=" + show(g) + " h=" + show(h);
                                }
                            } catch (const std::exception& e) {
                                ok = false;
                                ce = "f=" + show(f) + " g=" + show(g) + " h=" + show(h) + ": " +
                                     e.what();
                            }
                        }
                }
        }
    assoc_done:
        ok ? pass("associativity") : fail("associativity", ce);
    }

    // interchange: cuts into two distinct inputs of f commute
    {
        bool ok = true;
        std::string ce;
        Budget b{samples};
        for (const auto& f : morphisms) {
            if (!ok) break;
            for (std::size_t i1 = 0; i1 < f.source.size() && ok; ++i1)
                for (std::size_t i2 = i1 + 1; i2 < f.source.size() && ok; ++i2)
                    for (auto [g1p, j1] : with_output(f.source[i1])) {
                        if (!ok) break;
                        const auto& g1 = *g1p;
                        {
                            for (auto [g2p, j2] : with_output(f.source[i2])) {
                                if (!ok) break;
                                const auto& g2 = *g2p;
                                {
                                    if (!b.spend()) { goto inter_done; }
                                    try {
                                    PolyMorphism c1 = p.compose_at(f, i1, g1, j1);
                                    PolyMorphism r1 = p.compose_at(c1, i2 - 1, g2, j2);
                                    PolyMorphism c2 = p.compose_at(f, i2, g2, j2);
                                    PolyMorphism r2 = p.compose_at(c2, i1, g1, j1);
                                    // r2 carries the g2 block before the g1 block
                                    std::vector<Tag> want_src, have_src, want_tgt, have_tgt;
                                    for (std::size_t k = 0; k < f.source.size(); ++k)
                                        if (k != i1 && k != i2) want_src.push_back({0, k});
                                    for (std::size_t k = 0; k < g1.source.size(); ++k) want_src.push_back({1, k});
                                    for (std::size_t k = 0; k < g2.source.size(); ++k) want_src.push_back({2, k});
                                    for (std::size_t k = 0; k < f.source.size(); ++k)
                                        if (k != i1 && k != i2) have_src.push_back({0, k});
                                    for (std::size_t k = 0; k < g2.source.size(); ++k) have_src.push_back({2, k});
                                    for (std::size_t k = 0; k < g1.source.size(); ++k) have_src.push_back({1, k});
                                    for (std::size_t k = 0; k < f.target.size(); ++k) want_tgt.push_back({0, k});
                                    for (std::size_t k = 0; k < g1.target.size(); ++k)
                                        if (k != j1) want_tgt.push_back({1, k});
                                    for (std::size_t k = 0; k < g2.target.size(); ++k)
                                        if (k != j2) want_tgt.push_back({2, k});
                                    for (std::size_t k = 0; k < f.target.size(); ++k) have_tgt.push_back({0, k});
                                    for (std::size_t k = 0; k < g2.target.size(); ++k)
                                        if (k != j2) have_tgt.push_back({2, k});
                                    for (std::size_t k = 0; k < g1.target.size(); ++k)
                                        if (k != j1) have_tgt.push_back({1, k});
                                    PolyMorphism r2p = p.permute(r2, perm_matching(want_src, have_src),
                                                                 perm_matching(want_tgt, have_tgt));
                                    if (!(r1 == r2p)) {
                                        ok = false;
                                        ce = "f=" + show(f) + " g1=" + show(g1) + " g2=" + show(g2);
                                    }
                                    } catch (const std::exception& e) {
                                        ok = false;
                                        ce = "f=" + show(f) + " g1=" + show(g1) +
                                             " g2=" + show(g2) + ": " + e.what();
                                    }
                                }
                            }
                        }
                    }
        }
    inter_done:
        ok ? pass("interchange") : fail("interchange", ce);
    }

    // equivariance
    {
        bool ok = true;
        std::string ce;
        Budget b{samples};
        for (const auto& f : morphisms) {
            if (!ok) break;
            for (const auto& sp : all_permutations(f.source.size())) {
                if (!ok) break;
                for (const auto& tp : all_permutations(f.target.size())) {
                    if (!b.spend()) { goto equi_done; }
                    PolyMorphism r = p.permute(p.permute(f, sp, tp), sp.inverse(), tp.inverse());
                    if (!(r == f)) {
                        ok = false;
                        ce = "round trip fails for f=" + show(f);
                        break;
                    }
                }
            }
        }
        // composition commutes with the symmetric actions
        for (const auto& f : morphisms) {
            if (!ok) break;
            for (std::size_t i = 0; i < f.source.size() && ok; ++i)
                for (const auto& g : morphisms) {
                    if (!ok) break;
                    for (std::size_t j = 0; j < g.target.size() && ok; ++j) {
                        if (!(f.source[i] == g.target[j])) continue;
                        for (const auto& sp : all_permutations(f.source.size())) {
                            if (!ok || !b.spend()) goto equi_done;
                            try {
                            PolyMorphism fp = p.permute(f, sp, Permutation::identity(f.target.size()));
                            std::size_t ip = sp.inverse().map[i];
                            PolyMorphism rp = p.compose_at(fp, ip, g, j);
                            PolyMorphism r = p.compose_at(f, i, g, j);
                            std::vector<Tag> want_src, have_src;
                            for (std::size_t q = 0; q < fp.source.size(); ++q)
                                if (q != ip) want_src.push_back({0, sp.map[q]});
                            for (std::size_t k = 0; k < g.source.size(); ++k) want_src.push_back({1, k});
                            for (std::size_t k = 0; k < f.source.size(); ++k)
                                if (k != i) have_src.push_back({0, k});
                            for (std::size_t k = 0; k < g.source.size(); ++k) have_src.push_back({1, k});
                            PolyMorphism rq = p.permute(r, perm_matching(want_src, have_src),
                                                        Permutation::identity(r.target.size()));
                            if (!(rp == rq)) {
                                ok = false;
                                ce = "composition not equivariant: f=" + show(f) + " g=" + show(g);
                            }
                            } catch (const std::exception& e) {
                                ok = false;
                                ce = "composition not equivariant: f=" + show(f) +
                                     " g=" + show(g) + ": " + e.what();
                            }
                        }
                    }
                }
        }
    equi_done:
        ok ? pass("equivariance") : fail("equivariance", ce);
    }

    return report;
}

bool check_representability(const Polycategory& p, const ProductWitness& w,
                            std::size_t arity_bound, std::string* why) {
    const auto objs = p.objects();
    const auto& m = w.structural;
    auto note = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };

    bool carrier_known = false;
    for (const auto& o : objs) carrier_known |= (o == w.carrier);
    if (!carrier_known) return note("carrier not among the polycategory's objects");

    // For each bounded (Gamma;Delta) compare the two hom-sets linked by
    // the universal property and check the induced map is a bijection.
    std::size_t bound = std::min(arity_bound, p.arity_bound());
    for (const auto& gamma : enumerate_contexts(objs, bound)) {
        for (const auto& delta : enumerate_contexts(objs, bound)) {
            Context s1, t1, s2, t2;
            switch (w.kind) {
                case ProductWitness::Kind::Tensor:
                    s1 = concat(gamma, {w.carrier}); t1 = delta;
                    s2 = concat(gamma, w.operands); t2 = delta;
                    break;
                case ProductWitness::Kind::Cotensor:
                    s1 = gamma; t1 = concat(delta, {w.carrier});
                    s2 = gamma; t2 = concat(delta, w.operands);
                    break;
                case ProductWitness::Kind::Unit:
                    s1 = concat(gamma, {w.carrier}); t1 = delta;
                    s2 = gamma; t2 = delta;
                    break;
                case ProductWitness::Kind::Counit:
                    s1 = gamma; t1 = concat(delta, {w.carrier});
                    s2 = gamma; t2 = delta;
                    break;
                case ProductWitness::Kind::Hom:
                    if (!delta.empty()) continue;  // co-unary setting
                    s1 = gamma; t1 = {w.carrier};
                    s2 = concat(gamma, {w.operands.at(0)}); t2 = {w.operands.at(1)};
                    break;
            }
            if (s1.size() > p.arity_bound() || t1.size() > p.arity_bound() ||
                s2.size() > p.arity_bound() || t2.size() > p.arity_bound())
                continue;

            auto h1 = p.hom(s1, t1);
            auto h2 = p.hom(s2, t2);

            std::vector<PolyMorphism> image;
            for (const auto& f : h1) {
                PolyMorphism r;
                switch (w.kind) {
                    case ProductWitness::Kind::Tensor:
                    case ProductWitness::Kind::Unit:
                        r = p.compose_at(f, gamma.size(), m, 0);
                        break;
                    case ProductWitness::Kind::Counit:
                        r = p.compose_at(m, 0, f, delta.size());
                        break;
                    case ProductWitness::Kind::Cotensor: {
                        r = p.compose_at(m, 0, f, delta.size());
                        // layout (operands, Delta) -> (Delta, operands)
                        std::size_t n = r.target.size(), k = w.operands.size();
                        Permutation rot;
                        for (std::size_t q = k; q < n; ++q) rot.map.push_back(q);
                        for (std::size_t q = 0; q < k; ++q) rot.map.push_back(q);
                        r = p.permute(r, Permutation::identity(r.source.size()), rot);
                        break;
                    }
                    case ProductWitness::Kind::Hom: {
                        r = p.compose_at(m, 0, f, 0);
                        // layout (A, Gamma) -> (Gamma, A)
                        r = p.permute(r, move_to_end(r.source.size(), 0),
                                      Permutation::identity(r.target.size()));
                        break;
                    }
                }
                if (!(r.source == s2 && r.target == t2))
                    return note("induced morphism has unexpected boundary at (" + render(gamma) +
                                ";" + render(delta) + ")");
                image.push_back(r);
            }

            // injective into h2, with equal cardinalities
            for (std::size_t a = 0; a < image.size(); ++a) {
                bool present = false;
                for (const auto& g : h2) present |= (g == image[a]);
                if (!present)
                    return note("induced map leaves hom(" + render(s2) + ";" + render(t2) + ")");
                for (std::size_t b2 = a + 1; b2 < image.size(); ++b2)
                    if (image[a] == image[b2])
                        return note("induced map not injective at (" + render(gamma) + ";" +
                                    render(delta) + ")");
            }
            if (image.size() != h2.size())
                return note("hom-set cardinalities differ at (" + render(gamma) + ";" +
                            render(delta) + "): " + std::to_string(h1.size()) + " vs " +
                            std::to_string(h2.size()));
        }
    }
    return true;
}

}  // namespace polycat
