#include "polycat/fsp.hpp"

#include <algorithm>
#include <map>

#include "polycat/errors.hpp"

namespace polycat {

namespace {

// A slot of a signed boundary: side 's' (source) or 't' (target).
struct SlotRef {
    char side;
    std::size_t pos;
    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

// The underlying-boundary layout of a signed boundary, both directions.
struct Layout {
    std::vector<SlotRef> usrc;  // underlying source slot -> signed slot
    std::vector<SlotRef> utgt;  // underlying target slot -> signed slot
    std::map<std::pair<char, std::size_t>, std::pair<char, std::size_t>> to_under;
};

Layout layout_of(const Context& src, const Context& tgt) {
    Layout l;
    for (std::size_t k = 0; k < src.size(); ++k)
        if (!src[k].bar) l.usrc.push_back({'s', k});
    for (std::size_t k = 0; k < tgt.size(); ++k)
        if (tgt[k].bar) l.usrc.push_back({'t', k});
    for (std::size_t k = 0; k < tgt.size(); ++k)
        if (!tgt[k].bar) l.utgt.push_back({'t', k});
    for (std::size_t k = 0; k < src.size(); ++k)
        if (src[k].bar) l.utgt.push_back({'s', k});
    for (std::size_t i = 0; i < l.usrc.size(); ++i)
        l.to_under[{l.usrc[i].side, l.usrc[i].pos}] = {'S', i};
    for (std::size_t i = 0; i < l.utgt.size(); ++i)
        l.to_under[{l.utgt[i].side, l.utgt[i].pos}] = {'T', i};
    return l;
}

// Where a slot of the composite's signed boundary came from: one of the
// two composands (0 = f, 1 = g) and its signed slot there.
struct Origin {
    int owner;
    SlotRef slot;
};

// An underlying slot of one of the composands.
struct UnderRef {
    int owner;
    char uside;
    std::size_t uslot;
    friend bool operator==(const UnderRef&, const UnderRef&) = default;
};

std::size_t find_ref(const std::vector<UnderRef>& prov, const UnderRef& r) {
    auto it = std::find(prov.begin(), prov.end(), r);
    if (it == prov.end()) throw TypeMismatchError("internal: lost track of a composite slot");
    return static_cast<std::size_t>(it - prov.begin());
}

}  // namespace

FspPolycategory::FspPolycategory(std::shared_ptr<const Polycategory> base,
                                 std::size_t arity_bound)
    : base_(std::move(base)), bound_(arity_bound) {}

std::vector<ObjectId> FspPolycategory::objects() const {
    std::vector<ObjectId> out = base_->objects();
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].dualized());
    return out;
}

std::pair<Context, Context> FspPolycategory::unsign(const Context& src, const Context& tgt) {
    Layout l = layout_of(src, tgt);
    Context us, ut;
    for (const auto& r : l.usrc) us.push_back(r.side == 's' ? src[r.pos] : ObjectId{tgt[r.pos].name});
    for (const auto& r : l.utgt) ut.push_back(r.side == 't' ? tgt[r.pos] : ObjectId{src[r.pos].name});
    return {us, ut};
}

PolyMorphism FspPolycategory::wrap(PolyMorphism under, Context src, Context tgt) const {
    auto [us, ut] = unsign(src, tgt);
    if (under.source != us || under.target != ut)
        throw TypeMismatchError("fsp wrap: witness boundary " + render(under.source) + " -> " +
                                render(under.target) + " does not match signed boundary " +
                                render(src) + " -> " + render(tgt));
    std::string key = under.key;
    return PolyMorphism{std::move(src), std::move(tgt), std::move(key),
                        std::make_shared<const PolyMorphism>(std::move(under))};
}

PolyMorphism FspPolycategory::underlying(const PolyMorphism& f) const {
    auto p = payload_as<PolyMorphism>(f);
    if (!p) throw TypeMismatchError("morphism does not belong to this free *-polycategory");
    return *p;
}

PolyMorphism FspPolycategory::embed(const PolyMorphism& f) const {
    return wrap(f, f.source, f.target);
}

std::vector<PolyMorphism> FspPolycategory::hom(const Context& source, const Context& target) const {
    require_bound(source, target);
    auto [us, ut] = unsign(source, target);
    std::vector<PolyMorphism> out;
    for (auto& m : base_->hom(us, ut)) out.push_back(wrap(std::move(m), source, target));
    return out;
}

PolyMorphism FspPolycategory::identity(const ObjectId& a) const {
    return wrap(base_->identity(ObjectId{a.name}), {a}, {a});
}

PolyMorphism FspPolycategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                         const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    const ObjectId cut = f.source[f_src_pos];
    const PolyMorphism uf = underlying(f);
    const PolyMorphism ug = underlying(g);
    const Layout lf = layout_of(f.source, f.target);
    const Layout lg = layout_of(g.source, g.target);

    PolyMorphism uh;
    std::vector<UnderRef> src_prov, tgt_prov;
    if (!cut.bar) {
        // plain cut: compose the witnesses the usual way round
        const std::size_t pf = lf.to_under.at({'s', f_src_pos}).second;
        const std::size_t pg = lg.to_under.at({'t', g_tgt_pos}).second;
        uh = base_->compose_at(uf, pf, ug, pg);
        for (std::size_t k = 0; k < uf.source.size(); ++k)
            if (k != pf) src_prov.push_back({0, 'S', k});
        for (std::size_t k = 0; k < ug.source.size(); ++k) src_prov.push_back({1, 'S', k});
        for (std::size_t k = 0; k < uf.target.size(); ++k) tgt_prov.push_back({0, 'T', k});
        for (std::size_t k = 0; k < ug.target.size(); ++k)
            if (k != pg) tgt_prov.push_back({1, 'T', k});
    } else {
        // barred cut: the witnesses compose the other way round
        const std::size_t pf = lf.to_under.at({'s', f_src_pos}).second;
        const std::size_t pg = lg.to_under.at({'t', g_tgt_pos}).second;
        uh = base_->compose_at(ug, pg, uf, pf);
        for (std::size_t k = 0; k < ug.source.size(); ++k)
            if (k != pg) src_prov.push_back({1, 'S', k});
        for (std::size_t k = 0; k < uf.source.size(); ++k) src_prov.push_back({0, 'S', k});
        for (std::size_t k = 0; k < ug.target.size(); ++k) tgt_prov.push_back({1, 'T', k});
        for (std::size_t k = 0; k < uf.target.size(); ++k)
            if (k != pf) tgt_prov.push_back({0, 'T', k});
    }

    Context rs = concat(erased(f.source, f_src_pos), g.source);
    Context rt = concat(f.target, erased(g.target, g_tgt_pos));

    auto origin_src = [&](std::size_t k) -> Origin {
        if (k < f.source.size() - 1) return {0, {'s', k < f_src_pos ? k : k + 1}};
        return {1, {'s', k - (f.source.size() - 1)}};
    };
    auto origin_tgt = [&](std::size_t k) -> Origin {
        if (k < f.target.size()) return {0, {'t', k}};
        std::size_t m = k - f.target.size();
        return {1, {'t', m < g_tgt_pos ? m : m + 1}};
    };
    auto under_of = [&](const Origin& o) -> UnderRef {
        const Layout& l = o.owner == 0 ? lf : lg;
        auto [uside, uslot] = l.to_under.at({o.slot.side, o.slot.pos});
        return {o.owner, uside, uslot};
    };

    const Layout lr = layout_of(rs, rt);
    Permutation ps, pt;
    ps.map.resize(lr.usrc.size());
    pt.map.resize(lr.utgt.size());
    for (std::size_t q = 0; q < lr.usrc.size(); ++q) {
        const SlotRef r = lr.usrc[q];
        Origin o = r.side == 's' ? origin_src(r.pos) : origin_tgt(r.pos);
        ps.map[q] = find_ref(src_prov, under_of(o));
    }
    for (std::size_t q = 0; q < lr.utgt.size(); ++q) {
        const SlotRef r = lr.utgt[q];
        Origin o = r.side == 't' ? origin_tgt(r.pos) : origin_src(r.pos);
        pt.map[q] = find_ref(tgt_prov, under_of(o));
    }

    return wrap(base_->permute(uh, ps, pt), std::move(rs), std::move(rt));
}

PolyMorphism FspPolycategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                      const Permutation& tgt_perm) const {
    const PolyMorphism uf = underlying(f);
    const Layout lf = layout_of(f.source, f.target);
    Context rs = apply(src_perm, f.source);
    Context rt = apply(tgt_perm, f.target);
    const Layout lr = layout_of(rs, rt);

    auto old_under = [&](const SlotRef& r) {
        SlotRef old{r.side, r.side == 's' ? src_perm.map[r.pos] : tgt_perm.map[r.pos]};
        return lf.to_under.at({old.side, old.pos});
    };
    Permutation ps, pt;
    ps.map.resize(lr.usrc.size());
    pt.map.resize(lr.utgt.size());
    for (std::size_t q = 0; q < lr.usrc.size(); ++q) ps.map[q] = old_under(lr.usrc[q]).second;
    for (std::size_t q = 0; q < lr.utgt.size(); ++q) pt.map[q] = old_under(lr.utgt[q]).second;

    return wrap(base_->permute(uf, ps, pt), std::move(rs), std::move(rt));
}

std::string check_fsp_embedding(const Polycategory& p, const FspPolycategory& fsp,
                                std::size_t bound) {
    const auto ctxs = enumerate_contexts(p.objects(), bound);
    for (const auto& src : ctxs)
        for (const auto& tgt : ctxs) {
            const auto base = p.hom(src, tgt);
            const auto emb = fsp.hom(src, tgt);
            bool same = base.size() == emb.size();
            for (std::size_t i = 0; same && i < base.size(); ++i)
                same = base[i].key == emb[i].key;
            if (!same)
                return "hom(" + render(src) + ";" + render(tgt) + "): " +
                       std::to_string(base.size()) + " morphisms in the base vs " +
                       std::to_string(emb.size()) + " in the free *-polycategory";
        }
    return "";
}

ProductWitness hom_as_cotensor(const FspPolycategory& fsp, const ObjectId& a, const ObjectId& b,
                               const ObjectId& carrier) {
    Context us{carrier, a};
    Context ut{b};
    auto evals = fsp.base().hom(us, ut);
    if (evals.empty())
        throw TypeMismatchError("no evaluation morphism (" + carrier.render() + "," + a.render() +
                                ") -> " + b.render());
    PolyMorphism structural = fsp.wrap(evals.front(), {carrier}, {a.dualized(), b});
    return ProductWitness{ProductWitness::Kind::Cotensor, {a.dualized(), b}, carrier,
                          std::move(structural)};
}

}  // namespace polycat
