#include "polycat/chu.hpp"

#include <algorithm>
#include <map>

#include "polycat/align.hpp"

namespace polycat {

namespace {

std::string family_key(const ChuParts& parts) {
    std::string s = "{+";
    for (std::size_t j = 0; j < parts.plus_parts.size(); ++j) {
        if (j) s += ";";
        s += parts.plus_parts[j].key;
    }
    s += "|-";
    for (std::size_t i = 0; i < parts.minus_parts.size(); ++i) {
        if (i) s += ";";
        s += parts.minus_parts[i].key;
    }
    s += "|." + parts.core.key + "}";
    return s;
}

}  // namespace

ChuPolycategory::ChuPolycategory(std::shared_ptr<const Polycategory> e, ModulePtr bot,
                                 std::vector<ChuObject> objs, std::size_t arity_bound)
    : e_(std::move(e)), bot_(std::move(bot)), objs_(std::move(objs)), arity_bound_(arity_bound) {
    for (const auto& o : objs_) {
        for (const auto& other : objs_)
            if (&o != &other && o.name == other.name)
                throw TypeMismatchError("chu: duplicate object name " + o.name);
        if (o.pairing.source != Context{o.plus, o.minus} || !o.pairing.target.empty())
            throw TypeMismatchError("chu: pairing of " + o.name + " has wrong boundary");
        auto vals = bot_->value_at({o.plus, o.minus}, {});
        if (std::find(vals.begin(), vals.end(), o.pairing) == vals.end())
            throw TypeMismatchError("chu: pairing of " + o.name + " is not a bot element");
    }
}

ChuObject ChuPolycategory::triple(const ObjectId& name) const {
    for (const auto& o : objs_) {
        if (o.name != name.name) continue;
        if (!name.bar) return o;
        Permutation swap;
        swap.map = {1, 0};
        return ChuObject{o.name, o.minus, o.plus,
                         bot_->permute(o.pairing, swap, Permutation::identity(0))};
    }
    throw TypeMismatchError("chu: unknown object " + name.render());
}

std::vector<ObjectId> ChuPolycategory::objects() const {
    std::vector<ObjectId> out;
    for (const auto& o : objs_) out.push_back(ObjectId{o.name});
    for (const auto& o : objs_) out.push_back(ObjectId{o.name, true});
    return out;
}

Context ChuPolycategory::carrier_context(const Context& source, const Context& target) const {
    Context ctx;
    for (const auto& a : source) ctx.push_back(triple(a).plus);
    for (const auto& b : target) ctx.push_back(triple(b).minus);
    return ctx;
}

PolyMorphism ChuPolycategory::paired_core(const Context& source, const Context& target,
                                          bool plus_side, std::size_t slot,
                                          const PolyMorphism& part) const {
    const std::size_t m = source.size();
    Context ctx_all = carrier_context(source, target);
    // Position of the slot's carrier inside ctx_all, and the pairing
    // coordinate consumed by the action.
    std::size_t pos;
    PolyMorphism pairing;
    std::size_t pairing_pos;
    if (plus_side) {
        pos = m + slot;
        pairing = triple(target[slot]).pairing;
        pairing_pos = 0;  // consume the plus coordinate, producing at B_j+
    } else {
        pos = slot;
        pairing = triple(source[slot]).pairing;
        pairing_pos = 1;  // consume the minus coordinate, producing at A_i-
    }
    if (part.source != erased(ctx_all, pos) || part.target.size() != 1)
        throw TypeMismatchError("chu: component has wrong boundary");
    PolyMorphism composite = bot_->act_src(pairing, pairing_pos, part, 0);
    // Layout is (remaining pairing coordinate) ++ (ctx_all minus pos);
    // restore the canonical order.
    Permutation p;
    p.map.resize(ctx_all.size());
    for (std::size_t q = 0; q < ctx_all.size(); ++q)
        p.map[q] = (q == pos) ? 0 : 1 + (q < pos ? q : q - 1);
    return bot_->permute(composite, p, Permutation::identity(0));
}

PolyMorphism ChuPolycategory::make_morphism(const Context& source, const Context& target,
                                            ChuParts parts) const {
    const std::size_t m = source.size(), n = target.size();
    if (parts.plus_parts.size() != n || parts.minus_parts.size() != m)
        throw TypeMismatchError("chu: component family has wrong shape");
    Context ctx_all = carrier_context(source, target);
    if (parts.core.source != ctx_all || !parts.core.target.empty())
        throw TypeMismatchError("chu: core has wrong boundary");
    for (std::size_t j = 0; j < n; ++j) {
        if (parts.plus_parts[j].target != Context{triple(target[j]).plus})
            throw TypeMismatchError("chu: plus component has wrong codomain");
        if (!(paired_core(source, target, true, j, parts.plus_parts[j]) == parts.core))
            throw TypeMismatchError("chu: plus component incompatible with core");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (parts.minus_parts[i].target != Context{triple(source[i]).minus})
            throw TypeMismatchError("chu: minus component has wrong codomain");
        if (!(paired_core(source, target, false, i, parts.minus_parts[i]) == parts.core))
            throw TypeMismatchError("chu: minus component incompatible with core");
    }
    std::string key = family_key(parts);
    auto payload = std::make_shared<ChuParts>(std::move(parts));
    return {source, target, std::move(key), std::move(payload)};
}

const ChuParts& ChuPolycategory::parts(const PolyMorphism& f) {
    auto p = payload_as<ChuParts>(f);
    if (!p) throw TypeMismatchError("chu: morphism carries no component family");
    return *p;
}

std::vector<PolyMorphism> ChuPolycategory::hom(const Context& source, const Context& target) const {
    require_bound(source, target);
    const std::size_t m = source.size(), n = target.size();
    Context ctx_all = carrier_context(source, target);
    std::vector<PolyMorphism> cores = bot_->value_at(ctx_all, {});
    // Candidates for each component, grouped by the core they pair to.
    std::vector<std::map<std::string, std::vector<PolyMorphism>>> plus_by_core(n), minus_by_core(m);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& cand : e_->hom(erased(ctx_all, m + j), {triple(target[j]).plus}))
            plus_by_core[j][paired_core(source, target, true, j, cand).key].push_back(cand);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& cand : e_->hom(erased(ctx_all, i), {triple(source[i]).minus}))
            minus_by_core[i][paired_core(source, target, false, i, cand).key].push_back(cand);
    std::vector<PolyMorphism> out;
    for (const auto& core : cores) {
        std::vector<const std::vector<PolyMorphism>*> pools;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            auto it = plus_by_core[j].find(core.key);
            if (it == plus_by_core[j].end()) ok = false;
            else pools.push_back(&it->second);
        }
        for (std::size_t i = 0; i < m && ok; ++i) {
            auto it = minus_by_core[i].find(core.key);
            if (it == minus_by_core[i].end()) ok = false;
            else pools.push_back(&it->second);
        }
        if (!ok) continue;
        std::vector<std::size_t> pick(pools.size(), 0);
        while (true) {
            ChuParts parts;
            for (std::size_t j = 0; j < n; ++j) parts.plus_parts.push_back((*pools[j])[pick[j]]);
            for (std::size_t i = 0; i < m; ++i)
                parts.minus_parts.push_back((*pools[n + i])[pick[n + i]]);
            parts.core = core;
            out.push_back(make_morphism(source, target, std::move(parts)));
            std::size_t d = pools.size();
            while (d > 0 && ++pick[d - 1] == pools[d - 1]->size()) pick[--d] = 0;
            if (d == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolyMorphism ChuPolycategory::identity(const ObjectId& a) const {
    ChuObject o = triple(a);
    ChuParts parts;
    parts.plus_parts.push_back(e_->identity(o.plus));
    parts.minus_parts.push_back(e_->identity(o.minus));
    parts.core = o.pairing;
    return make_morphism({a}, {a}, std::move(parts));
}

PolyMorphism ChuPolycategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                         const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    const ChuParts& fp = parts(f);
    const ChuParts& gp = parts(g);
    const std::size_t m = f.source.size(), n = f.target.size();
    const std::size_t p = g.source.size(), q = g.target.size();
    const std::size_t i0 = f_src_pos, j0 = g_tgt_pos;
    Context h_src = concat(erased(f.source, i0), g.source);
    Context h_tgt = concat(f.target, erased(g.target, j0));
    const std::size_t hm = h_src.size(), hn = h_tgt.size();

    // Provenance tags: blocks 0/1 are f's source/target slots, 2/3 g's.
    auto part_tags = [](std::size_t srcs, std::size_t tgts, int base, int omit_side,
                        std::size_t omit) {
        std::vector<Tag> tags;
        for (std::size_t i = 0; i < srcs; ++i)
            if (!(omit_side == 0 && i == omit)) tags.emplace_back(base, i);
        for (std::size_t j = 0; j < tgts; ++j)
            if (!(omit_side == 1 && j == omit)) tags.emplace_back(base + 1, j);
        return tags;
    };
    auto h_src_tag = [&](std::size_t s) -> Tag {
        return s < m - 1 ? Tag{0, s < i0 ? s : s + 1} : Tag{2, s - (m - 1)};
    };
    auto h_tgt_tag = [&](std::size_t t) -> Tag {
        return t < n ? Tag{1, t} : Tag{3, t - n < j0 ? t - n : t - n + 1};
    };
    auto h_part_tags = [&](int omit_side, std::size_t omit) {
        std::vector<Tag> tags;
        for (std::size_t s = 0; s < hm; ++s)
            if (!(omit_side == 0 && s == omit)) tags.push_back(h_src_tag(s));
        for (std::size_t t = 0; t < hn; ++t)
            if (!(omit_side == 1 && t == omit)) tags.push_back(h_tgt_tag(t));
        return tags;
    };
    auto erased_tags = [](std::vector<Tag> tags, std::size_t pos) {
        tags.erase(tags.begin() + static_cast<std::ptrdiff_t>(pos));
        return tags;
    };
    auto cat_tags = [](std::vector<Tag> a, const std::vector<Tag>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    // Compose outer's component with inner's at the cut, then restore the
    // canonical slot order of the composite's component.
    auto splice = [&](const PolyMorphism& outer, std::vector<Tag> outer_tags, std::size_t cut_pos,
                      const PolyMorphism& inner, const std::vector<Tag>& inner_tags,
                      int omit_side, std::size_t omit) {
        PolyMorphism comp = e_->compose_at(outer, cut_pos, inner, 0);
        auto current = cat_tags(erased_tags(std::move(outer_tags), cut_pos), inner_tags);
        Permutation perm = perm_matching(h_part_tags(omit_side, omit), current);
        return e_->permute(comp, perm, Permutation::identity(1));
    };

    const auto g_plus_tags = part_tags(p, q, 2, 1, j0);   // inputs of gp.plus_parts[j0]
    const auto f_minus_tags = part_tags(m, n, 0, 0, i0);  // inputs of fp.minus_parts[i0]

    ChuParts hp;
    for (std::size_t t = 0; t < hn; ++t) {
        if (t < n) {
            // Target owned by f: route g's component for the cut into f's.
            hp.plus_parts.push_back(splice(fp.plus_parts[t], part_tags(m, n, 0, 1, t), i0,
                                           gp.plus_parts[j0], g_plus_tags, 1, t));
        } else {
            const std::size_t l = t - n < j0 ? t - n : t - n + 1;
            const std::size_t cut = p + (j0 < l ? j0 : j0 - 1);
            hp.plus_parts.push_back(splice(gp.plus_parts[l], part_tags(p, q, 2, 1, l), cut,
                                           fp.minus_parts[i0], f_minus_tags, 1, t));
        }
    }
    for (std::size_t s = 0; s < hm; ++s) {
        if (s < m - 1) {
            const std::size_t i = s < i0 ? s : s + 1;
            const std::size_t cut = i0 < i ? i0 : i0 - 1;
            hp.minus_parts.push_back(splice(fp.minus_parts[i], part_tags(m, n, 0, 0, i), cut,
                                            gp.plus_parts[j0], g_plus_tags, 0, s));
        } else {
            const std::size_t k = s - (m - 1);
            const std::size_t cut = (p - 1) + j0;
            hp.minus_parts.push_back(splice(gp.minus_parts[k], part_tags(p, q, 2, 0, k), cut,
                                            fp.minus_parts[i0], f_minus_tags, 0, s));
        }
    }
    {
        PolyMorphism comp = bot_->act_src(fp.core, i0, gp.plus_parts[j0], 0);
        auto current = cat_tags(erased_tags(part_tags(m, n, 0, -1, 0), i0), g_plus_tags);
        Permutation perm = perm_matching(h_part_tags(-1, 0), current);
        hp.core = bot_->permute(comp, perm, Permutation::identity(0));
    }
    return make_morphism(h_src, h_tgt, std::move(hp));
}

PolyMorphism ChuPolycategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                      const Permutation& tgt_perm) const {
    const ChuParts& fp = parts(f);
    const std::size_t m = f.source.size(), n = f.target.size();
    if (src_perm.size() != m || tgt_perm.size() != n)
        throw TypeMismatchError("chu: permutation size mismatch");
    Context h_src = apply(src_perm, f.source);
    Context h_tgt = apply(tgt_perm, f.target);
    // Old slot tags of a component's inputs vs the new canonical order.
    auto old_tags = [&](int omit_side, std::size_t omit_old) {
        std::vector<Tag> tags;
        for (std::size_t i = 0; i < m; ++i)
            if (!(omit_side == 0 && i == omit_old)) tags.emplace_back(0, i);
        for (std::size_t j = 0; j < n; ++j)
            if (!(omit_side == 1 && j == omit_old)) tags.emplace_back(1, j);
        return tags;
    };
    auto new_tags = [&](int omit_side, std::size_t omit_new) {
        std::vector<Tag> tags;
        for (std::size_t s = 0; s < m; ++s)
            if (!(omit_side == 0 && s == omit_new)) tags.emplace_back(0, src_perm.map[s]);
        for (std::size_t t = 0; t < n; ++t)
            if (!(omit_side == 1 && t == omit_new)) tags.emplace_back(1, tgt_perm.map[t]);
        return tags;
    };
    ChuParts hp;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t oj = tgt_perm.map[j];
        Permutation perm = perm_matching(new_tags(1, j), old_tags(1, oj));
        hp.plus_parts.push_back(
            e_->permute(fp.plus_parts[oj], perm, Permutation::identity(1)));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t oi = src_perm.map[i];
        Permutation perm = perm_matching(new_tags(0, i), old_tags(0, oi));
        hp.minus_parts.push_back(
            e_->permute(fp.minus_parts[oi], perm, Permutation::identity(1)));
    }
    Permutation core_perm = perm_matching(new_tags(-1, 0), old_tags(-1, 0));
    hp.core = bot_->permute(fp.core, core_perm, Permutation::identity(0));
    return make_morphism(h_src, h_tgt, std::move(hp));
}

// --- Chu over a *-polycategory ---

namespace {

struct DualityPair {
    PolyMorphism eps;  // in P(A, ~A; )
    PolyMorphism eta;  // in P(; ~A, A)
};

DualityPair duality_pair(const Polycategory& p, const ObjectId& a) {
    auto d = p.dual(a);
    if (!d) throw NotStarAutonomous("object " + a.render() + " has no dual");
    for (const auto& e : p.hom({a, *d}, {}))
        for (const auto& h : p.hom({}, {*d, a})) {
            // Both snake composites must be identities.
            PolyMorphism z1 = p.compose_at(e, 0, h, 1);
            if (!(z1 == p.identity(*d))) continue;
            PolyMorphism z2 = p.compose_at(e, 1, h, 0);
            if (!(z2 == p.identity(a))) continue;
            return {e, h};
        }
    throw NotStarAutonomous("no duality data for " + a.render());
}

}  // namespace

std::pair<PolyMorphism, PolyMorphism> duality_morphisms(const Polycategory& p, const ObjectId& a) {
    DualityPair dp = duality_pair(p, a);
    return {dp.eps, dp.eta};
}

ChuObject chu_embed_object(const Polycategory& p, const ObjectId& a) {
    DualityPair dp = duality_pair(p, a);
    return ChuObject{a.bar ? "~" + a.name : a.name, a, dp.eps.source[1], dp.eps};
}

std::shared_ptr<ChuPolycategory> chu_over(std::shared_ptr<const Polycategory> p,
                                          std::size_t arity_bound) {
    std::vector<ChuObject> objs;
    for (const auto& o : p->objects())
        if (!o.bar) objs.push_back(chu_embed_object(*p, o));
    return std::make_shared<ChuPolycategory>(p, module_of(p), std::move(objs), arity_bound);
}

PolyMorphism chu_embed_morphism(const ChuPolycategory& chu, const PolyMorphism& f) {
    const Polycategory& p = chu.env();
    const std::size_t m = f.source.size(), n = f.target.size();
    // Transpose targets into the source by pairing with the counits,
    // optionally keeping one target and exporting one source slot.
    auto transpose = [&](int keep_tgt, int export_src) {
        PolyMorphism t = f;
        std::vector<Tag> src_tags, tgt_tags;
        for (std::size_t i = 0; i < m; ++i) src_tags.emplace_back(0, i);
        for (std::size_t j = 0; j < n; ++j) tgt_tags.emplace_back(1, j);
        for (std::size_t j = n; j-- > 0;) {
            if (static_cast<int>(j) == keep_tgt) continue;
            std::size_t pos = 0;
            while (tgt_tags[pos] != Tag{1, j}) ++pos;
            DualityPair dp = duality_pair(p, t.target[pos]);
            t = p.compose_at(dp.eps, 0, t, pos);
            // New source is (~B_j) ++ old source; target loses slot pos.
            src_tags.insert(src_tags.begin(), Tag{1, j});
            tgt_tags.erase(tgt_tags.begin() + static_cast<std::ptrdiff_t>(pos));
        }
        if (export_src >= 0) {
            std::size_t pos = 0;
            while (src_tags[pos] != Tag{0, static_cast<std::size_t>(export_src)}) ++pos;
            DualityPair dp = duality_pair(p, t.source[pos]);
            t = p.compose_at(t, pos, dp.eta, 1);
            tgt_tags.emplace_back(0, static_cast<std::size_t>(export_src));
            src_tags.erase(src_tags.begin() + static_cast<std::ptrdiff_t>(pos));
        }
        // Restore the canonical component order: sources then targets.
        std::vector<Tag> desired;
        for (std::size_t i = 0; i < m; ++i)
            if (static_cast<int>(i) != export_src) desired.emplace_back(0, i);
        for (std::size_t j = 0; j < n; ++j)
            if (static_cast<int>(j) != keep_tgt) desired.emplace_back(1, j);
        return p.permute(t, perm_matching(desired, src_tags),
                         Permutation::identity(tgt_tags.size()));
    };
    ChuParts parts;
    for (std::size_t j = 0; j < n; ++j) parts.plus_parts.push_back(transpose(static_cast<int>(j), -1));
    for (std::size_t i = 0; i < m; ++i) parts.minus_parts.push_back(transpose(-1, static_cast<int>(i)));
    parts.core = transpose(-1, -1);
    return chu.make_morphism(f.source, f.target, std::move(parts));
}

PolyMorphism chu_extract(const ChuPolycategory& chu, const PolyMorphism& f) {
    const ChuParts& fp = ChuPolycategory::parts(f);
    if (f.target.size() == 1) return fp.plus_parts[0];
    if (f.target.empty()) return fp.core;
    throw TypeMismatchError("chu: extraction needs a co-subunary morphism");
}

bool check_chu_triangle_extract(const ChuPolycategory& chu, std::size_t bound, std::string* why) {
    const Polycategory& p = chu.env();
    std::vector<ObjectId> obs = p.objects();
    for (const auto& o : obs) {
        if (!(chu.triple(o).plus == o)) {
            if (why) *why = "object " + o.render() + " does not round-trip";
            return false;
        }
    }
    for (const auto& [g, d] : enumerate_context_pairs(obs, bound)) {
        if (d.size() > 1) continue;
        std::vector<PolyMorphism> fs;
        try {
            fs = p.hom(g, d);
        } catch (const ArityBoundError&) {
            continue;
        }
        for (const auto& f : fs) {
            PolyMorphism back = chu_extract(chu, chu_embed_morphism(chu, f));
            if (!(back == f)) {
                if (why)
                    *why = "morphism " + f.key + " @ (" + render(g) + ";" + render(d) +
                           ") does not round-trip";
                return false;
            }
        }
    }
    return true;
}

bool check_chu_triangle_transpose(const ChuPolycategory& chu, std::size_t bound, std::string* why) {
    const Polycategory& p = chu.env();
    // The canonical duality counit of a Chu object: identities on the
    // components over the pairing.
    auto chu_eps = [&](const ObjectId& name) {
        ChuObject o = chu.triple(name);
        ChuParts parts;
        parts.minus_parts.push_back(p.identity(o.minus));
        parts.minus_parts.push_back(p.identity(o.plus));
        parts.core = o.pairing;
        return chu.make_morphism({name, name.dualized()}, {}, std::move(parts));
    };
    for (const auto& [g, d] : enumerate_context_pairs(chu.objects(), bound)) {
        if (d.empty()) continue;
        std::vector<PolyMorphism> hs;
        try {
            hs = chu.hom(g, d);
        } catch (const ArityBoundError&) {
            continue;
        } catch (const NotStarAutonomous&) {
            continue;
        }
        const std::size_t m = g.size(), n = d.size();
        for (const auto& h : hs) {
            for (std::size_t j = 0; j < n; ++j) {
                // Pair away every target but the j-th, largest first, so
                // the imported duals stack in ascending order.
                PolyMorphism t = h;
                for (std::size_t k = n; k-- > 0;) {
                    if (k == j) continue;
                    // Removing largest-first keeps target k at position k.
                    t = chu.compose_at(chu_eps(d[k]), 0, t, k);
                }
                // After the loop t is in chu(~d\j ++ g ; d_j); its first
                // plus component should be h's j-th one up to the block swap.
                PolyMorphism got = chu_extract(chu, t);
                PolyMorphism want = p.permute(
                    ChuPolycategory::parts(h).plus_parts[j],
                    block_perm({m, n - 1}, {1, 0}), Permutation::identity(1));
                if (!(got == want)) {
                    if (why)
                        *why = "component " + std::to_string(j) + " of " + h.key + " @ (" +
                               render(g) + ";" + render(d) + ") is not its own transpose";
                    return false;
                }
            }
        }
    }
    return true;
}

// --- Finite-set Chu structure ---

PolyMorphism as_bot_element(const Module& bot, const Context& ctx, const std::string& key) {
    for (const auto& x : bot.value_at(ctx, {}))
        if (x.key == key) return x;
    throw TypeMismatchError("chu: no bot element with key " + key);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string lookup(const std::vector<std::string>& domain, const std::vector<std::string>& values,
                   const std::string& x) {
    auto it = std::lower_bound(domain.begin(), domain.end(), x);
    return values.at(static_cast<std::size_t>(it - domain.begin()));
}

}  // namespace

ChuWithStructural chu_tensor_finset(FinSetMulticategory& e, ModulePtr bot, const ObjectId& k,
                                    const ChuObject& a, const ChuObject& b) {
    const auto& ap = e.elements(a.plus);
    const auto& bp = e.elements(b.plus);
    const auto& am = e.elements(a.minus);
    const auto& bm = e.elements(b.minus);
    // The pairings as plain value tables; pairing keys are the value lists
    // of the carrier functions over (plus, minus) in lexicographic order.
    auto pair_a = split(a.pairing.key, ',');
    auto pair_b = split(b.pairing.key, ',');
    auto eval_a = [&](const std::string& x, const std::string& mv) {
        std::size_t xi = static_cast<std::size_t>(
            std::lower_bound(ap.begin(), ap.end(), x) - ap.begin());
        std::size_t mi = static_cast<std::size_t>(
            std::lower_bound(am.begin(), am.end(), mv) - am.begin());
        return pair_a.at(xi * am.size() + mi);
    };
    auto eval_b = [&](const std::string& y, const std::string& mv) {
        std::size_t yi = static_cast<std::size_t>(
            std::lower_bound(bp.begin(), bp.end(), y) - bp.begin());
        std::size_t mi = static_cast<std::size_t>(
            std::lower_bound(bm.begin(), bm.end(), mv) - bm.begin());
        return pair_b.at(yi * bm.size() + mi);
    };

    ObjectId tp = e.product(a.plus, b.plus);
    // The minus carrier: pairs (phi: A+ -> B-, psi: B+ -> A-) agreeing on
    // the induced pairings of A+ x B+.
    std::vector<std::string> tm_elems;
    for (const auto& phi : e.hom({a.plus}, {b.minus}))
        for (const auto& psi : e.hom({b.plus}, {a.minus})) {
            auto phi_v = split(phi.key, ',');
            auto psi_v = split(psi.key, ',');
            bool ok = true;
            for (const auto& x : ap)
                for (const auto& y : bp)
                    if (eval_b(y, lookup(ap, phi_v, x)) != eval_a(x, lookup(bp, psi_v, y))) {
                        ok = false;
                    }
            if (ok) tm_elems.push_back(phi.key + "/" + psi.key);
        }
    ObjectId tm = e.add_set("P(" + a.name + "," + b.name + ")", std::move(tm_elems));

    auto decode = [&](const std::string& pair_elem) {
        auto halves = split(pair_elem, '/');
        return std::make_pair(split(halves[0], ','), split(halves[1], ','));
    };
    // rho((x|y), (phi/psi)) = <x, psi(y)>_A.
    std::vector<std::string> rho_values;
    for (const auto& t : e.tuples({tp, tm})) {
        auto xy = split(t[0], '|');
        auto [phi_v, psi_v] = decode(t[1]);
        rho_values.push_back(eval_a(xy[0], lookup(bp, psi_v, xy[1])));
    }
    PolyMorphism rho = e.function({tp, tm}, k, std::move(rho_values));
    ChuObject tensor{"(" + a.name + "*" + b.name + ")", tp, tm,
                     as_bot_element(*bot, {tp, tm}, rho.key)};

    // Structural morphism (A, B) -> T.
    ChuParts structural;
    {
        std::vector<std::string> vals;
        for (const auto& t : e.tuples({a.plus, b.plus})) vals.push_back(t[0] + "|" + t[1]);
        structural.plus_parts.push_back(e.function({a.plus, b.plus}, tp, std::move(vals)));
    }
    {
        // (B+, T-) -> A-: project psi.
        std::vector<std::string> vals;
        for (const auto& t : e.tuples({b.plus, tm})) {
            auto [phi_v, psi_v] = decode(t[1]);
            vals.push_back(lookup(bp, psi_v, t[0]));
        }
        structural.minus_parts.push_back(e.function({b.plus, tm}, a.minus, std::move(vals)));
        // (A+, T-) -> B-: project phi.
        std::vector<std::string> vals2;
        for (const auto& t : e.tuples({a.plus, tm})) {
            auto [phi_v, psi_v] = decode(t[1]);
            (void)psi_v;
            vals2.push_back(lookup(ap, phi_v, t[0]));
        }
        structural.minus_parts.push_back(e.function({a.plus, tm}, b.minus, std::move(vals2)));
    }
    {
        std::vector<std::string> vals;
        for (const auto& t : e.tuples({a.plus, b.plus, tm})) {
            auto [phi_v, psi_v] = decode(t[2]);
            vals.push_back(eval_a(t[0], lookup(bp, psi_v, t[1])));
        }
        PolyMorphism core_fn = e.function({a.plus, b.plus, tm}, k, std::move(vals));
        structural.core = as_bot_element(*bot, {a.plus, b.plus, tm}, core_fn.key);
    }
    return {tensor, structural};
}

ChuWithStructural chu_unit_finset(FinSetMulticategory& e, ModulePtr bot, const ObjectId& k) {
    ObjectId one = e.add_set("I", {"*"});
    // ell(*, v) = v.
    PolyMorphism ell = e.function({one, k}, k, e.elements(k));
    ChuObject unit{"I", one, k, as_bot_element(*bot, {one, k}, ell.key)};
    ChuParts structural;
    structural.plus_parts.push_back(e.function({}, one, {"*"}));
    structural.core = as_bot_element(*bot, {k}, e.identity(k).key);
    return {unit, structural};
}

}  // namespace polycat
