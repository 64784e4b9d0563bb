#include "polycat/module.hpp"

#include <algorithm>

#include "polycat/align.hpp"
#include "polycat/errors.hpp"

namespace polycat {

namespace {

constexpr std::size_t kIdSlot = static_cast<std::size_t>(-1);

std::vector<Tag> erased_tag(const std::vector<Tag>& v, std::size_t pos) {
    std::vector<Tag> r = v;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
    return r;
}

std::size_t find_tag(const std::vector<Tag>& v, const Tag& t) {
    auto it = std::find(v.begin(), v.end(), t);
    if (it == v.end()) throw std::logic_error("module morphism: slot tag lost");
    return static_cast<std::size_t>(it - v.begin());
}

class PolycatModule final : public Module {
public:
    explicit PolycatModule(std::shared_ptr<const Polycategory> p) : p_(std::move(p)) {}

    const Polycategory& base() const override { return *p_; }
    std::string name() const override { return "P"; }

    std::vector<PolyMorphism> value_at(const Context& gamma, const Context& delta) const override {
        return p_->hom(gamma, delta);
    }

    PolyMorphism act_src(const PolyMorphism& x, std::size_t i, const PolyMorphism& f,
                         std::size_t j) const override {
        return p_->compose_at(x, i, f, j);
    }

    PolyMorphism act_tgt(const PolyMorphism& x, std::size_t k, const PolyMorphism& g,
                         std::size_t i) const override {
        PolyMorphism h = p_->compose_at(g, i, x, k);
        // compose_at lays out (g.src\i, x.src ; g.tgt, x.tgt\k); the module
        // convention keeps x's blocks first
        Permutation ps = block_perm({g.source.size() - 1, x.source.size()}, {1, 0});
        Permutation pt = block_perm({g.target.size(), x.target.size() - 1}, {1, 0});
        return p_->permute(h, ps, pt);
    }

    PolyMorphism permute(const PolyMorphism& x, const Permutation& sp,
                         const Permutation& tp) const override {
        return p_->permute(x, sp, tp);
    }

private:
    std::shared_ptr<const Polycategory> p_;
};

class ShiftModule final : public Module {
public:
    ShiftModule(ModulePtr inner, Context pi, Context sigma)
        : inner_(std::move(inner)), pi_(std::move(pi)), sigma_(std::move(sigma)) {}

    const Polycategory& base() const override { return inner_->base(); }
    std::string name() const override {
        return inner_->name() + "[" + render(pi_) + ";" + render(sigma_) + "]";
    }

    std::vector<PolyMorphism> value_at(const Context& gamma, const Context& delta) const override {
        std::vector<PolyMorphism> out;
        for (auto& m : inner_->value_at(concat(gamma, pi_), concat(delta, sigma_)))
            out.push_back(relabel(std::move(m), gamma, delta));
        return out;
    }

    PolyMorphism act_src(const PolyMorphism& x, std::size_t i, const PolyMorphism& f,
                         std::size_t j) const override {
        if (i >= x.source.size()) throw OccurrenceOutOfRange("module action out of range");
        PolyMorphism y = inner_->act_src(unwrap(x), i, f, j);
        // (gamma\i, pi, f.src ; delta, sigma, f.tgt\j) -> blocks (0,2,1)
        Permutation ps = block_perm({x.source.size() - 1, pi_.size(), f.source.size()}, {0, 2, 1});
        Permutation pt = block_perm({x.target.size(), sigma_.size(), f.target.size() - 1}, {0, 2, 1});
        PolyMorphism z = inner_->permute(y, ps, pt);
        return relabel(std::move(z), concat(erased(x.source, i), f.source),
                       concat(x.target, erased(f.target, j)));
    }

    PolyMorphism act_tgt(const PolyMorphism& x, std::size_t k, const PolyMorphism& g,
                         std::size_t i) const override {
        if (k >= x.target.size()) throw OccurrenceOutOfRange("module action out of range");
        PolyMorphism y = inner_->act_tgt(unwrap(x), k, g, i);
        // (gamma, pi, g.src\i ; delta\k, sigma, g.tgt) -> blocks (0,2,1)
        Permutation ps = block_perm({x.source.size(), pi_.size(), g.source.size() - 1}, {0, 2, 1});
        Permutation pt = block_perm({x.target.size() - 1, sigma_.size(), g.target.size()}, {0, 2, 1});
        PolyMorphism z = inner_->permute(y, ps, pt);
        return relabel(std::move(z), concat(x.source, erased(g.source, i)),
                       concat(erased(x.target, k), g.target));
    }

    PolyMorphism permute(const PolyMorphism& x, const Permutation& sp,
                         const Permutation& tp) const override {
        Permutation esp = sp, etp = tp;
        for (std::size_t q = 0; q < pi_.size(); ++q) esp.map.push_back(sp.size() + q);
        for (std::size_t q = 0; q < sigma_.size(); ++q) etp.map.push_back(tp.size() + q);
        PolyMorphism z = inner_->permute(unwrap(x), esp, etp);
        return relabel(std::move(z), apply(sp, x.source), apply(tp, x.target));
    }

    const ModulePtr& inner() const { return inner_; }
    const Context& pi() const { return pi_; }
    const Context& sigma() const { return sigma_; }

private:
    PolyMorphism relabel(PolyMorphism inner_elem, Context gamma, Context delta) const {
        std::string key = inner_elem.key;
        return PolyMorphism{std::move(gamma), std::move(delta), std::move(key),
                            std::make_shared<const PolyMorphism>(std::move(inner_elem))};
    }

    PolyMorphism unwrap(const PolyMorphism& x) const {
        auto p = payload_as<PolyMorphism>(x);
        if (!p) throw TypeMismatchError("element does not belong to this shifted module");
        return *p;
    }

    ModulePtr inner_;
    Context pi_, sigma_;
};

class TerminalModule final : public Module {
public:
    explicit TerminalModule(std::shared_ptr<const Polycategory> p) : p_(std::move(p)) {}

    const Polycategory& base() const override { return *p_; }
    std::string name() const override { return "1"; }

    std::vector<PolyMorphism> value_at(const Context& gamma, const Context& delta) const override {
        return {token(gamma, delta)};
    }

    PolyMorphism act_src(const PolyMorphism& x, std::size_t i, const PolyMorphism& f,
                         std::size_t j) const override {
        return token(concat(erased(x.source, i), f.source), concat(x.target, erased(f.target, j)));
    }

    PolyMorphism act_tgt(const PolyMorphism& x, std::size_t k, const PolyMorphism& g,
                         std::size_t i) const override {
        return token(concat(x.source, erased(g.source, i)), concat(erased(x.target, k), g.target));
    }

    PolyMorphism permute(const PolyMorphism& x, const Permutation& sp,
                         const Permutation& tp) const override {
        return token(apply(sp, x.source), apply(tp, x.target));
    }

private:
    static PolyMorphism token(Context gamma, Context delta) {
        return PolyMorphism{std::move(gamma), std::move(delta), "*", nullptr};
    }

    std::shared_ptr<const Polycategory> p_;
};

PolyMorphism underlying_arg(const PolyMorphism& x) {
    auto p = payload_as<PolyMorphism>(x);
    if (!p) throw TypeMismatchError("argument is not a representable element");
    return *p;
}

}  // namespace

ModulePtr module_of(std::shared_ptr<const Polycategory> p) {
    return std::make_shared<PolycatModule>(std::move(p));
}

ModulePtr shift(ModulePtr inner, Context pi, Context sigma) {
    // flatten so that U[pi;sigma][pi';sigma'] = U[pi,pi';sigma,sigma']
    if (auto s = std::dynamic_pointer_cast<const ShiftModule>(inner))
        return std::make_shared<ShiftModule>(s->inner(), concat(s->pi(), pi),
                                             concat(s->sigma(), sigma));
    return std::make_shared<ShiftModule>(std::move(inner), std::move(pi), std::move(sigma));
}

ModulePtr covariant_rep(std::shared_ptr<const Polycategory> p, const ObjectId& a) {
    return shift(module_of(std::move(p)), {}, {a});
}

ModulePtr contravariant_rep(std::shared_ptr<const Polycategory> p, const ObjectId& a) {
    return shift(module_of(std::move(p)), {a}, {});
}

ModulePtr terminal_module(std::shared_ptr<const Polycategory> p) {
    return std::make_shared<TerminalModule>(std::move(p));
}

ModulePtr rep_module(std::shared_ptr<const Polycategory> p, const RepSource& s) {
    return s.covariant ? covariant_rep(std::move(p), s.object)
                       : contravariant_rep(std::move(p), s.object);
}

ModuleMorphism::ModuleMorphism(std::vector<RepSource> sources, ModulePtr target, PolyMorphism seed)
    : sources_(std::move(sources)), target_(std::move(target)), seed_(std::move(seed)) {
    Context gs, ds;
    for (const auto& s : sources_) (s.covariant ? gs : ds).push_back(s.object);
    if (!(seed_.source == gs && seed_.target == ds))
        throw TypeMismatchError("module morphism seed has boundary (" + render(seed_.source) +
                                ";" + render(seed_.target) + "), expected (" + render(gs) + ";" +
                                render(ds) + ")");
}

PolyMorphism ModuleMorphism::apply(const std::vector<PolyMorphism>& args) const {
    std::vector<std::size_t> order(sources_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return apply(args, order);
}

PolyMorphism ModuleMorphism::apply(const std::vector<PolyMorphism>& args,
                                   const std::vector<std::size_t>& order) const {
    if (args.size() != sources_.size())
        throw TypeMismatchError("module morphism arity mismatch");

    std::vector<Tag> src_tags, tgt_tags;
    for (std::size_t i = 0; i < sources_.size(); ++i)
        (sources_[i].covariant ? src_tags : tgt_tags).push_back({static_cast<int>(i), kIdSlot});

    PolyMorphism e = seed_;
    for (std::size_t i : order) {
        const PolyMorphism m = underlying_arg(args[i]);
        const int b = static_cast<int>(i);
        const std::size_t ng = args[i].source.size(), nd = args[i].target.size();
        if (sources_[i].covariant) {
            // m in P(gamma_i ; delta_i, A_i)
            std::size_t p = find_tag(src_tags, {b, kIdSlot});
            e = target_->act_src(e, p, m, m.target.size() - 1);
            src_tags = erased_tag(src_tags, p);
            for (std::size_t q = 0; q < ng; ++q) src_tags.push_back({b, q});
            for (std::size_t q = 0; q < nd; ++q) tgt_tags.push_back({b, q});
        } else {
            // m in P(gamma_i, A_i ; delta_i)
            std::size_t p = find_tag(tgt_tags, {b, kIdSlot});
            e = target_->act_tgt(e, p, m, m.source.size() - 1);
            tgt_tags = erased_tag(tgt_tags, p);
            for (std::size_t q = 0; q < ng; ++q) src_tags.push_back({b, q});
            for (std::size_t q = 0; q < nd; ++q) tgt_tags.push_back({b, q});
        }
    }

    std::vector<Tag> want_src, want_tgt;
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        for (std::size_t q = 0; q < args[i].source.size(); ++q)
            want_src.push_back({static_cast<int>(i), q});
        for (std::size_t q = 0; q < args[i].target.size(); ++q)
            want_tgt.push_back({static_cast<int>(i), q});
    }
    return target_->permute(e, perm_matching(want_src, src_tags),
                            perm_matching(want_tgt, tgt_tags));
}

PolyMorphism yoneda_forward(const ModuleMorphism& phi) {
    if (phi.sources().size() != 1)
        throw TypeMismatchError("yoneda_forward expects a unary morphism");
    return phi.seed();
}

ModuleMorphism yoneda_backward(const RepSource& source, ModulePtr target, PolyMorphism x) {
    return ModuleMorphism({source}, std::move(target), std::move(x));
}

ValueSet internal_hom_value(const RepSource& u, ModulePtr v, const Context& gamma,
                            const Context& delta) {
    if (u.covariant) return {v->value_at(concat(gamma, {u.object}), delta), false};
    return {v->value_at(gamma, concat(delta, {u.object})), false};
}

std::vector<ModuleMorphism> enumerate_module_morphisms(const std::vector<RepSource>& sources,
                                                       ModulePtr target, std::size_t bound,
                                                       std::size_t naturality_samples) {
    Context gs, ds;
    for (const auto& s : sources) (s.covariant ? gs : ds).push_back(s.object);

    const Polycategory& p = target->base();
    auto p_shared = std::shared_ptr<const Polycategory>(&p, [](const Polycategory*) {});

    // candidate argument lists per source slot, bounded
    std::vector<std::vector<PolyMorphism>> choices;
    for (const auto& s : sources) {
        ModulePtr rep = rep_module(p_shared, s);
        std::vector<PolyMorphism> elems;
        for (const auto& [g, d] : enumerate_context_pairs(p.objects(), bound)) {
            if (g.size() + 1 > p.arity_bound() || d.size() + 1 > p.arity_bound()) continue;
            for (auto& e : rep->value_at(g, d)) elems.push_back(std::move(e));
        }
        choices.push_back(std::move(elems));
    }

    std::vector<ModuleMorphism> out;
    for (const auto& seed : target->value_at(gs, ds)) {
        ModuleMorphism phi(sources, target, seed);
        // independent naturality pass: evaluate each bounded tuple along
        // two different action orders and require membership agreement
        bool ok = true;
        std::size_t budget = naturality_samples;
        std::vector<std::size_t> idx(sources.size(), 0);
        std::vector<std::size_t> fwd(sources.size()), rev(sources.size());
        for (std::size_t i = 0; i < sources.size(); ++i) {
            fwd[i] = i;
            rev[i] = sources.size() - 1 - i;
        }
        bool done = sources.empty();
        for (const auto& c : choices) done = done || c.empty();
        while (!done && budget-- > 0 && ok) {
            std::vector<PolyMorphism> args;
            for (std::size_t i = 0; i < sources.size(); ++i) args.push_back(choices[i][idx[i]]);
            try {
                PolyMorphism r1 = phi.apply(args, fwd);
                PolyMorphism r2 = phi.apply(args, rev);
                if (!(r1 == r2)) ok = false;
                // membership is only decidable inside the tabulated fragment;
                // composites beyond it are skipped like arity overflows
                if (ok && p.in_fragment(r1)) {
                    bool member = false;
                    for (const auto& v : target->value_at(r1.source, r1.target))
                        member |= (v == r1);
                    ok = member;
                }
            } catch (const ArityBoundError&) {
                // tuple exceeds what the base can answer; skip
            } catch (const std::exception&) {
                ok = false;
            }
            // advance the tuple index
            std::size_t i = 0;
            while (i < sources.size()) {
                if (++idx[i] < choices[i].size()) break;
                idx[i] = 0;
                ++i;
            }
            done = (i == sources.size());
        }
        if (ok) out.push_back(std::move(phi));
    }
    return out;
}

bool check_pj_module(const Module& u, const std::vector<ProductWitness>& j, std::size_t bound,
                     std::string* why) {
    const Polycategory& p = u.base();
    auto note = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    auto bijective = [&](const std::vector<PolyMorphism>& lhs,
                         const std::vector<PolyMorphism>& rhs,
                         auto&& map, const std::string& where) {
        std::vector<PolyMorphism> image;
        for (const auto& x : lhs) image.push_back(map(x));
        for (std::size_t a = 0; a < image.size(); ++a) {
            bool member = false;
            for (const auto& r : rhs) member |= (r == image[a]);
            if (!member) return note("image escapes the codomain at " + where);
            for (std::size_t b = a + 1; b < image.size(); ++b)
                if (image[a] == image[b]) return note("induced map not injective at " + where);
        }
        if (image.size() != rhs.size())
            return note("cardinalities " + std::to_string(lhs.size()) + " vs " +
                        std::to_string(rhs.size()) + " at " + where);
        return true;
    };

    for (const auto& w : j) {
        if (w.kind == ProductWitness::Kind::Hom) continue;
        for (const auto& [gamma, delta] : enumerate_context_pairs(p.objects(), bound)) {
            const std::string where = w.carrier.render() + " @ (" + render(gamma) + ";" +
                                      render(delta) + ")";
            std::size_t extra = std::max<std::size_t>(w.operands.size(), 1);
            if (gamma.size() + extra > p.arity_bound() || delta.size() + extra > p.arity_bound())
                continue;
            bool ok = true;
            try {
            switch (w.kind) {
                case ProductWitness::Kind::Tensor:
                    ok = bijective(u.value_at(concat(gamma, {w.carrier}), delta),
                                   u.value_at(concat(gamma, w.operands), delta),
                                   [&](const PolyMorphism& x) {
                                       return u.act_src(x, gamma.size(), w.structural, 0);
                                   },
                                   where);
                    break;
                case ProductWitness::Kind::Cotensor:
                    ok = bijective(u.value_at(gamma, concat(delta, {w.carrier})),
                                   u.value_at(gamma, concat(delta, w.operands)),
                                   [&](const PolyMorphism& x) {
                                       return u.act_tgt(x, delta.size(), w.structural, 0);
                                   },
                                   where);
                    break;
                case ProductWitness::Kind::Unit:
                    ok = bijective(u.value_at(concat(gamma, {w.carrier}), delta),
                                   u.value_at(gamma, delta),
                                   [&](const PolyMorphism& x) {
                                       return u.act_src(x, gamma.size(), w.structural, 0);
                                   },
                                   where);
                    break;
                case ProductWitness::Kind::Counit:
                    ok = bijective(u.value_at(gamma, concat(delta, {w.carrier})),
                                   u.value_at(gamma, delta),
                                   [&](const PolyMorphism& x) {
                                       return u.act_tgt(x, delta.size(), w.structural, 0);
                                   },
                                   where);
                    break;
                case ProductWitness::Kind::Hom:
                    break;
            }
            } catch (const ArityBoundError&) {
                continue;  // a shifted module can overrun the base bound
            }
            if (!ok) return false;
        }
    }
    return true;
}

bool check_pjk_module(const Module& u, const std::vector<Cone>& k, std::size_t bound,
                      std::string* why, bool counary_support) {
    const Polycategory& p = u.base();
    auto note = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };

    for (const auto& cone : k) {
        if (cone.legs.size() != cone.diagram.size())
            throw TypeMismatchError("cone leg/diagram size mismatch");
        for (const auto& [gamma, delta] : enumerate_context_pairs(p.objects(), bound)) {
            if (gamma.size() + 1 > p.arity_bound() || delta.size() + 1 > p.arity_bound()) continue;
            if (counary_support && cone.is_limit && !delta.empty()) continue;
            if (counary_support && !cone.is_limit && delta.size() != 1) continue;
            const std::string where = (cone.is_limit ? "lim->" : "colim->") + cone.apex.render() +
                                      " @ (" + render(gamma) + ";" + render(delta) + ")";

            std::vector<PolyMorphism> lhs;
            try {
                lhs = cone.is_limit ? u.value_at(gamma, concat(delta, {cone.apex}))
                                    : u.value_at(concat(gamma, {cone.apex}), delta);
            } catch (const ArityBoundError&) {
                continue;
            }
            // images under the legs, one tuple per element of lhs
            std::vector<std::vector<PolyMorphism>> tuples;
            for (const auto& x : lhs) {
                std::vector<PolyMorphism> t;
                for (std::size_t i = 0; i < cone.legs.size(); ++i)
                    t.push_back(cone.is_limit ? u.act_tgt(x, delta.size(), cone.legs[i], 0)
                                              : u.act_src(x, gamma.size(), cone.legs[i], 0));
                tuples.push_back(std::move(t));
            }
            // the (discrete-diagram) limit of sets is the product
            std::size_t expected = 1;
            for (std::size_t i = 0; i < cone.diagram.size(); ++i) {
                std::size_t n = (cone.is_limit
                                     ? u.value_at(gamma, concat(delta, {cone.diagram[i]}))
                                     : u.value_at(concat(gamma, {cone.diagram[i]}), delta))
                                    .size();
                expected *= n;
            }
            for (std::size_t a = 0; a < tuples.size(); ++a)
                for (std::size_t b = a + 1; b < tuples.size(); ++b)
                    if (tuples[a] == tuples[b])
                        return note("legs do not separate elements at " + where);
            if (tuples.size() != expected)
                return note("value has " + std::to_string(tuples.size()) + " elements, limit has " +
                            std::to_string(expected) + " at " + where);
        }
    }
    return true;
}

}  // namespace polycat
