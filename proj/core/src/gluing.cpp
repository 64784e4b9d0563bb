#include "polycat/gluing.hpp"

#include <algorithm>
#include <map>

#include "polycat/align.hpp"

namespace polycat {

namespace {

std::size_t tag_index(const std::vector<Tag>& tags, const Tag& t) {
    for (std::size_t i = 0; i < tags.size(); ++i)
        if (tags[i] == t) return i;
    throw std::logic_error("tag not found");
}

bool member(const std::vector<PolyMorphism>& hs, const PolyMorphism& f) {
    return std::find(hs.begin(), hs.end(), f) != hs.end();
}

}  // namespace

PolyMorphism precompose_all(const Polycategory& e, const PolyMorphism& outer,
                            const std::vector<PolyMorphism>& legs) {
    if (legs.size() != outer.source.size())
        throw TypeMismatchError("precompose_all: leg count mismatch");
    PolyMorphism t = outer;
    std::vector<Tag> current;
    for (std::size_t s = 0; s < legs.size(); ++s) current.emplace_back(0, s);
    for (std::size_t s = 0; s < legs.size(); ++s) {
        std::size_t pos = tag_index(current, Tag{0, s});
        t = e.compose_at(t, pos, legs[s], 0);
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(pos));
        current.emplace_back(1, s);
    }
    std::vector<Tag> desired;
    for (std::size_t s = 0; s < legs.size(); ++s) desired.emplace_back(1, s);
    return e.permute(t, perm_matching(desired, current),
                     Permutation::identity(t.target.size()));
}

PolyMorphism postcompose_all(const Polycategory& e, const PolyMorphism& inner,
                             const std::vector<PolyMorphism>& legs) {
    if (legs.size() != inner.target.size())
        throw TypeMismatchError("postcompose_all: leg count mismatch");
    PolyMorphism t = inner;
    std::vector<Tag> current;
    for (std::size_t s = 0; s < legs.size(); ++s) current.emplace_back(0, s);
    for (std::size_t s = 0; s < legs.size(); ++s) {
        std::size_t pos = tag_index(current, Tag{0, s});
        t = e.compose_at(legs[s], 0, t, pos);
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(pos));
        current.insert(current.begin(), Tag{1, s});
    }
    std::vector<Tag> desired;
    for (std::size_t s = 0; s < legs.size(); ++s) desired.emplace_back(1, s);
    return e.permute(t, Permutation::identity(t.source.size()),
                     perm_matching(desired, current));
}

PolyMorphism act_all(const Module& bot, const PolyMorphism& x,
                     const std::vector<PolyMorphism>& legs) {
    if (legs.size() != x.source.size() || !x.target.empty())
        throw TypeMismatchError("act_all: shape mismatch");
    PolyMorphism t = x;
    std::vector<Tag> current;
    for (std::size_t s = 0; s < legs.size(); ++s) current.emplace_back(0, s);
    for (std::size_t s = 0; s < legs.size(); ++s) {
        std::size_t pos = tag_index(current, Tag{0, s});
        t = bot.act_src(t, pos, legs[s], 0);
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(pos));
        current.emplace_back(1, s);
    }
    std::vector<Tag> desired;
    for (std::size_t s = 0; s < legs.size(); ++s) desired.emplace_back(1, s);
    return bot.permute(t, perm_matching(desired, current), Permutation::identity(0));
}

PolyDoubleCategory q_double(std::shared_ptr<const Polycategory> p) {
    auto is_vertical = [p](const PolyMorphism& u) {
        if (u.source.size() != 1 || u.target.size() != 1) return false;
        return member(p->hom(u.source, u.target), u);
    };
    auto is_two_cell = [p](const TwoCell& c) {
        const std::size_t m = c.top.source.size(), n = c.top.target.size();
        if (c.left.size() != m || c.right.size() != n) return false;
        if (c.bottom.source.size() != m || c.bottom.target.size() != n) return false;
        for (std::size_t i = 0; i < m; ++i)
            if (c.left[i].source != Context{c.top.source[i]} ||
                c.left[i].target != Context{c.bottom.source[i]})
                return false;
        for (std::size_t j = 0; j < n; ++j)
            if (c.right[j].source != Context{c.top.target[j]} ||
                c.right[j].target != Context{c.bottom.target[j]})
                return false;
        return precompose_all(*p, c.bottom, c.left) == postcompose_all(*p, c.top, c.right);
    };
    return {p, std::move(is_vertical), std::move(is_two_cell)};
}

// --- double Chu ---

bool chu_vertical_valid(const ChuPolycategory& chu, const ObjectId& a, const ObjectId& b,
                        const ChuVertical& u, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    ChuObject ta = chu.triple(a), tb = chu.triple(b);
    const Polycategory& e = chu.env();
    if (u.plus.source != Context{ta.plus} || u.plus.target != Context{tb.plus} ||
        !member(e.hom({ta.plus}, {tb.plus}), u.plus))
        return fail("plus component is not an E-morphism A+ -> B+");
    if (u.minus.source != Context{ta.minus} || u.minus.target != Context{tb.minus} ||
        !member(e.hom({ta.minus}, {tb.minus}), u.minus))
        return fail("minus component is not an E-morphism A- -> B-");
    PolyMorphism got = act_all(chu.bot(), tb.pairing, {u.plus, u.minus});
    if (!(got == ta.pairing)) return fail("pairing of B does not restrict to the pairing of A");
    return true;
}

bool chu_two_cell_valid(const ChuPolycategory& chu, const ChuTwoCell& cell, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const std::size_t m = cell.top.source.size(), n = cell.top.target.size();
    if (cell.bottom.source.size() != m || cell.bottom.target.size() != n)
        return fail("boundary shapes differ");
    if (cell.left.size() != m || cell.right.size() != n) return fail("wrong leg count");
    for (std::size_t i = 0; i < m; ++i)
        if (!chu_vertical_valid(chu, cell.top.source[i], cell.bottom.source[i], cell.left[i], why))
            return false;
    for (std::size_t j = 0; j < n; ++j)
        if (!chu_vertical_valid(chu, cell.top.target[j], cell.bottom.target[j], cell.right[j], why))
            return false;

    const Polycategory& e = chu.env();
    const ChuParts& fp = ChuPolycategory::parts(cell.top);
    const ChuParts& gp = ChuPolycategory::parts(cell.bottom);
    // Carrier-direction legs: u+ on source slots, v- on target slots.
    std::vector<PolyMorphism> legs;
    for (std::size_t i = 0; i < m; ++i) legs.push_back(cell.left[i].plus);
    for (std::size_t j = 0; j < n; ++j) legs.push_back(cell.right[j].minus);
    auto without = [&](std::size_t pos) {
        std::vector<PolyMorphism> ls = legs;
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(pos));
        return ls;
    };
    for (std::size_t j = 0; j < n; ++j) {
        PolyMorphism lhs = precompose_all(e, gp.plus_parts[j], without(m + j));
        PolyMorphism rhs = e.compose_at(cell.right[j].plus, 0, fp.plus_parts[j], 0);
        if (!(lhs == rhs)) return fail("plus square " + std::to_string(j) + " does not commute");
    }
    for (std::size_t i = 0; i < m; ++i) {
        PolyMorphism lhs = precompose_all(e, gp.minus_parts[i], without(i));
        PolyMorphism rhs = e.compose_at(cell.left[i].minus, 0, fp.minus_parts[i], 0);
        if (!(lhs == rhs)) return fail("minus square " + std::to_string(i) + " does not commute");
    }
    if (!(act_all(chu.bot(), gp.core, legs) == fp.core))
        return fail("pairing square does not commute");
    return true;
}

ChuDoubleCategory double_chu(std::shared_ptr<const ChuPolycategory> chu) {
    auto is_vertical = [chu](const ObjectId& a, const ObjectId& b, const ChuVertical& u) {
        return chu_vertical_valid(*chu, a, b, u);
    };
    auto is_two_cell = [chu](const ChuTwoCell& cell) { return chu_two_cell_valid(*chu, cell); };
    return {chu, std::move(is_vertical), std::move(is_two_cell)};
}

// --- gl(Lambda, psi) ---

PresheafMap terminal_psi(ModulePtr bot1, std::shared_ptr<const Polycategory> e) {
    ModulePtr one = terminal_module(std::move(e));
    auto apply = [one](const PolyMorphism& x) { return one->value_at(x.source, x.target).at(0); };
    return {std::move(bot1), one, std::move(apply)};
}

bool check_presheaf_map(const PresheafMap& psi, const Polycategory& e, std::size_t bound,
                        std::string* why) {
    for (const auto& gamma : enumerate_contexts(e.objects(), bound)) {
        for (const auto& x : psi.source->value_at(gamma, {})) {
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                for (const auto& a : e.objects()) {
                    std::vector<PolyMorphism> fs;
                    try {
                        fs = e.hom({a}, {gamma[i]});
                    } catch (const ArityBoundError&) {
                        continue;
                    }
                    for (const auto& f : fs) {
                        PolyMorphism lhs = psi.apply(psi.source->act_src(x, i, f, 0));
                        PolyMorphism rhs = psi.target->act_src(psi.apply(x), i, f, 0);
                        if (!(lhs == rhs)) {
                            if (why)
                                *why = "psi not natural at (" + render(gamma) + ") slot " +
                                       std::to_string(i);
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

GluedPolycategory::GluedPolycategory(ChuFunctor lambda,
                                     std::shared_ptr<const ChuPolycategory> chu1, PresheafMap psi,
                                     std::vector<GluingObject> objs, std::size_t arity_bound)
    : lambda_(std::move(lambda)),
      chu1_(std::move(chu1)),
      psi_(std::move(psi)),
      objs_(std::move(objs)),
      arity_bound_(arity_bound) {
    for (const auto& o : objs_)
        for (const auto& other : objs_)
            if (&o != &other && o.name == other.name)
                throw TypeMismatchError("glue: duplicate object name " + o.name);
    has_duals_ = !objs_.empty();
    for (const auto& o : objs_) has_duals_ = has_duals_ && lambda_.d->dual(o.base).has_value();
    for (const auto& o : objs_) {
        validate_object(o);
        if (has_duals_) validate_object(resolve(ObjectId{o.name, true}));
    }
}

void GluedPolycategory::validate_object(const GluingObject& o) const {
    ChuObject ct = chu1_->triple(o.chu_object);
    ChuObject lo = lambda_.chu2->triple(lambda_.on_object(o.base));
    const Polycategory& e = chu1_->env();
    if (o.leg_plus.source != Context{ct.plus} || o.leg_plus.target != Context{lo.plus} ||
        !member(e.hom({ct.plus}, {lo.plus}), o.leg_plus))
        throw TypeMismatchError("glue: plus leg of " + o.name + " is not A+ -> L(base)");
    if (o.leg_minus.source != Context{ct.minus} || o.leg_minus.target != Context{lo.minus} ||
        !member(e.hom({ct.minus}, {lo.minus}), o.leg_minus))
        throw TypeMismatchError("glue: minus leg of " + o.name + " is not A- -> K(base)");
    PolyMorphism via_legs = act_all(lambda_.chu2->bot(), lo.pairing, {o.leg_plus, o.leg_minus});
    if (!(via_legs == psi_.apply(ct.pairing)))
        throw TypeMismatchError("glue: pairings of " + o.name + " disagree");
}

GluingObject GluedPolycategory::resolve(const ObjectId& name) const {
    for (const auto& o : objs_) {
        if (o.name != name.name) continue;
        if (!name.bar) return o;
        auto db = lambda_.d->dual(o.base);
        if (!db) throw NotStarAutonomous("glue: base object " + o.base.render() + " has no dual");
        return GluingObject{o.name, *db, o.chu_object.dualized(), o.leg_minus, o.leg_plus};
    }
    throw TypeMismatchError("glue: unknown object " + name.render());
}

std::vector<ObjectId> GluedPolycategory::objects() const {
    std::vector<ObjectId> out;
    for (const auto& o : objs_) out.push_back(ObjectId{o.name});
    if (has_duals_)
        for (const auto& o : objs_) out.push_back(ObjectId{o.name, true});
    return out;
}

std::optional<ObjectId> GluedPolycategory::dual(const ObjectId& a) const {
    if (!has_duals_) return std::nullopt;
    return a.dualized();
}

Context GluedPolycategory::base_context(const Context& c) const {
    Context out;
    for (const auto& a : c) out.push_back(resolve(a).base);
    return out;
}

Context GluedPolycategory::chu_context(const Context& c) const {
    Context out;
    for (const auto& a : c) out.push_back(resolve(a).chu_object);
    return out;
}

std::string GluedPolycategory::squares(const Context& source, const Context& target,
                                       const PolyMorphism& d_part,
                                       const PolyMorphism& chu_part) const {
    const std::size_t m = source.size(), n = target.size();
    const Polycategory& e = chu1_->env();
    PolyMorphism lf = lambda_.on_morphism(d_part);
    const ChuParts& lp = ChuPolycategory::parts(lf);
    const ChuParts& fp = ChuPolycategory::parts(chu_part);
    std::vector<PolyMorphism> legs;
    for (std::size_t i = 0; i < m; ++i) legs.push_back(resolve(source[i]).leg_plus);
    for (std::size_t j = 0; j < n; ++j) legs.push_back(resolve(target[j]).leg_minus);
    auto without = [&](std::size_t pos) {
        std::vector<PolyMorphism> ls = legs;
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(pos));
        return ls;
    };
    for (std::size_t j = 0; j < n; ++j) {
        PolyMorphism lhs = precompose_all(e, lp.plus_parts[j], without(m + j));
        PolyMorphism rhs = e.compose_at(resolve(target[j]).leg_plus, 0, fp.plus_parts[j], 0);
        if (!(lhs == rhs)) return "plus square " + std::to_string(j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        PolyMorphism lhs = precompose_all(e, lp.minus_parts[i], without(i));
        PolyMorphism rhs = e.compose_at(resolve(source[i]).leg_minus, 0, fp.minus_parts[i], 0);
        if (!(lhs == rhs)) return "minus square " + std::to_string(i);
    }
    if (!(act_all(lambda_.chu2->bot(), lp.core, legs) == psi_.apply(fp.core)))
        return "pairing square";
    return {};
}

PolyMorphism GluedPolycategory::make_morphism(const Context& source, const Context& target,
                                              GluingParts parts) const {
    if (parts.d_part.source != base_context(source) ||
        parts.d_part.target != base_context(target))
        throw TypeMismatchError("glue: base component has wrong boundary");
    if (parts.chu_part.source != chu_context(source) ||
        parts.chu_part.target != chu_context(target))
        throw TypeMismatchError("glue: chu component has wrong boundary");
    std::string bad = squares(source, target, parts.d_part, parts.chu_part);
    if (!bad.empty()) throw TypeMismatchError("glue: " + bad + " does not commute");
    std::string key = "[" + parts.d_part.key + "&" + parts.chu_part.key + "]";
    auto payload = std::make_shared<GluingParts>(std::move(parts));
    return {source, target, std::move(key), std::move(payload)};
}

const GluingParts& GluedPolycategory::parts(const PolyMorphism& f) {
    auto p = payload_as<GluingParts>(f);
    if (!p) throw TypeMismatchError("glue: morphism carries no component pair");
    return *p;
}

std::vector<PolyMorphism> GluedPolycategory::hom(const Context& source,
                                                 const Context& target) const {
    require_bound(source, target);
    std::vector<PolyMorphism> out;
    for (const auto& f : lambda_.d->hom(base_context(source), base_context(target)))
        for (const auto& g : chu1_->hom(chu_context(source), chu_context(target)))
            if (squares(source, target, f, g).empty())
                out.push_back(make_morphism(source, target, GluingParts{f, g}));
    std::sort(out.begin(), out.end());
    return out;
}

PolyMorphism GluedPolycategory::identity(const ObjectId& a) const {
    GluingObject o = resolve(a);
    return make_morphism({a}, {a},
                         GluingParts{lambda_.d->identity(o.base), chu1_->identity(o.chu_object)});
}

PolyMorphism GluedPolycategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                           const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    const GluingParts& fp = parts(f);
    const GluingParts& gp = parts(g);
    Context h_src = concat(erased(f.source, f_src_pos), g.source);
    Context h_tgt = concat(f.target, erased(g.target, g_tgt_pos));
    GluingParts hp{lambda_.d->compose_at(fp.d_part, f_src_pos, gp.d_part, g_tgt_pos),
                   chu1_->compose_at(fp.chu_part, f_src_pos, gp.chu_part, g_tgt_pos)};
    return make_morphism(h_src, h_tgt, std::move(hp));
}

PolyMorphism GluedPolycategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                        const Permutation& tgt_perm) const {
    const GluingParts& fp = parts(f);
    GluingParts hp{lambda_.d->permute(fp.d_part, src_perm, tgt_perm),
                   chu1_->permute(fp.chu_part, src_perm, tgt_perm)};
    return make_morphism(apply(src_perm, f.source), apply(tgt_perm, f.target), std::move(hp));
}

bool check_duality(const Polycategory& p, const ObjectId& a, std::size_t bound, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    auto d = p.dual(a);
    if (!d) return fail("object " + a.render() + " has no dual");
    PolyMorphism eps, eta;
    try {
        std::tie(eps, eta) = duality_morphisms(p, a);
    } catch (const NotStarAutonomous& e) {
        return fail(e.what());
    }
    for (const auto& [gamma, delta] : enumerate_context_pairs(p.objects(), bound)) {
        std::vector<PolyMorphism> h1, h2;
        try {
            h1 = p.hom(concat(gamma, {a}), delta);
            h2 = p.hom(gamma, concat(delta, {*d}));
        } catch (const ArityBoundError&) {
            continue;
        }
        std::vector<PolyMorphism> image;
        for (const auto& f : h1) {
            // f o eta at the freshly appended slots: (Gamma;Delta,~a).
            PolyMorphism t = p.compose_at(f, gamma.size(), eta, 1);
            if (!member(h2, t)) return fail("transpose leaves the hom-set at " + f.key);
            // Back: eps o t, restoring a to the last source slot.
            PolyMorphism back = p.compose_at(eps, 1, t, delta.size());
            back = p.permute(back, block_perm({1, gamma.size()}, {1, 0}),
                             Permutation::identity(delta.size()));
            if (!(back == f)) return fail("transpose does not round-trip at " + f.key);
            image.push_back(t);
        }
        for (std::size_t x = 0; x < image.size(); ++x)
            for (std::size_t y = x + 1; y < image.size(); ++y)
                if (image[x] == image[y]) return fail("transpose not injective");
        if (image.size() != h2.size())
            return fail("hom-set cardinalities differ at (" + render(gamma) + ";" + render(delta) +
                        ")");
    }
    return true;
}

// --- posetal instances ---

PosetalGlueBuilder::PosetalGlueBuilder(Quantale q, std::string dualizer, BotMode mode,
                                       std::size_t arity_bound)
    : q_(std::move(q)), d0_(std::move(dualizer)), mode_(mode), arity_bound_(arity_bound) {}

std::string PosetalGlueBuilder::negate(const std::string& x) const {
    return q_.residual(x, d0_);
}

std::string PosetalGlueBuilder::meet_all(const std::vector<std::string>& xs) const {
    std::optional<std::string> acc = q_.top();
    for (const auto& x : xs) {
        if (!acc) throw LimitUnavailable("glue: no meet available");
        acc = q_.meet(*acc, x);
    }
    if (!acc) throw LimitUnavailable("glue: no meet available");
    return *acc;
}

ObjectId PosetalGlueBuilder::reg(Triple t) {
    std::string name = t.base + "|" + t.plus + "|" + t.minus;
    for (const auto& [n, existing] : reg_)
        if (n == name) return ObjectId{n};
    if (!q_.leq(t.plus, t.base) || !q_.leq(t.minus, negate(t.base)))
        throw TypeMismatchError("glue: invalid triple " + name);
    reg_.emplace_back(name, std::move(t));
    return ObjectId{name};
}

ObjectId PosetalGlueBuilder::add(const std::string& base, const std::string& plus,
                                 const std::string& minus) {
    return reg(Triple{base, plus, minus});
}

void PosetalGlueBuilder::add_all() {
    for (const auto& b : q_.elements())
        for (const auto& p : q_.elements())
            for (const auto& m : q_.elements())
                if (q_.leq(p, b) && q_.leq(m, negate(b))) reg(Triple{b, p, m});
}

PosetalGlueBuilder::Triple PosetalGlueBuilder::dual_triple(const Quantale& q,
                                                           const std::string& d0,
                                                           const Triple& t) {
    return Triple{q.residual(t.base, d0), t.minus, t.plus};
}

PosetalGlueBuilder::Triple PosetalGlueBuilder::triple_of(const ObjectId& a) const {
    for (const auto& [n, t] : reg_)
        if (n == a.name) return a.bar ? dual_triple(q_, d0_, t) : t;
    throw TypeMismatchError("glue: unknown object " + a.render());
}

PosetalGlueBuilder::Triple PosetalGlueBuilder::tensor_triple(const Triple& a,
                                                             const Triple& b) const {
    if (mode_ == BotMode::Mixed)
        throw LimitUnavailable("glue: structure formulas need matching presheaves");
    const std::string base = q_.tensor(a.base, b.base);
    const std::string plus = q_.tensor(a.plus, b.plus);
    // The minus carrier is the limit of the displayed diagram: in a poset,
    // the meet over its corners (the bot1 corner only exists when bot1 is
    // representable).
    std::vector<std::string> corners = {
        q_.residual(a.plus, b.minus),        q_.residual(b.plus, a.minus),
        q_.residual(a.plus, negate(b.base)), q_.residual(a.base, negate(b.base)),
        negate(base),                        q_.residual(b.base, negate(a.base)),
        q_.residual(b.plus, negate(a.base))};
    if (mode_ == BotMode::Representable) corners.push_back(q_.residual(plus, d0_));
    return Triple{base, plus, meet_all(corners)};
}

PosetalGlueBuilder::Triple PosetalGlueBuilder::hom_triple(const Triple& a, const Triple& b) const {
    if (mode_ == BotMode::Mixed)
        throw LimitUnavailable("glue: structure formulas need matching presheaves");
    const std::string base = q_.residual(a.base, b.base);
    std::vector<std::string> corners = {
        q_.residual(a.plus, b.plus),
        q_.residual(b.minus, a.minus),
        q_.residual(a.plus, b.base),
        q_.residual(a.base, b.base),
        base,
        q_.residual(negate(b.base), negate(a.base)),
        q_.residual(b.minus, negate(a.base))};
    if (mode_ == BotMode::Representable)
        corners.push_back(q_.residual(q_.tensor(a.plus, b.minus), d0_));
    return Triple{base, meet_all(corners), q_.tensor(a.plus, b.minus)};
}

PosetalGlueBuilder::Triple PosetalGlueBuilder::unit_triple() const {
    if (mode_ == BotMode::Mixed)
        throw LimitUnavailable("glue: structure formulas need matching presheaves");
    const std::string k_unit = negate(q_.unit());
    // The pullback of bot1 -> bot2 <- K(unit): a meet when bot1 is
    // representable, K(unit) itself in the terminal case.
    std::string minus = mode_ == BotMode::Representable ? meet_all({d0_, k_unit}) : k_unit;
    return Triple{q_.unit(), q_.unit(), std::move(minus)};
}

ObjectId PosetalGlueBuilder::tensor(const ObjectId& a, const ObjectId& b) {
    return reg(tensor_triple(triple_of(a), triple_of(b)));
}

ObjectId PosetalGlueBuilder::hom_object(const ObjectId& a, const ObjectId& b) {
    return reg(hom_triple(triple_of(a), triple_of(b)));
}

ObjectId PosetalGlueBuilder::unit() { return reg(unit_triple()); }

ObjectId PosetalGlueBuilder::cotensor(const ObjectId& a, const ObjectId& b) {
    Triple da = dual_triple(q_, d0_, triple_of(a));
    Triple db = dual_triple(q_, d0_, triple_of(b));
    return reg(dual_triple(q_, d0_, tensor_triple(da, db)));
}

ObjectId PosetalGlueBuilder::counit() { return reg(dual_triple(q_, d0_, unit_triple())); }

std::shared_ptr<GluedPolycategory> PosetalGlueBuilder::build() const {
    const std::size_t inner_bound = 2 * arity_bound_ + 2;
    auto d = std::make_shared<PosetalPolycategory>(q_, d0_, inner_bound);
    auto e = std::make_shared<PosetalPolycategory>(counary_from_smc_poset(q_, inner_bound));

    ModulePtr rep_bot = shift(module_of(e), {}, {ObjectId{d0_}});
    ModulePtr bot1 = mode_ == BotMode::Terminal ? terminal_module(e) : rep_bot;
    ModulePtr bot2 = mode_ == BotMode::Representable ? rep_bot : terminal_module(e);

    auto chu_name = [](const std::string& plus, const std::string& minus) {
        return plus + "|" + minus;
    };
    std::vector<ChuObject> chu1_objs;
    for (const auto& [n, t] : reg_) {
        std::string cn = chu_name(t.plus, t.minus);
        bool seen = false;
        for (const auto& c : chu1_objs) seen |= (c.name == cn);
        if (seen) continue;
        chu1_objs.push_back(ChuObject{cn, ObjectId{t.plus}, ObjectId{t.minus},
                                      bot1->value_at({ObjectId{t.plus}, ObjectId{t.minus}}, {})
                                          .at(0)});
    }
    auto chu1 = std::make_shared<ChuPolycategory>(e, bot1, std::move(chu1_objs), inner_bound);

    std::vector<ChuObject> chu2_objs;
    for (const auto& x : q_.elements())
        chu2_objs.push_back(ChuObject{x, ObjectId{x}, ObjectId{negate(x)},
                                      bot2->value_at({ObjectId{x}, ObjectId{negate(x)}}, {})
                                          .at(0)});
    auto chu2 = std::make_shared<ChuPolycategory>(e, bot2, std::move(chu2_objs), inner_bound);

    ChuFunctor lambda;
    lambda.d = d;
    lambda.chu2 = chu2;
    lambda.on_object = [](const ObjectId& a) { return ObjectId{a.name}; };
    lambda.on_morphism = [chu2](const PolyMorphism& f) {
        Context src, tgt;
        for (const auto& a : f.source) src.push_back(ObjectId{a.name});
        for (const auto& b : f.target) tgt.push_back(ObjectId{b.name});
        return chu2->hom(src, tgt).at(0);
    };

    PresheafMap psi = mode_ == BotMode::Mixed ? terminal_psi(bot1, e) : identity_psi(bot1);

    std::vector<GluingObject> objs;
    for (const auto& [n, t] : reg_) {
        PolyMorphism lp = e->hom({ObjectId{t.plus}}, {ObjectId{t.base}}).at(0);
        PolyMorphism lm = e->hom({ObjectId{t.minus}}, {ObjectId{negate(t.base)}}).at(0);
        objs.push_back(
            GluingObject{n, ObjectId{t.base}, ObjectId{chu_name(t.plus, t.minus)}, lp, lm});
    }
    return std::make_shared<GluedPolycategory>(std::move(lambda), chu1, std::move(psi),
                                               std::move(objs), arity_bound_);
}

ProductWitness PosetalGlueBuilder::witness(const GluedPolycategory& gl, ProductWitness::Kind kind,
                                           std::vector<ObjectId> operands,
                                           const ObjectId& carrier) const {
    Context srcs, tgts;
    switch (kind) {
        case ProductWitness::Kind::Tensor:
            srcs = operands;
            tgts = {carrier};
            break;
        case ProductWitness::Kind::Cotensor:
            srcs = {carrier};
            tgts = operands;
            break;
        case ProductWitness::Kind::Unit:
            tgts = {carrier};
            break;
        case ProductWitness::Kind::Counit:
            srcs = {carrier};
            break;
        case ProductWitness::Kind::Hom:
            srcs = {carrier, operands.at(0)};
            tgts = {operands.at(1)};
            break;
    }
    std::vector<PolyMorphism> hs = gl.hom(srcs, tgts);
    if (hs.empty()) throw TypeMismatchError("glue: no structural morphism for " + carrier.render());
    return ProductWitness{kind, std::move(operands), carrier, hs.at(0)};
}

namespace terminal_formulas {

using Triple = PosetalGlueBuilder::Triple;

namespace {
std::string neg(const Quantale& q, const std::string& d0, const std::string& x) {
    return q.residual(x, d0);
}
std::string meet3(const Quantale& q, const std::string& a, const std::string& b,
                  const std::string& c) {
    auto m1 = q.meet(a, b);
    if (!m1) throw LimitUnavailable("glue: no meet available");
    auto m2 = q.meet(*m1, c);
    if (!m2) throw LimitUnavailable("glue: no meet available");
    return *m2;
}
}  // namespace

Triple tensor(const Quantale& q, const std::string& d0, const Triple& a, const Triple& b) {
    const std::string base = q.tensor(a.base, b.base);
    return Triple{base, q.tensor(a.plus, b.plus),
                  meet3(q, q.residual(a.plus, b.minus), q.residual(b.plus, a.minus),
                        neg(q, d0, base))};
}

Triple cotensor(const Quantale& q, const std::string& d0, const Triple& a, const Triple& b) {
    // The par of the bases, the relation-pair meet on the plus side, and
    // the tensor of the minus carriers.
    const std::string base = neg(q, d0, q.tensor(neg(q, d0, a.base), neg(q, d0, b.base)));
    return Triple{base,
                  meet3(q, q.residual(a.minus, b.plus), q.residual(b.minus, a.plus), base),
                  q.tensor(a.minus, b.minus)};
}

Triple hom(const Quantale& q, const std::string& d0, const Triple& a, const Triple& b) {
    const std::string base = q.residual(a.base, b.base);
    return Triple{base,
                  meet3(q, q.residual(a.plus, b.plus), q.residual(b.minus, a.minus), base),
                  q.tensor(a.plus, b.minus)};
}

Triple unit(const Quantale& q, const std::string& d0) {
    return Triple{q.unit(), q.unit(), neg(q, d0, q.unit())};
}

Triple dual(const Quantale& q, const std::string& d0, const Triple& a) {
    return Triple{neg(q, d0, a.base), a.minus, a.plus};
}

}  // namespace terminal_formulas

// --- restricted Yoneda data ---

namespace {

class RestrictedModule final : public Module {
public:
    RestrictedModule(ModulePtr inner, PolyFunctor phi)
        : inner_(std::move(inner)), phi_(std::move(phi)) {}

    const Polycategory& base() const override { return *phi_.source; }
    std::string name() const override { return inner_->name() + "[phi]"; }

    std::vector<PolyMorphism> value_at(const Context& gamma, const Context& delta) const override {
        std::vector<PolyMorphism> out;
        for (auto& m : inner_->value_at(mapc(gamma), mapc(delta)))
            out.push_back(relabel(std::move(m), gamma, delta));
        return out;
    }

    PolyMorphism act_src(const PolyMorphism& x, std::size_t i, const PolyMorphism& f,
                         std::size_t j) const override {
        PolyMorphism y = inner_->act_src(unwrap(x), i, phi_.on_morphism(f), j);
        return relabel(std::move(y), concat(erased(x.source, i), f.source),
                       concat(x.target, erased(f.target, j)));
    }

    PolyMorphism act_tgt(const PolyMorphism& x, std::size_t k, const PolyMorphism& g,
                         std::size_t i) const override {
        PolyMorphism y = inner_->act_tgt(unwrap(x), k, phi_.on_morphism(g), i);
        return relabel(std::move(y), concat(x.source, erased(g.source, i)),
                       concat(erased(x.target, k), g.target));
    }

    PolyMorphism permute(const PolyMorphism& x, const Permutation& sp,
                         const Permutation& tp) const override {
        PolyMorphism y = inner_->permute(unwrap(x), sp, tp);
        return relabel(std::move(y), apply(sp, x.source), apply(tp, x.target));
    }

private:
    Context mapc(const Context& c) const {
        Context out;
        for (const auto& a : c) out.push_back(phi_.on_object(a));
        return out;
    }

    PolyMorphism relabel(PolyMorphism inner_elem, Context gamma, Context delta) const {
        std::string key = inner_elem.key;
        return PolyMorphism{std::move(gamma), std::move(delta), std::move(key),
                            std::make_shared<const PolyMorphism>(std::move(inner_elem))};
    }

    PolyMorphism unwrap(const PolyMorphism& x) const {
        auto p = payload_as<PolyMorphism>(x);
        if (!p) throw TypeMismatchError("element does not belong to this restricted module");
        return *p;
    }

    ModulePtr inner_;
    PolyFunctor phi_;
};

}  // namespace

ModulePtr restrict_module(ModulePtr u, PolyFunctor phi) {
    return std::make_shared<RestrictedModule>(std::move(u), std::move(phi));
}

LambdaData build_lambda(PolyFunctor phi, const std::vector<ProductWitness>& j,
                        std::size_t bound) {
    for (const auto& w : j) {
        std::vector<ObjectId> ops;
        for (const auto& o : w.operands) ops.push_back(phi.on_object(o));
        ProductWitness image{w.kind, std::move(ops), phi.on_object(w.carrier),
                             phi.on_morphism(w.structural)};
        std::string why;
        if (!check_representability(*phi.target, image, bound, &why))
            throw JNotPreserved("witness for " + w.carrier.render() + " not preserved: " + why);
    }
    LambdaData out;
    out.phi = phi;
    out.d_phi = restrict_module(module_of(phi.target), phi);
    out.l = [phi](const ObjectId& r) {
        return restrict_module(shift(module_of(phi.target), {}, {r}), phi);
    };
    out.k = [phi](const ObjectId& r) {
        return restrict_module(shift(module_of(phi.target), {r}, {}), phi);
    };
    out.pair = [phi](const ObjectId& r, const PolyMorphism& x, const PolyMorphism& y) {
        const Polycategory& d = *phi.target;
        // Unwrap to D-morphisms: x in D(PhiG; PhiD, r), y in D(PhiG', r; PhiD').
        PolyMorphism dx = *payload_as<PolyMorphism>(*payload_as<PolyMorphism>(x));
        PolyMorphism dy = *payload_as<PolyMorphism>(*payload_as<PolyMorphism>(y));
        PolyMorphism comp = d.compose_at(dy, y.source.size(), dx, x.target.size());
        // Layout (PhiG', PhiG ; PhiD', PhiD) -> (PhiG, PhiG' ; PhiD, PhiD').
        comp = d.permute(comp, block_perm({y.source.size(), x.source.size()}, {1, 0}),
                         block_perm({y.target.size(), x.target.size()}, {1, 0}));
        (void)r;
        return PolyMorphism{concat(x.source, y.source), concat(x.target, y.target), comp.key,
                            std::make_shared<const PolyMorphism>(std::move(comp))};
    };
    out.phi_map = [phi](const PolyMorphism& f) {
        PolyMorphism df = phi.on_morphism(f);
        std::string key = df.key;
        return PolyMorphism{f.source, f.target, std::move(key),
                            std::make_shared<const PolyMorphism>(std::move(df))};
    };
    return out;
}

}  // namespace polycat
