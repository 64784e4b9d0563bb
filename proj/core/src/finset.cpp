#include "polycat/finset.hpp"

#include <algorithm>

namespace polycat {

namespace {

struct FnPayload {
    std::vector<std::string> values;
};

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

}  // namespace

FinSetMulticategory::FinSetMulticategory(std::map<std::string, std::vector<std::string>> sets,
                                         std::size_t arity_bound, std::size_t hom_budget)
    : sets_(std::move(sets)), arity_bound_(arity_bound), hom_budget_(hom_budget) {
    for (auto& [name, elems] : sets_) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
}

std::vector<ObjectId> FinSetMulticategory::objects() const {
    std::vector<ObjectId> out;
    for (const auto& [name, _] : sets_) out.push_back(ObjectId{name});
    return out;
}

const std::vector<std::string>& FinSetMulticategory::elements(const ObjectId& a) const {
    auto it = sets_.find(a.name);
    if (it == sets_.end() || a.bar)
        throw TypeMismatchError("finset: unknown set " + a.render());
    return it->second;
}

std::vector<std::vector<std::string>> FinSetMulticategory::tuples(const Context& gamma) const {
    std::vector<std::vector<std::string>> out{{}};
    for (const auto& obj : gamma) {
        const auto& elems = elements(obj);
        std::vector<std::vector<std::string>> next;
        next.reserve(out.size() * elems.size());
        for (const auto& t : out)
            for (const auto& e : elems) {
                auto u = t;
                u.push_back(e);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

PolyMorphism FinSetMulticategory::function(const Context& gamma, const ObjectId& b,
                                           std::vector<std::string> values) const {
    std::size_t card = 1;
    for (const auto& obj : gamma) card *= elements(obj).size();
    if (values.size() != card)
        throw TypeMismatchError("finset: value list has wrong cardinality");
    const auto& codomain = elements(b);
    for (const auto& v : values)
        if (!std::binary_search(codomain.begin(), codomain.end(), v))
            throw TypeMismatchError("finset: value " + v + " not in " + b.render());
    std::string key = join(values, ',');
    auto payload = std::make_shared<FnPayload>(FnPayload{std::move(values)});
    return {gamma, {b}, std::move(key), std::move(payload)};
}

const std::string& FinSetMulticategory::eval(const PolyMorphism& f,
                                             const std::vector<std::string>& args) const {
    if (args.size() != f.source.size())
        throw TypeMismatchError("finset: eval arity mismatch");
    // Mixed-radix index of the tuple, leftmost slot slowest.
    std::size_t idx = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& elems = elements(f.source[i]);
        auto it = std::lower_bound(elems.begin(), elems.end(), args[i]);
        if (it == elems.end() || *it != args[i])
            throw TypeMismatchError("finset: argument " + args[i] + " not in " +
                                    f.source[i].render());
        idx = idx * elems.size() + static_cast<std::size_t>(it - elems.begin());
    }
    return payload_as<FnPayload>(f)->values.at(idx);
}

std::vector<PolyMorphism> FinSetMulticategory::hom(const Context& source,
                                                   const Context& target) const {
    require_bound(source, target);
    if (target.size() != 1) return {};
    for (const auto& obj : source) elements(obj);  // validate
    const auto& codomain = elements(target[0]);
    std::size_t dom = 1;
    for (const auto& obj : source) dom *= elements(obj).size();
    // |hom| = |codomain|^dom; refuse to enumerate astronomically many.
    double count = 1;
    for (std::size_t i = 0; i < dom; ++i) {
        count *= static_cast<double>(codomain.size());
        if (count > static_cast<double>(hom_budget_))
            throw OracleTimeout("finset: hom-set too large to enumerate");
    }
    std::vector<PolyMorphism> out;
    std::vector<std::size_t> digits(dom, 0);
    if (codomain.empty() && dom > 0) return out;
    while (true) {
        std::vector<std::string> values(dom);
        for (std::size_t i = 0; i < dom; ++i) values[i] = codomain[digits[i]];
        out.push_back(function(source, target[0], std::move(values)));
        std::size_t i = dom;
        while (i > 0) {
            --i;
            if (++digits[i] < codomain.size()) break;
            digits[i] = 0;
            if (i == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
        if (dom == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolyMorphism FinSetMulticategory::identity(const ObjectId& a) const {
    return function({a}, a, elements(a));
}

PolyMorphism FinSetMulticategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                             const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    if (g.target.size() != 1)
        throw TypeMismatchError("finset: composand is not a function");
    Context src = concat(erased(f.source, f_src_pos), g.source);
    std::vector<std::string> values;
    for (const auto& t : tuples(src)) {
        std::vector<std::string> g_args(t.begin() + static_cast<std::ptrdiff_t>(f.source.size() - 1),
                                        t.end());
        std::vector<std::string> f_args(t.begin(),
                                        t.begin() + static_cast<std::ptrdiff_t>(f.source.size() - 1));
        f_args.insert(f_args.begin() + static_cast<std::ptrdiff_t>(f_src_pos), eval(g, g_args));
        values.push_back(eval(f, f_args));
    }
    return function(src, f.target[0], std::move(values));
}

PolyMorphism FinSetMulticategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                          const Permutation& tgt_perm) const {
    if (tgt_perm.size() != f.target.size() || src_perm.size() != f.source.size())
        throw TypeMismatchError("finset: permutation size mismatch");
    Context src = apply(src_perm, f.source);
    std::vector<std::string> values;
    for (const auto& t : tuples(src)) {
        // Slot i of the permuted source is slot src_perm.map[i] of f's.
        std::vector<std::string> f_args(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) f_args[src_perm.map[i]] = t[i];
        values.push_back(eval(f, f_args));
    }
    return function(src, f.target[0], std::move(values));
}

ObjectId FinSetMulticategory::add_set(const std::string& name, std::vector<std::string> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto it = sets_.find(name);
    if (it != sets_.end()) {
        if (it->second != elems)
            throw TypeMismatchError("finset: conflicting definitions for " + name);
        return ObjectId{name};
    }
    sets_.emplace(name, std::move(elems));
    return ObjectId{name};
}

ObjectId FinSetMulticategory::product(const ObjectId& a, const ObjectId& b) {
    std::vector<std::string> elems;
    for (const auto& x : elements(a))
        for (const auto& y : elements(b)) elems.push_back(x + "|" + y);
    return add_set("(" + a.name + "x" + b.name + ")", std::move(elems));
}

ObjectId FinSetMulticategory::function_set(const ObjectId& a, const ObjectId& b) {
    std::vector<std::string> elems;
    for (const auto& f : hom({a}, {b})) elems.push_back(f.key);
    return add_set("(" + a.name + "=>" + b.name + ")", std::move(elems));
}

}  // namespace polycat
