#pragma once

#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polycat {

/// An object of a polycategory. `bar` marks the formal dual in a
/// *-polycategory; ordinary polycategories only use plain objects.
struct ObjectId {
    std::string name;
    bool bar = false;

    ObjectId() = default;
    ObjectId(std::string n, bool b = false) : name(std::move(n)), bar(b) {}

    ObjectId dualized() const { return ObjectId{name, !bar}; }

    std::string render() const { return bar ? "~" + name : name; }

    friend bool operator==(const ObjectId&, const ObjectId&) = default;
    friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

/// An ordered list of objects: the Gamma/Delta of every hom-set.
using Context = std::vector<ObjectId>;

inline Context concat(const Context& a, const Context& b) {
    Context r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Context erased(const Context& c, std::size_t pos) {
    if (pos >= c.size()) throw std::out_of_range("context position out of range");
    Context r = c;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
    return r;
}

inline std::string render(const Context& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += c[i].render();
    }
    return s;
}

/// A permutation on n slots. `map[i]` is the slot of the *original*
/// context that lands in slot i of the permuted context.
struct Permutation {
    std::vector<std::size_t> map;

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.map.resize(n);
        std::iota(p.map.begin(), p.map.end(), std::size_t{0});
        return p;
    }

    std::size_t size() const { return map.size(); }

    bool is_identity() const {
        for (std::size_t i = 0; i < map.size(); ++i)
            if (map[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        Permutation p;
        p.map.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) p.map[map[i]] = i;
        return p;
    }

    /// this after other: apply `other` first, then `this`.
    Permutation then(const Permutation& second) const {
        if (second.size() != size()) throw std::invalid_argument("permutation size mismatch");
        Permutation p;
        p.map.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) p.map[i] = map[second.map[i]];
        return p;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

inline Context apply(const Permutation& p, const Context& c) {
    if (p.size() != c.size()) throw std::invalid_argument("permutation/context size mismatch");
    Context r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[p.map[i]];
    return r;
}

/// All permutations of {0..n-1}, in a deterministic order.
std::vector<Permutation> all_permutations(std::size_t n);

}  // namespace polycat

template <>
struct std::hash<polycat::ObjectId> {
    std::size_t operator()(const polycat::ObjectId& o) const noexcept {
        return std::hash<std::string>{}(o.name) ^ (o.bar ? 0x9e3779b97f4a7c15ull : 0);
    }
};
