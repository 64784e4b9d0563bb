#pragma once

#include <memory>
#include <string>

#include "polycat/context.hpp"

namespace polycat {

/// A morphism f in P(source; target).
///
/// `key` is the presentation-owned canonical form of the witness; two
/// morphisms of the same presentation are equal iff their boundaries and
/// keys coincide. `payload` carries the structured witness (circuit
/// graph, Chu component family, ...) for presentations that need it.
struct PolyMorphism {
    Context source;
    Context target;
    std::string key;
    std::shared_ptr<const void> payload;

    friend bool operator==(const PolyMorphism& a, const PolyMorphism& b) {
        return a.source == b.source && a.target == b.target && a.key == b.key;
    }

    friend bool operator<(const PolyMorphism& a, const PolyMorphism& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    }
};

template <typename T>
std::shared_ptr<const T> payload_as(const PolyMorphism& m) {
    return std::static_pointer_cast<const T>(m.payload);
}

}  // namespace polycat
