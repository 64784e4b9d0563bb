#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "polycat/context.hpp"

namespace polycat {

/// (block, original slot) tags used to align context layouts that differ
/// only by block order.
using Tag = std::pair<int, std::size_t>;

/// Permutation p with apply(p, current) laid out as `desired`.
inline Permutation perm_matching(const std::vector<Tag>& desired, const std::vector<Tag>& current) {
    Permutation p;
    p.map.resize(desired.size());
    for (std::size_t i = 0; i < desired.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < current.size(); ++j)
            if (current[j] == desired[i]) {
                p.map[i] = j;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("perm_matching: tag not found");
    }
    return p;
}

inline Permutation move_to_end(std::size_t n, std::size_t i) {
    Permutation p;
    for (std::size_t k = 0; k < n; ++k)
        if (k != i) p.map.push_back(k);
    p.map.push_back(i);
    return p;
}

inline Permutation move_to_front(std::size_t n, std::size_t i) {
    Permutation p;
    p.map.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
        if (k != i) p.map.push_back(k);
    return p;
}

/// Permutation reordering a context made of consecutive blocks with the
/// given sizes into the order given by `order` (indices into `sizes`).
inline Permutation block_perm(const std::vector<std::size_t>& sizes,
                              const std::vector<std::size_t>& order) {
    std::vector<std::size_t> offset(sizes.size(), 0);
    for (std::size_t b = 1; b < sizes.size(); ++b) offset[b] = offset[b - 1] + sizes[b - 1];
    Permutation p;
    for (std::size_t b : order)
        for (std::size_t k = 0; k < sizes[b]; ++k) p.map.push_back(offset[b] + k);
    return p;
}

}  // namespace polycat
