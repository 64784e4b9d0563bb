#include "polycat/polycategory.hpp"

#include <algorithm>

namespace polycat {

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation{idx});
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::vector<Context> enumerate_contexts(const std::vector<ObjectId>& objects, std::size_t max_len) {
    std::vector<Context> out{Context{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (const auto& o : objects) {
                Context c = out[i];
                c.push_back(o);
                out.push_back(std::move(c));
            }
        level_begin = level_end;
    }
    return out;
}

std::vector<std::pair<Context, Context>> enumerate_context_pairs(
    const std::vector<ObjectId>& objects, std::size_t total_bound) {
    std::vector<std::pair<Context, Context>> out;
    auto all = enumerate_contexts(objects, total_bound);
    for (const auto& src : all)
        for (const auto& tgt : all) {
            if (src.size() + tgt.size() > total_bound) continue;
            out.emplace_back(src, tgt);
        }
    return out;
}

}  // namespace polycat
