#include "polycat/circuit.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "polycat/errors.hpp"

namespace polycat {

namespace {

using End = Circuit::End;
using EndKind = Circuit::EndKind;

bool is_provider(const End& e) {
    return e.kind == EndKind::BoundarySrc || e.kind == EndKind::NodeOut;
}

}  // namespace

Circuit Circuit::wire_identity(const ObjectId& a) {
    Circuit c;
    c.source = {a};
    c.target = {a};
    c.wires.push_back({{EndKind::BoundarySrc, 0, 0}, {EndKind::BoundaryTgt, 0, 0}});
    return c;
}

Circuit Circuit::from_generator(const Generator& g) {
    Circuit c;
    c.source = g.source;
    c.target = g.target;
    c.nodes.push_back({g.name, g.source, g.target});
    for (std::size_t i = 0; i < g.source.size(); ++i)
        c.wires.push_back({{EndKind::BoundarySrc, 0, i}, {EndKind::NodeIn, 0, i}});
    for (std::size_t j = 0; j < g.target.size(); ++j)
        c.wires.push_back({{EndKind::NodeOut, 0, j}, {EndKind::BoundaryTgt, 0, j}});
    return c;
}

Circuit Circuit::graft(const Circuit& f, std::size_t f_src_pos, const Circuit& g,
                       std::size_t g_tgt_pos) {
    if (f_src_pos >= f.source.size() || g_tgt_pos >= g.target.size())
        throw OccurrenceOutOfRange("graft: position out of range");
    if (!(f.source[f_src_pos] == g.target[g_tgt_pos]))
        throw TypeMismatchError("graft: cut objects differ");

    const std::size_t node_off = f.nodes.size();
    const std::size_t fsrc_n = f.source.size();
    const std::size_t ftgt_n = f.target.size();

    auto remap_f = [&](End e) {
        if (e.kind == EndKind::BoundarySrc) e.port = e.port < f_src_pos ? e.port : e.port - 1;
        return e;
    };
    auto remap_g = [&](End e) {
        switch (e.kind) {
            case EndKind::BoundarySrc: e.port += fsrc_n - 1; break;
            case EndKind::BoundaryTgt: e.port = ftgt_n + (e.port < g_tgt_pos ? e.port : e.port - 1); break;
            case EndKind::NodeIn:
            case EndKind::NodeOut: e.node += node_off; break;
        }
        return e;
    };

    Circuit out;
    out.source = concat(erased(f.source, f_src_pos), g.source);
    out.target = concat(f.target, erased(g.target, g_tgt_pos));
    out.nodes = f.nodes;
    out.nodes.insert(out.nodes.end(), g.nodes.begin(), g.nodes.end());

    End cut_consumer{}, cut_provider{};
    for (const auto& w : f.wires) {
        if (w.from.kind == EndKind::BoundarySrc && w.from.port == f_src_pos) {
            cut_consumer = remap_f(w.to);
            continue;
        }
        out.wires.push_back({remap_f(w.from), remap_f(w.to)});
    }
    for (const auto& w : g.wires) {
        if (w.to.kind == EndKind::BoundaryTgt && w.to.port == g_tgt_pos) {
            cut_provider = remap_g(w.from);
            continue;
        }
        out.wires.push_back({remap_g(w.from), remap_g(w.to)});
    }
    out.wires.push_back({cut_provider, cut_consumer});
    return out;
}

Circuit Circuit::permuted(const Permutation& src_perm, const Permutation& tgt_perm) const {
    if (src_perm.size() != source.size() || tgt_perm.size() != target.size())
        throw std::invalid_argument("circuit permutation size mismatch");
    const Permutation src_inv = src_perm.inverse();
    const Permutation tgt_inv = tgt_perm.inverse();
    Circuit out = *this;
    out.source = apply(src_perm, source);
    out.target = apply(tgt_perm, target);
    for (auto& w : out.wires) {
        if (w.from.kind == EndKind::BoundarySrc) w.from.port = src_inv.map[w.from.port];
        if (w.to.kind == EndKind::BoundaryTgt) w.to.port = tgt_inv.map[w.to.port];
    }
    return out;
}

namespace {

struct WireIndex {
    // provider end -> wire, consumer end -> wire
    std::map<std::tuple<int, std::size_t, std::size_t>, const Circuit::Wire*> by_from, by_to;

    static std::tuple<int, std::size_t, std::size_t> k(const End& e) {
        return {static_cast<int>(e.kind), e.node, e.port};
    }

    explicit WireIndex(const Circuit& c) {
        for (const auto& w : c.wires) {
            by_from[k(w.from)] = &w;
            by_to[k(w.to)] = &w;
        }
    }

    const Circuit::Wire* from(const End& e) const {
        auto it = by_from.find(k(e));
        return it == by_from.end() ? nullptr : it->second;
    }
    const Circuit::Wire* to(const End& e) const {
        auto it = by_to.find(k(e));
        return it == by_to.end() ? nullptr : it->second;
    }
};

// Deterministic DFS numbering, following ports in order.
struct Canonicalizer {
    const Circuit& c;
    WireIndex idx;
    std::vector<std::size_t> number;  // node -> assigned number + 1 (0 = unvisited)
    std::size_t next = 0;

    explicit Canonicalizer(const Circuit& cc) : c(cc), idx(cc), number(cc.nodes.size(), 0) {}

    void visit(std::size_t n) {
        if (number[n]) return;
        number[n] = ++next;
        const auto& node = c.nodes[n];
        for (std::size_t i = 0; i < node.inputs.size(); ++i) {
            const auto* w = idx.to({EndKind::NodeIn, n, i});
            if (w && w->from.kind == EndKind::NodeOut) visit(w->from.node);
        }
        for (std::size_t j = 0; j < node.outputs.size(); ++j) {
            const auto* w = idx.from({EndKind::NodeOut, n, j});
            if (w && w->to.kind == EndKind::NodeIn) visit(w->to.node);
        }
    }

    void seed_from_boundary() {
        for (std::size_t s = 0; s < c.source.size(); ++s) {
            const auto* w = idx.from({EndKind::BoundarySrc, 0, s});
            if (w && w->to.kind == EndKind::NodeIn) visit(w->to.node);
        }
        for (std::size_t t = 0; t < c.target.size(); ++t) {
            const auto* w = idx.to({EndKind::BoundaryTgt, 0, t});
            if (w && w->from.kind == EndKind::NodeOut) visit(w->from.node);
        }
    }

    std::string encode() const {
        std::vector<std::size_t> order(c.nodes.size());
        for (std::size_t n = 0; n < c.nodes.size(); ++n) order[number[n] - 1] = n;
        std::ostringstream os;
        os << "[" << render(c.source) << "|" << render(c.target) << "]";
        for (std::size_t k = 0; k < order.size(); ++k) os << " n" << k << "=" << c.nodes[order[k]].gen;
        std::vector<std::string> ws;
        auto enc = [&](const End& e) {
            std::ostringstream o;
            switch (e.kind) {
                case EndKind::BoundarySrc: o << "s" << e.port; break;
                case EndKind::BoundaryTgt: o << "t" << e.port; break;
                case EndKind::NodeIn: o << "n" << number[e.node] - 1 << "i" << e.port; break;
                case EndKind::NodeOut: o << "n" << number[e.node] - 1 << "o" << e.port; break;
            }
            return o.str();
        };
        for (const auto& w : c.wires) ws.push_back(enc(w.from) + ">" + enc(w.to));
        std::sort(ws.begin(), ws.end());
        for (const auto& w : ws) os << " " << w;
        return os.str();
    }
};

}  // namespace

std::string Circuit::canonical_key() const {
    Canonicalizer base(*this);
    base.seed_from_boundary();

    std::vector<std::size_t> rest;
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (!base.number[n]) rest.push_back(n);

    if (rest.empty()) return base.encode();

    // Closed components have no boundary anchor; pick the seed order giving
    // the least encoding. Components in practice hold only a few nodes.
    if (rest.size() <= 6) {
        std::string best;
        std::sort(rest.begin(), rest.end());
        do {
            Canonicalizer cand(*this);
            cand.seed_from_boundary();
            for (auto n : rest) cand.visit(n);
            std::string enc = cand.encode();
            if (best.empty() || enc < best) best = enc;
        } while (std::next_permutation(rest.begin(), rest.end()));
        return best;
    }

    std::stable_sort(rest.begin(), rest.end(),
                     [&](std::size_t a, std::size_t b) { return nodes[a].gen < nodes[b].gen; });
    for (auto n : rest) base.visit(n);
    return base.encode();
}

void Circuit::validate() const {
    std::set<std::tuple<int, std::size_t, std::size_t>> froms, tos;
    auto obj_at = [&](const End& e) -> const ObjectId& {
        switch (e.kind) {
            case EndKind::BoundarySrc: return source.at(e.port);
            case EndKind::BoundaryTgt: return target.at(e.port);
            case EndKind::NodeIn: return nodes.at(e.node).inputs.at(e.port);
            case EndKind::NodeOut: return nodes.at(e.node).outputs.at(e.port);
        }
        throw std::logic_error("bad end kind");
    };
    for (const auto& w : wires) {
        if (!is_provider(w.from) || is_provider(w.to))
            throw TypeMismatchError("circuit wire with wrong orientation");
        if (!(obj_at(w.from) == obj_at(w.to)))
            throw TypeMismatchError("circuit wire with mismatched object labels");
        if (!froms.insert(WireIndex::k(w.from)).second || !tos.insert(WireIndex::k(w.to)).second)
            throw TypeMismatchError("circuit port connected more than once");
    }
    std::size_t expect = source.size() + target.size();
    for (const auto& n : nodes) expect += n.inputs.size() + n.outputs.size();
    if (2 * wires.size() != expect) throw TypeMismatchError("circuit has unconnected ports");
}

FreePolycategory::FreePolycategory(Signature sig, std::size_t arity_bound,
                                   std::size_t node_budget)
    : sig_(std::move(sig)), arity_bound_(arity_bound), node_budget_(node_budget) {
    saturate();
}

PolyMorphism FreePolycategory::morphism_of(Circuit c) const {
    c.validate();
    PolyMorphism m;
    m.source = c.source;
    m.target = c.target;
    m.key = c.canonical_key();
    m.payload = std::make_shared<Circuit>(std::move(c));
    return m;
}

PolyMorphism FreePolycategory::generator_morphism(const std::string& name) const {
    return morphism_of(Circuit::from_generator(sig_.generator(name)));
}

PolyMorphism FreePolycategory::identity(const ObjectId& a) const {
    return morphism_of(Circuit::wire_identity(a));
}

PolyMorphism FreePolycategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                          const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    auto cf = payload_as<Circuit>(f);
    auto cg = payload_as<Circuit>(g);
    if (!cf || !cg) throw TypeMismatchError("free polycategory morphism without circuit witness");
    return morphism_of(Circuit::graft(*cf, f_src_pos, *cg, g_tgt_pos));
}

PolyMorphism FreePolycategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                       const Permutation& tgt_perm) const {
    auto cf = payload_as<Circuit>(f);
    if (!cf) throw TypeMismatchError("free polycategory morphism without circuit witness");
    return morphism_of(cf->permuted(src_perm, tgt_perm));
}

bool FreePolycategory::in_fragment(const PolyMorphism& m) const {
    auto c = payload_as<Circuit>(m);
    return c && c->nodes.size() <= node_budget_ && m.source.size() <= arity_bound_ &&
           m.target.size() <= arity_bound_;
}

std::vector<PolyMorphism> FreePolycategory::hom(const Context& source,
                                                const Context& target) const {
    require_bound(source, target);
    auto it = table_.find({source, target});
    if (it == table_.end()) return {};
    return it->second;
}

void FreePolycategory::saturate() {
    std::set<std::tuple<Context, Context, std::string>> seen;
    std::vector<PolyMorphism> all;
    std::deque<std::size_t> work;

    auto node_count = [](const PolyMorphism& m) { return payload_as<Circuit>(m)->nodes.size(); };

    auto add = [&](const PolyMorphism& m) {
        if (m.source.size() > arity_bound_ || m.target.size() > arity_bound_) return;
        if (node_count(m) > node_budget_) return;
        // close under the symmetric actions so enumeration is equivariant
        for (const auto& sp : all_permutations(m.source.size()))
            for (const auto& tp : all_permutations(m.target.size())) {
                PolyMorphism v = permute(m, sp, tp);
                if (seen.insert({v.source, v.target, v.key}).second) {
                    all.push_back(v);
                    work.push_back(all.size() - 1);
                }
            }
    };

    for (const auto& o : sig_.objects) add(identity(o));
    for (const auto& g : sig_.generators) add(morphism_of(Circuit::from_generator(g)));

    while (!work.empty()) {
        std::size_t i = work.front();
        work.pop_front();
        std::size_t n = all.size();
        for (std::size_t j = 0; j < n; ++j) {
            for (auto [f, g] : {std::pair{i, j}, std::pair{j, i}}) {
                // copies: add() may grow `all` and invalidate references
                const PolyMorphism mf = all[f];
                const PolyMorphism mg = all[g];
                if (node_count(mf) + node_count(mg) > node_budget_) continue;
                if (mf.source.size() - 1 + mg.source.size() > arity_bound_) continue;
                if (mf.target.size() + mg.target.size() - 1 > arity_bound_) continue;
                for (std::size_t si = 0; si < mf.source.size(); ++si)
                    for (std::size_t tj = 0; tj < mg.target.size(); ++tj) {
                        if (!(mf.source[si] == mg.target[tj])) continue;
                        add(compose_at(mf, si, mg, tj));
                    }
                if (f == g) break;
            }
        }
    }

    for (const auto& m : all) table_[{m.source, m.target}].push_back(m);
    for (auto& [k, v] : table_) std::sort(v.begin(), v.end());
}

}  // namespace polycat
