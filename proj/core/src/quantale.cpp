#include "polycat/quantale.hpp"

#include <algorithm>
#include <sstream>

#include "polycat/errors.hpp"

namespace polycat {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Quantale::Quantale(std::vector<std::string> elements,
                   std::set<std::pair<std::string, std::string>> leq_pairs,
                   std::map<std::pair<std::string, std::string>, std::string> tensor_table,
                   std::string unit)
    : elems_(std::move(elements)), leq_(std::move(leq_pairs)), ten_(std::move(tensor_table)),
      unit_(std::move(unit)) {
    for (const auto& e : elems_) leq_.insert({e, e});
    // transitive closure
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : std::set(leq_))
            for (const auto& [c, d] : std::set(leq_))
                if (b == c && leq_.insert({a, d}).second) changed = true;
    }
    for (const auto& a : elems_)
        for (const auto& b : elems_)
            if (a != b && leq(a, b) && leq(b, a))
                throw ParseError("quantale order not antisymmetric: " + a + ", " + b);
    // fill commutative closure of the tensor table
    for (const auto& a : elems_)
        for (const auto& b : elems_) {
            if (ten_.count({a, b})) continue;
            auto it = ten_.find({b, a});
            if (it == ten_.end()) throw ParseError("quantale tensor table incomplete at " + a + "." + b);
            ten_[{a, b}] = it->second;
        }
    for (const auto& a : elems_) {
        if (tensor(a, unit_) != a) throw ParseError("quantale unit law fails at " + a);
        for (const auto& b : elems_) {
            if (tensor(a, b) != tensor(b, a)) throw ParseError("quantale tensor not commutative");
            for (const auto& c : elems_) {
                if (tensor(tensor(a, b), c) != tensor(a, tensor(b, c)))
                    throw ParseError("quantale tensor not associative");
                if (leq(a, b) && !leq(tensor(a, c), tensor(b, c)))
                    throw ParseError("quantale tensor not monotone");
            }
        }
    }
    // residuals as joins of {x : x.a <= b}
    for (const auto& a : elems_)
        for (const auto& b : elems_) {
            std::vector<std::string> ok;
            for (const auto& x : elems_)
                if (leq(tensor(x, a), b)) ok.push_back(x);
            const std::string* best = nullptr;
            for (const auto& x : ok) {
                bool ge_all = true;
                for (const auto& y : ok)
                    if (!leq(y, x)) { ge_all = false; break; }
                if (ge_all) { best = &x; break; }
            }
            if (!best) throw ParseError("quantale residual " + a + " -o " + b + " does not exist");
            res_[{a, b}] = *best;
        }
    // adjunction check is then definitional, but verify anyway
    for (const auto& x : elems_)
        for (const auto& a : elems_)
            for (const auto& b : elems_)
                if (leq(tensor(x, a), b) != leq(x, residual(a, b)))
                    throw ParseError("quantale residuation adjunction fails");
}

std::size_t Quantale::index(const std::string& e) const {
    auto it = std::find(elems_.begin(), elems_.end(), e);
    if (it == elems_.end()) throw ParseError("unknown quantale element: " + e);
    return static_cast<std::size_t>(it - elems_.begin());
}

bool Quantale::leq(const std::string& a, const std::string& b) const {
    index(a);
    index(b);
    return leq_.count({a, b}) > 0;
}

const std::string& Quantale::tensor(const std::string& a, const std::string& b) const {
    return ten_.at({a, b});
}

std::string Quantale::tensor_all(const std::vector<std::string>& xs) const {
    std::string acc = unit_;
    for (const auto& x : xs) acc = tensor(acc, x);
    return acc;
}

const std::string& Quantale::residual(const std::string& a, const std::string& b) const {
    return res_.at({a, b});
}

std::optional<std::string> Quantale::meet(const std::string& a, const std::string& b) const {
    std::vector<std::string> lower;
    for (const auto& x : elems_)
        if (leq(x, a) && leq(x, b)) lower.push_back(x);
    for (const auto& x : lower) {
        bool top_of_lower = true;
        for (const auto& y : lower)
            if (!leq(y, x)) { top_of_lower = false; break; }
        if (top_of_lower) return x;
    }
    return std::nullopt;
}

std::optional<std::string> Quantale::join(const std::string& a, const std::string& b) const {
    std::vector<std::string> upper;
    for (const auto& x : elems_)
        if (leq(a, x) && leq(b, x)) upper.push_back(x);
    for (const auto& x : upper) {
        bool bot_of_upper = true;
        for (const auto& y : upper)
            if (!leq(x, y)) { bot_of_upper = false; break; }
        if (bot_of_upper) return x;
    }
    return std::nullopt;
}

std::optional<std::string> Quantale::bottom() const {
    for (const auto& x : elems_) {
        bool ok = true;
        for (const auto& y : elems_)
            if (!leq(x, y)) { ok = false; break; }
        if (ok) return x;
    }
    return std::nullopt;
}

std::optional<std::string> Quantale::top() const {
    for (const auto& x : elems_) {
        bool ok = true;
        for (const auto& y : elems_)
            if (!leq(y, x)) { ok = false; break; }
        if (ok) return x;
    }
    return std::nullopt;
}

QuantaleFile parse_quantale(const std::string& text) {
    std::vector<std::string> elems;
    std::set<std::pair<std::string, std::string>> leq;
    std::map<std::pair<std::string, std::string>, std::string> ten;
    std::optional<std::string> unit, dual;

    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("quantale line " + std::to_string(line_no) + ": expected `key: ...`");
        std::string key = trim(line.substr(0, colon));
        std::string rest = trim(line.substr(colon + 1));
        std::istringstream rs(rest);
        if (key == "elems") {
            std::string e;
            while (rs >> e) elems.push_back(e);
        } else if (key == "leq") {
            std::string a, b;
            if (!(rs >> a >> b)) throw ParseError("quantale line " + std::to_string(line_no) + ": leq needs two elements");
            leq.insert({a, b});
        } else if (key == "ten") {
            std::string a, b, eq, c;
            if (!(rs >> a >> b >> eq >> c) || eq != "=")
                throw ParseError("quantale line " + std::to_string(line_no) + ": expected `ten: a b = c`");
            ten[{a, b}] = c;
        } else if (key == "unit") {
            rs >> *(unit = std::string{});
        } else if (key == "dual") {
            rs >> *(dual = std::string{});
        } else {
            throw ParseError("quantale line " + std::to_string(line_no) + ": unknown key " + key);
        }
    }
    if (elems.empty()) throw ParseError("quantale file: no elements");
    if (!unit || unit->empty()) throw ParseError("quantale file: missing unit");
    return QuantaleFile{Quantale(std::move(elems), std::move(leq), std::move(ten), *unit), dual};
}

PosetalPolycategory::PosetalPolycategory(Quantale q, std::optional<std::string> dualizer,
                                         std::size_t arity_bound)
    : q_(std::move(q)), dualizer_(std::move(dualizer)), arity_bound_(arity_bound) {
    if (dualizer_) {
        for (const auto& a : q_.elements()) {
            if (negate(negate(a)) != a)
                throw NotStarAutonomous("double negation fails at element " + a);
        }
    }
}

std::vector<ObjectId> PosetalPolycategory::objects() const {
    std::vector<ObjectId> out;
    for (const auto& e : q_.elements()) out.emplace_back(e);
    return out;
}

std::string PosetalPolycategory::negate(const std::string& a) const {
    if (!dualizer_) throw NotStarAutonomous("posetal model has no dualizer");
    return q_.residual(a, *dualizer_);
}

std::string PosetalPolycategory::par_all(const Context& c) const {
    // par(Delta) = neg(tensor(neg Delta)); par() = bot0, par(a) = a
    if (c.size() == 1) return c[0].name;
    std::vector<std::string> negs;
    for (const auto& o : c) negs.push_back(negate(o.name));
    return negate(q_.tensor_all(negs));
}

bool PosetalPolycategory::holds(const Context& source, const Context& target) const {
    std::vector<std::string> src;
    for (const auto& o : source) src.push_back(o.name);
    std::string lhs = q_.tensor_all(src);
    if (counary()) {
        if (target.size() != 1) return false;
        return q_.leq(lhs, target[0].name);
    }
    return q_.leq(lhs, par_all(target));
}

PolyMorphism PosetalPolycategory::token(const Context& src, const Context& tgt) const {
    return PolyMorphism{src, tgt, "<=", nullptr};
}

std::vector<PolyMorphism> PosetalPolycategory::hom(const Context& source,
                                                   const Context& target) const {
    require_bound(source, target);
    if (holds(source, target)) return {token(source, target)};
    return {};
}

PolyMorphism PosetalPolycategory::identity(const ObjectId& a) const {
    return token({a}, {a});
}

PolyMorphism PosetalPolycategory::compose_at(const PolyMorphism& f, std::size_t f_src_pos,
                                             const PolyMorphism& g, std::size_t g_tgt_pos) const {
    require_cut(f, f_src_pos, g, g_tgt_pos);
    Context src = concat(erased(f.source, f_src_pos), g.source);
    Context tgt = concat(f.target, erased(g.target, g_tgt_pos));
    if (!holds(src, tgt))
        throw TypeMismatchError("posetal composition produced an invalid inequality");
    return token(src, tgt);
}

PolyMorphism PosetalPolycategory::permute(const PolyMorphism& f, const Permutation& src_perm,
                                          const Permutation& tgt_perm) const {
    return token(apply(src_perm, f.source), apply(tgt_perm, f.target));
}

std::optional<ObjectId> PosetalPolycategory::dual(const ObjectId& a) const {
    if (!dualizer_) return std::nullopt;
    return ObjectId{negate(a.name)};
}

PosetalPolycategory counary_from_smc_poset(Quantale q, std::size_t arity_bound) {
    return PosetalPolycategory(std::move(q), std::nullopt, arity_bound);
}

}  // namespace polycat
