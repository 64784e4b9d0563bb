#include "polycat/envelope.hpp"

#include <algorithm>
#include <map>

#include "polycat/align.hpp"

namespace polycat {

// (the core seeds are plain P-morphisms; part seeds live at shifted
// coordinates, so alignment rotates the core toward them)

EnvelopeObject env_embed(std::shared_ptr<const Polycategory> p, const ObjectId& a) {
    ModuleMorphism gamma({{a, true}, {a, false}}, module_of(p), p->identity(a));
    return EnvelopeObject{a, false, covariant_rep(p, a), contravariant_rep(p, a),
                          std::move(gamma)};
}

EnvelopeObject env_dual(const EnvelopeObject& o) {
    std::vector<RepSource> swapped = {o.pairing.sources()[1], o.pairing.sources()[0]};
    ModuleMorphism gamma(std::move(swapped), o.pairing.target(), o.pairing.seed());
    return EnvelopeObject{o.object, !o.dualized, o.minus, o.plus, std::move(gamma)};
}

EnvHomReport env_hom_bijection(std::shared_ptr<const Polycategory> p, const Context& sources,
                               const Context& targets, std::size_t bound) {
    EnvHomReport report;
    const std::size_t m = sources.size(), n = targets.size();
    std::vector<PolyMorphism> homs = p->hom(sources, targets);
    report.p_count = homs.size();

    std::vector<RepSource> core_srcs;
    for (const auto& a : sources) core_srcs.push_back({a, true});
    for (const auto& b : targets) core_srcs.push_back({b, false});
    std::vector<ModuleMorphism> cores = enumerate_module_morphisms(core_srcs, module_of(p), bound);

    // Per-slot components, keyed by the realigned seed they pair to.
    std::vector<std::map<std::string, std::size_t>> plus_counts(n), minus_counts(m);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<RepSource> srcs = core_srcs;
        srcs.erase(srcs.begin() + static_cast<std::ptrdiff_t>(m + j));
        for (const auto& mm : enumerate_module_morphisms(srcs, covariant_rep(p, targets[j]), bound))
            ++plus_counts[j][mm.seed().key];
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<RepSource> srcs = core_srcs;
        srcs.erase(srcs.begin() + static_cast<std::ptrdiff_t>(i));
        for (const auto& mm :
             enumerate_module_morphisms(srcs, contravariant_rep(p, sources[i]), bound))
            ++minus_counts[i][mm.seed().key];
    }

    std::vector<std::string> realized;  // seeds of cores extending to full families
    for (const auto& core : cores) {
        std::size_t families = 1;
        for (std::size_t j = 0; j < n; ++j) {
            // a part's seed is the core with target slot j rotated last
            std::string want =
                p->permute(core.seed(), Permutation::identity(m), move_to_end(n, j)).key;
            auto it = plus_counts[j].find(want);
            families *= it == plus_counts[j].end() ? 0 : it->second;
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::string want =
                p->permute(core.seed(), move_to_end(m, i), Permutation::identity(n)).key;
            auto it = minus_counts[i].find(want);
            families *= it == minus_counts[i].end() ? 0 : it->second;
        }
        report.env_count += families;
        if (families > 1) {
            report.why = "multiple families over core " + core.seed().key + " @ (" +
                         render(sources) + ";" + render(targets) + ")";
            return report;
        }
        if (families == 1) realized.push_back(core.seed().key);
    }
    // Extraction at identities must hit P's hom-set bijectively.
    std::vector<std::string> expected;
    for (const auto& f : homs) expected.push_back(f.key);
    std::sort(realized.begin(), realized.end());
    std::sort(expected.begin(), expected.end());
    if (realized != expected) {
        report.why = "extraction mismatch @ (" + render(sources) + ";" + render(targets) + ")";
        return report;
    }
    report.ok = report.env_count == report.p_count;
    if (!report.ok)
        report.why = "cardinality mismatch @ (" + render(sources) + ";" + render(targets) + ")";
    return report;
}

namespace {

std::size_t count_morphisms(const std::vector<RepSource>& srcs, ModulePtr target,
                            std::size_t bound) {
    return enumerate_module_morphisms(srcs, std::move(target), bound).size();
}

}  // namespace

PreservationReport check_j_preservation(std::shared_ptr<const Polycategory> p,
                                        const std::vector<ProductWitness>& j, std::size_t bound) {
    PreservationReport report;
    // Representable prefixes and shifted-P targets for the chains.
    std::vector<std::vector<RepSource>> prefixes = {{}};
    for (const auto& o : p->objects()) {
        prefixes.push_back({RepSource{o, true}});
        prefixes.push_back({RepSource{o, false}});
    }
    for (const auto& w : j) {
        std::string why;
        if (!check_representability(*p, w, bound, &why)) {
            report.ok = false;
            report.why = "witness for " + w.carrier.render() + " invalid: " + why;
            return report;
        }
        ObjectId probe = w.operands.empty() ? p->objects().front() : w.operands.front();
        std::vector<ModulePtr> targets = {module_of(p), shift(module_of(p), {probe}, {}),
                                          shift(module_of(p), {}, {probe})};
        const bool covariant = w.kind == ProductWitness::Kind::Tensor ||
                               w.kind == ProductWitness::Kind::Unit;
        if (w.kind == ProductWitness::Kind::Hom) {
            report.warnings.push_back("hom witness " + w.carrier.render() + " skipped");
            continue;
        }
        for (const auto& prefix : prefixes) {
            for (const auto& u : targets) {
                std::vector<RepSource> expanded = prefix;
                for (const auto& op : w.operands) expanded.push_back({op, covariant});
                std::vector<RepSource> collapsed = prefix;
                collapsed.push_back({w.carrier, covariant});
                Context pi, sigma;
                (covariant ? pi : sigma) = w.operands;
                Context cpi, csigma;
                (covariant ? cpi : csigma) = Context{w.carrier};
                std::size_t c1, c2, c3, c4;
                try {
                    c1 = count_morphisms(expanded, u, bound);
                    c2 = count_morphisms(prefix, shift(u, pi, sigma), bound);
                    c3 = count_morphisms(prefix, shift(u, cpi, csigma), bound);
                    c4 = count_morphisms(collapsed, u, bound);
                } catch (const ArityBoundError&) {
                    continue;  // this instantiation overruns the base bound
                }
                if (c1 != c2 || c2 != c3 || c3 != c4) {
                    report.ok = false;
                    report.why = "chain broken for " + w.carrier.render() + ": " +
                                 std::to_string(c1) + "/" + std::to_string(c2) + "/" +
                                 std::to_string(c3) + "/" + std::to_string(c4);
                    return report;
                }
            }
        }
    }
    return report;
}

PreservationReport check_k_preservation(std::shared_ptr<const Polycategory> p,
                                        const std::vector<Cone>& k, std::size_t bound,
                                        bool counary_support) {
    PreservationReport report;
    for (const auto& cone : k)
        if (cone.diagram.empty())
            report.warnings.push_back("empty diagram at apex " + cone.apex.render());
    std::string why;
    if (!check_pjk_module(*module_of(p), k, bound, &why, counary_support)) {
        report.ok = false;
        report.why = why;
    }
    return report;
}

bool check_chu_limit_formulas(const PosetalPolycategory& p, const std::vector<Cone>& k,
                              std::string* why) {
    const Quantale& q = p.quantale();
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const auto& cone : k) {
        if (cone.is_limit) {
            std::optional<std::string> acc = q.top();
            for (const auto& d : cone.diagram) {
                if (!acc) return fail("no meet available");
                acc = q.meet(*acc, d.name);
            }
            if (!acc || *acc != cone.apex.name)
                return fail("limit apex is not the meet at " + cone.apex.render());
            // Chu formula: the minus component is the join of the duals.
            std::optional<std::string> jn = q.bottom();
            for (const auto& d : cone.diagram) {
                if (!jn) return fail("no join available");
                jn = q.join(*jn, p.negate(d.name));
            }
            if (!jn || *jn != p.negate(cone.apex.name))
                return fail("minus component of the limit is not the join of duals");
            for (const auto& x : q.elements()) {
                bool into_apex = p.holds({ObjectId{x}}, {cone.apex});
                bool into_all = true;
                for (const auto& d : cone.diagram) into_all &= p.holds({ObjectId{x}}, {d});
                if (into_apex != into_all)
                    return fail("limit not universal at " + x);
            }
        } else {
            std::optional<std::string> acc = q.bottom();
            for (const auto& d : cone.diagram) {
                if (!acc) return fail("no join available");
                acc = q.join(*acc, d.name);
            }
            if (!acc || *acc != cone.apex.name)
                return fail("colimit apex is not the join at " + cone.apex.render());
            std::optional<std::string> mt = q.top();
            for (const auto& d : cone.diagram) {
                if (!mt) return fail("no meet available");
                mt = q.meet(*mt, p.negate(d.name));
            }
            if (!mt || *mt != p.negate(cone.apex.name))
                return fail("minus component of the colimit is not the meet of duals");
            for (const auto& x : q.elements()) {
                bool from_apex = p.holds({cone.apex}, {ObjectId{x}});
                bool from_all = true;
                for (const auto& d : cone.diagram) from_all &= p.holds({d}, {ObjectId{x}});
                if (from_apex != from_all)
                    return fail("colimit not universal at " + x);
            }
        }
    }
    return true;
}

}  // namespace polycat
