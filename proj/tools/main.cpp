// polycat: command-line workbench over the polycat library.
//
// Subcommands: laws, fsp, yoneda-check, chu-check, envelope-check,
// glue-check, prove, conserve. Exit codes: 0 all checks passed /
// provable, 1 a check failed or the sequent is unprovable / mismatches
// found, 2 usage, parse, or resource errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polycat/chu.hpp"
#include "polycat/circuit.hpp"
#include "polycat/envelope.hpp"
#include "polycat/errors.hpp"
#include "polycat/finset.hpp"
#include "polycat/fsp.hpp"
#include "polycat/gluing.hpp"
#include "polycat/laws.hpp"
#include "polycat/linlog.hpp"
#include "polycat/module.hpp"
#include "polycat/quantale.hpp"
#include "polycat/signature.hpp"

using nlohmann::json;
using namespace polycat;

namespace {

// --- reporting ----------------------------------------------------------

class Reporter {
public:
    explicit Reporter(bool as_json) : json_(as_json) {}

    void header(const std::string& command, const json& extra = json::object()) {
        if (json_) {
            json j = {{"type", "header"}, {"command", command}};
            for (auto& [k, v] : extra.items()) j[k] = v;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "== " << command;
            for (auto& [k, v] : extra.items())
                std::cout << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
            std::cout << " ==\n";
        }
    }

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        ++total_;
        if (!ok) ++failed_;
        if (json_) {
            json j = {{"type", "check"}, {"name", name}, {"passed", ok}};
            if (!detail.empty()) j["detail"] = detail;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (ok ? "[pass] " : "[FAIL] ") << name;
            if (!detail.empty()) std::cout << ": " << detail;
            std::cout << "\n";
        }
    }

    void note(const std::string& text) {
        if (json_)
            std::cout << json{{"type", "note"}, {"text", text}}.dump() << "\n";
        else
            std::cout << "note: " << text << "\n";
    }

    void raw(const json& j, const std::string& text) {
        if (json_)
            std::cout << j.dump() << "\n";
        else
            std::cout << text << "\n";
    }

    int finish() {
        if (json_)
            std::cout << json{{"type", "summary"},
                              {"checks", total_},
                              {"failed", failed_}}
                             .dump()
                      << "\n";
        else
            std::cout << (failed_ == 0 ? "all " + std::to_string(total_) + " checks passed"
                                       : std::to_string(failed_) + " of " +
                                             std::to_string(total_) + " checks FAILED")
                      << "\n";
        return failed_ == 0 ? 0 : 1;
    }

private:
    bool json_;
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
};

// --- global wall-clock guard (POLYCAT_BUDGET_MS) ------------------------

struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;

    static Deadline from_env() {
        Deadline d;
        if (const char* ms = std::getenv("POLYCAT_BUDGET_MS"))
            d.at = std::chrono::steady_clock::now() + std::chrono::milliseconds(std::atoll(ms));
        return d;
    }

    void poll() const {
        if (at && std::chrono::steady_clock::now() > *at)
            throw OracleTimeout("POLYCAT_BUDGET_MS exceeded");
    }
};

// --- instances ----------------------------------------------------------

const std::map<std::string, std::string> kBuiltins = {
    {"boolean",
     "elems: 0 1\nleq: 0 1\n"
     "ten: 0 0 = 0\nten: 0 1 = 0\nten: 1 1 = 1\nunit: 1\ndual: 0\n"},
    {"lukasiewicz3",
     "elems: 0 h 1\nleq: 0 h\nleq: h 1\n"
     "ten: 0 0 = 0\nten: 0 h = 0\nten: 0 1 = 0\n"
     "ten: h h = 0\nten: h 1 = h\nten: 1 1 = 1\nunit: 1\ndual: 0\n"},
    {"chain3",
     "elems: 0 m 1\nleq: 0 m\nleq: m 1\n"
     "ten: 0 0 = 0\nten: 0 m = 0\nten: 0 1 = 0\n"
     "ten: m m = m\nten: m 1 = m\nten: 1 1 = 1\nunit: 1\n"},
    {"free-arrow", "obj A\nobj B\ngen f : A -> B\n"},
    {"free-loop", "obj A\ngen u : . -> A\ngen v : A -> .\n"},
    {"free-split",
     "obj A\nobj B\nobj C\nobj D\n"
     "gen s : A -> C, D\ngen m : C, B -> A\n"},
};

struct Instance {
    std::string name;
    std::shared_ptr<const Polycategory> poly;
    std::shared_ptr<const PosetalPolycategory> posetal;  // set when quantale-backed
};

std::string instance_text(const std::string& spec) {
    if (auto it = kBuiltins.find(spec); it != kBuiltins.end()) return it->second;
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot open instance '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance load_instance(const std::string& spec, std::size_t bound) {
    Instance inst;
    inst.name = spec;
    std::string text = instance_text(spec);
    if (text.find("elems:") != std::string::npos) {
        QuantaleFile qf = parse_quantale(text);
        auto p = std::make_shared<PosetalPolycategory>(qf.quantale, qf.dualizer, bound);
        inst.posetal = p;
        inst.poly = p;
    } else {
        inst.poly = std::make_shared<FreePolycategory>(parse_signature(text), bound, 3);
    }
    return inst;
}

// The finite-set Chu instance of the corpus. The component carriers are
// singletons and only K has two elements: function-set sizes stay flat
// under the context crossings of the law suite (a two-element carrier
// would put 2^(2^6) candidate cores at a (3;3) boundary), while the
// two-valued dualizing presheaf keeps pairing compatibility nontrivial.
std::shared_ptr<ChuPolycategory> make_finset_chu(std::size_t bound, bool terminal_bot) {
    auto e = std::make_shared<FinSetMulticategory>(
        std::map<std::string, std::vector<std::string>>{{"K", {"0", "1"}},
                                                        {"Ap", {"a"}},
                                                        {"Am", {"m"}},
                                                        {"Bp", {"c"}},
                                                        {"Bm", {"d"}}},
        2 * bound + 2);
    ModulePtr bot = terminal_bot ? terminal_module(e) : shift(module_of(e), {}, {ObjectId("K")});
    Context ca = {ObjectId("Ap"), ObjectId("Am")};
    Context cb = {ObjectId("Bp"), ObjectId("Bm")};
    PolyMorphism pa = terminal_bot
                          ? bot->value_at(ca, {}).at(0)
                          : as_bot_element(*bot, ca, e->function(ca, ObjectId("K"), {"1"}).key);
    PolyMorphism pb = terminal_bot
                          ? bot->value_at(cb, {}).at(0)
                          : as_bot_element(*bot, cb, e->function(cb, ObjectId("K"), {"0"}).key);
    std::vector<ChuObject> objs = {{"A", ObjectId("Ap"), ObjectId("Am"), pa},
                                   {"B", ObjectId("Bp"), ObjectId("Bm"), pb}};
    return std::make_shared<ChuPolycategory>(e, bot, objs, bound);
}

// `embedded_only` registers one maximal triple (x, x, x -o d0) per
// element instead of every valid triple: contexts over 4 signed objects
// instead of 16 keep a bound-3 law sweep in the corpus time budget.
std::shared_ptr<GluedPolycategory> make_glued(const std::string& spec,
                                              PosetalGlueBuilder::BotMode mode, std::size_t bound,
                                              bool embedded_only) {
    QuantaleFile qf = parse_quantale(instance_text(spec));
    if (!qf.dualizer) throw std::runtime_error("instance '" + spec + "' declares no dualizer");
    PosetalGlueBuilder b(qf.quantale, *qf.dualizer, mode, bound);
    if (embedded_only)
        for (const auto& x : qf.quantale.elements())
            b.add(x, x, qf.quantale.residual(x, *qf.dualizer));
    else
        b.add_all();
    return b.build();
}

void report_laws(Reporter& rep, const Deadline& dl, const std::string& name,
                 const Polycategory& p, std::size_t bound, std::size_t samples) {
    dl.poll();
    LawReport r = check_laws(p, bound, samples);
    for (const auto& res : r.results) rep.check(name + "/" + res.law, res.passed, res.counterexample);
}

Context parse_context_list(const std::string& text) {
    Context out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        std::string tok = item.substr(b, e - b + 1);
        if (!tok.empty() && tok[0] == '~')
            out.emplace_back(tok.substr(1), true);
        else
            out.emplace_back(tok);
    }
    return out;
}

std::pair<Context, Context> parse_boundary(const std::string& text) {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos)
        throw std::runtime_error("boundary must be written 'Gamma ; Delta': " + text);
    return {parse_context_list(text.substr(0, semi)), parse_context_list(text.substr(semi + 1))};
}

// --- subcommands --------------------------------------------------------

int run_laws(Reporter& rep, const Deadline& dl, const std::vector<std::string>& instances,
             std::size_t bound, std::size_t samples) {
    rep.header("laws", {{"bound", bound}, {"samples", samples}});
    std::vector<std::string> specs = instances;
    if (specs.empty())
        specs = {"free-arrow", "free-loop", "free-split", "boolean",
                 "lukasiewicz3", "chu-finset", "glue-boolean"};
    for (const auto& spec : specs) {
        if (spec == "chu-finset") {
            report_laws(rep, dl, spec, *make_finset_chu(bound, false), bound, samples);
        } else if (spec == "glue-boolean") {
            report_laws(rep, dl, spec,
                        *make_glued("boolean", PosetalGlueBuilder::BotMode::Representable, bound,
                                    true),
                        bound, samples);
        } else {
            Instance inst = load_instance(spec, bound);
            report_laws(rep, dl, spec, *inst.poly, bound, samples);
        }
    }
    return rep.finish();
}

int run_fsp(Reporter& rep, const Deadline& dl, const std::string& spec, std::size_t bound,
            const std::vector<std::string>& boundaries) {
    rep.header("fsp", {{"instance", spec}, {"bound", bound}});
    Instance inst = load_instance(spec, 2 * bound);
    FspPolycategory fsp(inst.poly, bound);

    auto show = [&](const Context& src, const Context& tgt) {
        dl.poll();
        std::size_t n = fsp.hom(src, tgt).size();
        rep.raw(json{{"type", "hom"},
                     {"source", render(src)},
                     {"target", render(tgt)},
                     {"count", n}},
                "|fsp(" + render(src) + " ; " + render(tgt) + ")| = " + std::to_string(n));
        return n;
    };

    if (!boundaries.empty()) {
        for (const auto& b : boundaries) {
            auto [src, tgt] = parse_boundary(b);
            show(src, tgt);
        }
    } else {
        std::size_t shown = 0;
        for (const auto& [src, tgt] : enumerate_context_pairs(fsp.objects(), bound)) {
            dl.poll();
            if (!fsp.hom(src, tgt).empty()) {
                show(src, tgt);
                ++shown;
            }
        }
        rep.note(std::to_string(shown) + " nonempty hom-sets up to total arity " +
                 std::to_string(bound));
    }

    std::string fail = check_fsp_embedding(*inst.poly, fsp, bound);
    rep.check("embedding full and faithful", fail.empty(), fail);
    return rep.finish();
}

int run_yoneda(Reporter& rep, const Deadline& dl, const std::string& spec, std::size_t bound) {
    rep.header("yoneda-check", {{"instance", spec}, {"bound", bound}});
    Instance inst = load_instance(spec, bound + 2);
    auto p = inst.poly;
    ModulePtr v = module_of(p);
    auto objs = p->objects();

    // round trips of the forward/backward maps and the hom-set bijection
    for (const auto& a : objs)
        for (const auto& b : objs) {
            dl.poll();
            ModulePtr target = shift(v, {}, {b});
            auto ms = enumerate_module_morphisms({{a, true}}, target, bound);
            std::size_t expect = p->hom({a}, {b}).size();
            bool round = true;
            for (const auto& phi : ms) {
                ModuleMorphism back = yoneda_backward({a, true}, target, yoneda_forward(phi));
                if (!(back == phi)) round = false;
            }
            rep.check("yoneda1 Mod(y_" + a.render() + "; P[;" + b.render() + "])",
                      ms.size() == expect && round,
                      std::to_string(ms.size()) + " morphisms vs hom size " +
                          std::to_string(expect));
        }
    for (const auto& a : objs)
        for (const auto& b : objs) {
            dl.poll();
            ModulePtr target = shift(v, {b}, {});
            auto ms = enumerate_module_morphisms({{a, false}}, target, bound);
            std::size_t expect = p->hom({b}, {a}).size();
            rep.check("yoneda1 Mod(y^_" + a.render() + "; P[" + b.render() + ";])",
                      ms.size() == expect,
                      std::to_string(ms.size()) + " morphisms vs hom size " +
                          std::to_string(expect));
        }

    // moving a representable source across as a shift of the target
    for (const auto& g : objs)
        for (const auto& a : objs) {
            dl.poll();
            auto lhs = enumerate_module_morphisms({{g, true}, {a, true}}, v, bound);
            auto rhs = enumerate_module_morphisms({{g, true}}, shift(v, {a}, {}), bound);
            rep.check("yoneda4 (y_" + g.render() + ", y_" + a.render() + ")",
                      lhs.size() == rhs.size(),
                      std::to_string(lhs.size()) + " vs " + std::to_string(rhs.size()));
        }

    // internal hom out of a representable is the opposite representable
    for (const auto& a : objs) {
        dl.poll();
        ModulePtr rep_mod = contravariant_rep(p, a);
        bool ok = true;
        std::string why;
        for (const auto& [gamma, delta] : enumerate_context_pairs(objs, bound)) {
            std::size_t l = internal_hom_value({a, true}, v, gamma, delta).elements.size();
            std::size_t r = rep_mod->value_at(gamma, delta).size();
            if (l != r) {
                ok = false;
                why = "at (" + render(gamma) + ";" + render(delta) + "): " + std::to_string(l) +
                      " vs " + std::to_string(r);
                break;
            }
        }
        rep.check("yoneda3 (y_" + a.render() + " -o P) = y^_" + a.render(), ok, why);
    }
    return rep.finish();
}

int run_chu(Reporter& rep, const Deadline& dl, const std::string& espec, const std::string& botspec,
            std::size_t max_size, std::size_t samples) {
    rep.header("chu-check", {{"e", espec}, {"bot", botspec}, {"max_size", max_size}});
    std::shared_ptr<const ChuPolycategory> chu;
    if (espec == "finset") {
        chu = make_finset_chu(max_size, botspec == "terminal");
    } else {
        QuantaleFile qf = parse_quantale(instance_text(espec));
        auto e = std::make_shared<PosetalPolycategory>(
            counary_from_smc_poset(qf.quantale, 2 * max_size + 2));
        ModulePtr bot;
        if (botspec == "terminal") {
            bot = terminal_module(e);
        } else {
            std::string b = botspec.empty() ? qf.dualizer.value_or(qf.quantale.elements().front())
                                            : botspec;
            bot = shift(module_of(e), {}, {ObjectId(b)});
        }
        std::vector<ChuObject> objs;
        for (const auto& x : qf.quantale.elements())
            for (const auto& y : qf.quantale.elements()) {
                auto vals = bot->value_at({ObjectId(x), ObjectId(y)}, {});
                if (vals.empty()) continue;
                objs.push_back({x + "|" + y, ObjectId(x), ObjectId(y), vals.at(0)});
            }
        chu = std::make_shared<ChuPolycategory>(e, bot, objs, max_size);
    }
    rep.note(std::to_string(chu->objects().size() / 2) + " registered objects (plus duals)");
    report_laws(rep, dl, "chu", *chu, max_size, samples);
    for (const auto& o : chu->objects()) {
        if (o.bar) continue;
        dl.poll();
        std::string why;
        bool ok = check_duality(*chu, o, max_size, &why);
        rep.check("duality " + o.render(), ok, why);
    }
    return rep.finish();
}

int run_envelope(Reporter& rep, const Deadline& dl, const std::string& spec, std::size_t bound,
                 bool with_j, bool with_k) {
    rep.header("envelope-check", {{"instance", spec},
                                  {"bound", bound},
                                  {"with_j", with_j},
                                  {"with_k", with_k}});
    Instance inst = load_instance(spec, 2 * bound + 2);
    auto p = inst.poly;

    std::size_t pairs = 0;
    bool all_ok = true;
    std::string first_why;
    for (const auto& [src, tgt] : enumerate_context_pairs(p->objects(), bound)) {
        dl.poll();
        EnvHomReport r = env_hom_bijection(p, src, tgt, bound);
        ++pairs;
        if (!r.ok && all_ok) {
            all_ok = false;
            first_why = "(" + render(src) + ";" + render(tgt) + "): " + r.why + " (env " +
                        std::to_string(r.env_count) + " vs P " + std::to_string(r.p_count) + ")";
        }
    }
    rep.check("env hom bijection on " + std::to_string(pairs) + " context pairs", all_ok,
              first_why);

    if (with_j) {
        if (!inst.posetal) {
            rep.note("with-j skipped: instance declares no distinguished products");
        } else {
            const Quantale& q = inst.posetal->quantale();
            std::vector<ProductWitness> j;
            for (const auto& a : q.elements())
                for (const auto& b : q.elements()) {
                    std::string c = q.tensor(a, b);
                    j.push_back({ProductWitness::Kind::Tensor,
                                 {ObjectId(a), ObjectId(b)},
                                 ObjectId(c),
                                 p->hom({ObjectId(a), ObjectId(b)}, {ObjectId(c)}).at(0)});
                }
            j.push_back({ProductWitness::Kind::Unit,
                         {},
                         ObjectId(q.unit()),
                         p->hom({}, {ObjectId(q.unit())}).at(0)});
            dl.poll();
            PreservationReport r = check_j_preservation(p, j, bound);
            for (const auto& w : r.warnings) rep.note(w);
            rep.check("embedding preserves distinguished products", r.ok, r.why);
        }
    }
    if (with_k) {
        if (!inst.posetal) {
            rep.note("with-k skipped: instance declares no distinguished cones");
        } else {
            const Quantale& q = inst.posetal->quantale();
            std::vector<Cone> k;
            for (const auto& a : q.elements())
                for (const auto& b : q.elements()) {
                    auto m = q.meet(a, b);
                    if (!m) continue;
                    k.push_back({true,
                                 ObjectId(*m),
                                 {ObjectId(a), ObjectId(b)},
                                 {p->hom({ObjectId(*m)}, {ObjectId(a)}).at(0),
                                  p->hom({ObjectId(*m)}, {ObjectId(b)}).at(0)}});
                }
            dl.poll();
            PreservationReport r =
                check_k_preservation(p, k, bound, inst.posetal->counary());
            for (const auto& w : r.warnings) rep.note(w);
            rep.check("embedding preserves distinguished cones", r.ok, r.why);
        }
    }
    return rep.finish();
}

int run_glue(Reporter& rep, const Deadline& dl, const std::string& spec, const std::string& psi,
             std::size_t bound, std::size_t samples) {
    rep.header("glue-check", {{"instance", spec}, {"psi", psi}, {"bound", bound}});

    if (psi != "identity" && psi != "terminal") {
        // a presheaf-map file: lines "key -> key" over the representable
        // presheaf at the dualizer; only naturality is checked.
        QuantaleFile qf = parse_quantale(instance_text(spec));
        if (!qf.dualizer) throw std::runtime_error("instance declares no dualizer");
        std::ifstream in(psi);
        if (!in) throw std::runtime_error("cannot open psi map file '" + psi + "'");
        std::map<std::string, std::string> table;
        std::string line;
        while (std::getline(in, line)) {
            std::size_t arrow = line.find("->");
            if (arrow == std::string::npos) continue;
            auto trim = [](std::string s) {
                std::size_t b = s.find_first_not_of(" \t");
                std::size_t e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            table[trim(line.substr(0, arrow))] = trim(line.substr(arrow + 2));
        }
        auto e = std::make_shared<PosetalPolycategory>(
            counary_from_smc_poset(qf.quantale, 2 * bound + 2));
        ModulePtr bot = shift(module_of(e), {}, {ObjectId(*qf.dualizer)});
        PresheafMap map{bot, bot, [bot, table](const PolyMorphism& x) {
                            auto it = table.find(x.key);
                            if (it == table.end()) return x;
                            for (const auto& y : bot->value_at(x.source, x.target))
                                if (y.key == it->second) return y;
                            throw TypeMismatchError("psi image '" + it->second +
                                                    "' not found at (" + render(x.source) + ";" +
                                                    render(x.target) + ")");
                        }};
        std::string why;
        bool ok = check_presheaf_map(map, *e, bound, &why);
        rep.check("psi naturality (" + std::to_string(table.size()) + " mapped keys)", ok, why);
        rep.note("custom psi: naturality only; structure formulas need identity or terminal");
        return rep.finish();
    }

    auto mode = psi == "identity" ? PosetalGlueBuilder::BotMode::Representable
                                  : PosetalGlueBuilder::BotMode::Terminal;
    QuantaleFile qf = parse_quantale(instance_text(spec));
    if (!qf.dualizer) throw std::runtime_error("instance declares no dualizer");
    auto gl = make_glued(spec, mode, bound, false);
    rep.note(std::to_string(gl->objects().size() / 2) + " glued objects (plus duals)");
    report_laws(rep, dl, "gl", *gl, bound, samples);
    std::size_t duality_checked = 0;
    for (const auto& o : gl->objects()) {
        if (o.bar || duality_checked >= 12) continue;
        dl.poll();
        std::string why;
        rep.check("duality " + o.render(), check_duality(*gl, o, std::min<std::size_t>(bound, 2), &why),
                  why);
        ++duality_checked;
    }

    // structure formulas on a two-object sub-instance
    const Quantale& q = qf.quantale;
    const std::string& d0 = *qf.dualizer;
    PosetalGlueBuilder sb(q, d0, mode, bound);
    std::string x = q.elements().front();
    std::string y = q.elements().back();
    auto emb = [&](const std::string& v) { return sb.add(v, v, q.residual(v, d0)); };
    ObjectId ia = emb(x), ib = emb(y);
    ObjectId t = sb.tensor(ia, ib);
    ObjectId c = sb.cotensor(ia, ib);
    ObjectId h = sb.hom_object(ia, ib);
    ObjectId u = sb.unit();
    ObjectId cu = sb.counit();
    auto gl2 = sb.build();
    auto structural = [&](ProductWitness::Kind kind, std::vector<ObjectId> ops,
                          const ObjectId& carrier, const std::string& name) {
        dl.poll();
        std::string why;
        bool ok = check_representability(*gl2, sb.witness(*gl2, kind, std::move(ops), carrier),
                                         std::min<std::size_t>(bound, 2), &why);
        rep.check(name, ok, why);
    };
    structural(ProductWitness::Kind::Tensor, {ia, ib}, t, "tensor representable");
    structural(ProductWitness::Kind::Cotensor, {ia, ib}, c, "cotensor representable");
    structural(ProductWitness::Kind::Hom, {ia, ib}, h, "hom representable");
    structural(ProductWitness::Kind::Unit, {}, u, "unit representable");
    structural(ProductWitness::Kind::Counit, {}, cu, "counit representable");
    return rep.finish();
}

json derivation_json(const linlog::Derivation& d) {
    json prem = json::array();
    for (const auto& p : d.premises) prem.push_back(derivation_json(p));
    return {{"rule", d.rule}, {"conclusion", linlog::render(d.conclusion)}, {"premises", prem}};
}

void print_derivation(const linlog::Derivation& d, std::size_t depth) {
    std::cout << std::string(2 * depth, ' ') << d.rule << "  " << linlog::render(d.conclusion)
              << "\n";
    for (const auto& p : d.premises) print_derivation(p, depth + 1);
}

int run_prove(Reporter& rep, bool classical, const std::string& text, std::size_t budget,
              bool as_json) {
    rep.header("prove", {{"calculus", classical ? "classical" : "intuitionistic"},
                         {"sequent", text}});
    linlog::Sequent s = linlog::parse_sequent(text);
    auto d = classical ? linlog::prove_classical(s, budget) : linlog::prove_intuitionistic(s, budget);
    if (!d) {
        rep.raw(json{{"type", "result"}, {"provable", false}}, "unprovable");
        return 1;
    }
    std::string why;
    bool checked = linlog::check_derivation(*d, classical, &why);
    if (as_json) {
        std::cout << json{{"type", "result"},
                          {"provable", true},
                          {"checked", checked},
                          {"derivation", derivation_json(*d)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "provable; derivation (" << (checked ? "re-checked" : "CHECK FAILED: " + why)
                  << "):\n";
        print_derivation(*d, 1);
    }
    return checked ? 0 : 1;
}

int run_conserve(Reporter& rep, std::size_t atoms, std::size_t size_bound, bool with_zero,
                 std::size_t sample, std::uint64_t seed, std::size_t budget,
                 std::size_t max_corpus) {
    json hdr = {{"atoms", atoms}, {"size", size_bound}, {"with_zero", with_zero}, {"seed", seed}};
    if (sample > 0) hdr["sample"] = sample;
    rep.header("conserve", hdr);

    linlog::HarnessOptions opts;
    opts.atom_count = atoms;
    opts.size_bound = size_bound;
    opts.with_zero = with_zero;
    opts.budget = budget;
    opts.max_corpus = max_corpus;
    if (sample > 0) opts.sample = {{sample, seed}};
    auto report = linlog::conservativity_harness(opts);

    if (report.truncated)
        rep.note("corpus truncated at " + std::to_string(max_corpus) + " sequents; partial report");
    for (const auto& m : report.mismatches)
        rep.raw(json{{"type", "mismatch"},
                     {"sequent", linlog::render(m.sequent)},
                     {"classical", m.classical_provable},
                     {"intuitionistic", m.intuitionistic_provable}},
                "mismatch: " + linlog::render(m.sequent) +
                    "  classical=" + (m.classical_provable ? "provable" : "unprovable") +
                    "  intuitionistic=" + (m.intuitionistic_provable ? "provable" : "unprovable"));
    rep.check(std::to_string(report.checked) + " sequents checked, " +
                  std::to_string(report.mismatches.size()) + " mismatches",
              report.mismatches.empty());
    return rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polycat workbench"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

    // laws
    auto* laws = app.add_subcommand("laws", "polycategory law suite over a corpus");
    std::vector<std::string> law_instances;
    std::size_t law_bound = 3, law_samples = 20000;
    laws->add_option("--instance", law_instances,
                     "instance name or file (default: the built-in corpus)");
    laws->add_option("--bound", law_bound, "arity bound");
    laws->add_option("--samples", law_samples, "composable tuples per law");

    // fsp
    auto* fsp = app.add_subcommand("fsp", "free *-polycategory hom cardinalities");
    std::string fsp_instance = "free-arrow";
    std::size_t fsp_bound = 2;
    std::vector<std::string> fsp_boundaries;
    fsp->add_option("--instance", fsp_instance, "base instance");
    fsp->add_option("--bound", fsp_bound, "signed arity bound");
    fsp->add_option("--context", fsp_boundaries, "signed boundary 'A,~B ; C'");

    // yoneda-check
    auto* yon = app.add_subcommand("yoneda-check", "module/Yoneda identities");
    std::string yon_instance = "free-arrow";
    std::size_t yon_bound = 2;
    yon->add_option("--instance", yon_instance, "base instance");
    yon->add_option("--bound", yon_bound, "context bound");

    // chu-check
    auto* chu = app.add_subcommand("chu-check", "Chu construction checks");
    std::string chu_e = "chain3", chu_bot = "";
    std::size_t chu_max = 2, chu_samples = 20000;
    chu->add_option("--e", chu_e, "base multicategory: quantale instance or 'finset'");
    chu->add_option("--bot", chu_bot, "dualizing presheaf: element name or 'terminal'");
    chu->add_option("--max-size", chu_max, "arity bound");
    chu->add_option("--samples", chu_samples, "composable tuples per law");

    // envelope-check
    auto* env = app.add_subcommand("envelope-check", "envelope embedding checks");
    std::string env_instance = "free-arrow";
    std::size_t env_bound = 2;
    bool env_j = false, env_k = false;
    env->add_option("--instance", env_instance, "base instance");
    env->add_option("--bound", env_bound, "context bound");
    env->add_flag("--with-j", env_j, "check preservation of distinguished products");
    env->add_flag("--with-k", env_k, "check preservation of distinguished cones");

    // glue-check
    auto* glue = app.add_subcommand("glue-check", "double gluing checks");
    std::string glue_instance = "boolean", glue_psi = "identity";
    std::size_t glue_bound = 2, glue_samples = 20000;
    glue->add_option("--instance", glue_instance, "quantale instance with a dualizer");
    glue->add_option("--psi", glue_psi, "identity | terminal | <map-file>");
    glue->add_option("--bound", glue_bound, "arity bound");
    glue->add_option("--samples", glue_samples, "composable tuples per law");

    // prove
    auto* prove = app.add_subcommand("prove", "decide a sequent");
    bool p_classical = false, p_intuitionistic = false;
    std::string p_sequent;
    std::size_t p_budget = 50000000;
    prove->add_flag("--classical", p_classical, "one-sided classical calculus");
    prove->add_flag("--intuitionistic", p_intuitionistic, "two-sided intuitionistic calculus");
    prove->add_option("sequent", p_sequent, "e.g. \"A, A -o B |- B\"")->required();
    prove->add_option("--budget", p_budget, "search subproblem budget");

    // conserve
    auto* cons = app.add_subcommand("conserve", "conservativity harness");
    std::size_t c_atoms = 2, c_size = 7, c_sample = 0, c_budget = 50000000, c_max = 500000;
    std::uint64_t c_seed = 12345;
    bool c_zero = false;
    cons->add_option("--atoms", c_atoms, "number of atoms");
    cons->add_option("--size", c_size, "sequent size bound (AST nodes)");
    cons->add_flag("--with-zero", c_zero, "extend the fragment with 0");
    cons->add_option("--sample", c_sample, "sample count (default: exhaustive)");
    cons->add_option("--seed", c_seed, "sampling seed");
    cons->add_option("--budget", c_budget, "prover subproblem budget");
    cons->add_option("--max-corpus", c_max, "exhaustive corpus cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Reporter rep(format == "json");
    Deadline dl = Deadline::from_env();
    try {
        if (*laws) return run_laws(rep, dl, law_instances, law_bound, law_samples);
        if (*fsp) return run_fsp(rep, dl, fsp_instance, fsp_bound, fsp_boundaries);
        if (*yon) return run_yoneda(rep, dl, yon_instance, yon_bound);
        if (*chu) return run_chu(rep, dl, chu_e, chu_bot, chu_max, chu_samples);
        if (*env) return run_envelope(rep, dl, env_instance, env_bound, env_j, env_k);
        if (*glue) return run_glue(rep, dl, glue_instance, glue_psi, glue_bound, glue_samples);
        if (*prove) {
            if (p_classical == p_intuitionistic) {
                std::cerr << "prove: pass exactly one of --classical / --intuitionistic\n";
                return 2;
            }
            return run_prove(rep, p_classical, p_sequent, p_budget, format == "json");
        }
        if (*cons)
            return run_conserve(rep, c_atoms, c_size, c_zero, c_sample, c_seed, c_budget, c_max);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const OracleTimeout& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
