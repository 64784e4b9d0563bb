#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "polycat/chu.hpp"
#include "polycat/circuit.hpp"
#include "polycat/fsp.hpp"
#include "polycat/laws.hpp"
#include "polycat/linlog.hpp"
#include "polycat/module.hpp"
#include "polycat/quantale.hpp"

using namespace polycat;

namespace {

Quantale lukasiewicz3_quantale() {
    return Quantale({"0", "h", "1"}, {{"0", "h"}, {"h", "1"}},
                    {{{"0", "0"}, "0"},
                     {{"0", "h"}, "0"},
                     {{"0", "1"}, "0"},
                     {{"h", "h"}, "0"},
                     {{"h", "1"}, "h"},
                     {{"1", "1"}, "1"}},
                    "1");
}

Signature split_signature() {
    return parse_signature("obj A\nobj B\nobj C\nobj D\n"
                           "gen s : A -> C, D\n"
                           "gen m : C, B -> A\n");
}

void bm_free_saturation(benchmark::State& state) {
    for (auto _ : state) {
        FreePolycategory p(split_signature(), static_cast<std::size_t>(state.range(0)), 3);
        benchmark::DoNotOptimize(p.objects());
    }
}
BENCHMARK(bm_free_saturation)->Arg(4)->Arg(6);

void bm_check_laws_posetal(benchmark::State& state) {
    PosetalPolycategory p(lukasiewicz3_quantale(), std::string("0"), 4);
    for (auto _ : state) {
        LawReport r = check_laws(p, static_cast<std::size_t>(state.range(0)), 4000);
        benchmark::DoNotOptimize(r.all_passed());
    }
}
BENCHMARK(bm_check_laws_posetal)->Arg(2)->Arg(3);

void bm_module_morphisms(benchmark::State& state) {
    auto p = std::make_shared<FreePolycategory>(split_signature(), 6, 3);
    ModulePtr v = module_of(p);
    ObjectId a{"A"}, b{"B"};
    for (auto _ : state) {
        auto ms = enumerate_module_morphisms({{a, true}, {b, true}}, v, 3);
        benchmark::DoNotOptimize(ms.size());
    }
}
BENCHMARK(bm_module_morphisms);

void bm_fsp_hom(benchmark::State& state) {
    auto base = std::make_shared<PosetalPolycategory>(
        counary_from_smc_poset(lukasiewicz3_quantale(), 8));
    FspPolycategory fsp(base, 3);
    auto objs = fsp.objects();
    for (auto _ : state) {
        std::size_t total = 0;
        for (const auto& x : objs)
            for (const auto& y : objs) total += fsp.hom({x}, {y}).size();
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(bm_fsp_hom);

void bm_prove_classical(benchmark::State& state) {
    auto s = linlog::schellinx_sequent();
    for (auto _ : state) {
        auto d = linlog::prove_classical(s);
        benchmark::DoNotOptimize(d.has_value());
    }
}
BENCHMARK(bm_prove_classical);

void bm_prover_corpus(benchmark::State& state) {
    auto corpus = linlog::enumerate_sequents(2, static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state) {
        std::size_t provable = 0;
        for (const auto& s : corpus) provable += linlog::prove_classical(s).has_value();
        benchmark::DoNotOptimize(provable);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(bm_prover_corpus)->Arg(5)->Arg(7);

void bm_sampled_harness(benchmark::State& state) {
    for (auto _ : state) {
        linlog::HarnessOptions opts;
        opts.size_bound = 12;
        opts.sample = {{static_cast<std::size_t>(state.range(0)), 42}};
        auto r = linlog::conservativity_harness(opts);
        benchmark::DoNotOptimize(r.checked);
    }
}
BENCHMARK(bm_sampled_harness)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
