#include <benchmark/benchmark.h>

#include "citelink/linkage.hpp"
#include "citelink/matchkeys.hpp"
#include "citelink/synth.hpp"

namespace {

citelink::SynthCorpora corpora(int targets) {
    citelink::SynthConfig c;
    c.seed = 99;
    c.n_targets = targets;
    c.duplicate_rate = 0.05;
    c.noise.diacritics = true;
    c.noise.rate = 0.3;
    return citelink::generate(c);
}

void BM_ComputeKeys(benchmark::State &state) {
    const auto s = corpora(50);
    for (auto _ : state) {
        for (const auto &r : s.gs_search)
            benchmark::DoNotOptimize(citelink::compute_keys(r));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.gs_search.size()));
}
BENCHMARK(BM_ComputeKeys);

void BM_MatchMerge(benchmark::State &state) {
    const auto s = corpora(static_cast<int>(state.range(0)));
    citelink::MatchOptions options;
    options.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(citelink::match_merge(s.gs_search, s.scopus, {}, options));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.gs_search.size() + s.scopus.size()));
}
BENCHMARK(BM_MatchMerge)->Args({50, 1})->Args({200, 1})->Args({200, 4});

void BM_Dedup(benchmark::State &state) {
    const auto s = corpora(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(citelink::dedup(s.gs_search));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.gs_search.size()));
}
BENCHMARK(BM_Dedup)->Arg(50)->Arg(200);

} // namespace
