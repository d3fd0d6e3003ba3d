#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "citelink/metrics.hpp"
#include "citelink/synth.hpp"
#include "citelink/timing.hpp"

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, 200);
    std::vector<double> v(n);
    for (auto &x : v)
        x = d(rng);
    return v;
}

void BM_Spearman(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_values(n, 1);
    const auto y = random_values(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(citelink::spearman(x, y));
}
BENCHMARK(BM_Spearman)->Arg(100)->Arg(10000);

void BM_AgeNormalizedRates(benchmark::State &state) {
    std::mt19937_64 rng(3);
    std::vector<citelink::BibRecord> docs(static_cast<std::size_t>(state.range(0)));
    for (auto &d : docs) {
        d.year = 2008 + static_cast<int>(rng() % 8);
        d.citation_count = static_cast<std::int64_t>(rng() % 100);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(citelink::age_normalized_rates(docs));
}
BENCHMARK(BM_AgeNormalizedRates)->Arg(10000);

void BM_DelayCohort(benchmark::State &state) {
    citelink::DelayCohortConfig config;
    config.delay = citelink::DelayModel::from_quartiles(60, 120, 365);
    const auto cohort = citelink::generate_delay_cohort(config);
    for (auto _ : state) {
        const auto bins = citelink::bin_by_entry_age(cohort.docs);
        const auto rows = citelink::aip_breakdown_series(bins.bins);
        benchmark::DoNotOptimize(citelink::delay_quantiles(citelink::found_fraction_series(rows)));
    }
}
BENCHMARK(BM_DelayCohort);

} // namespace

BENCHMARK_MAIN();
