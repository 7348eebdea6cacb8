#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "graceful/search.hpp"

using namespace graceful;

namespace {

void BM_CountUnconstrained(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count(n, Constraint::none()).count);
    }
}
BENCHMARK(BM_CountUnconstrained)->DenseRange(16, 28, 4)->Unit(benchmark::kMillisecond);

void BM_CountTwoEndpoints(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int j = m / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(count(2 * m, Constraint::two_endpoints(j, j + m)).count);
    }
}
BENCHMARK(BM_CountTwoEndpoints)->DenseRange(10, 22, 4)->Unit(benchmark::kMillisecond);

void BM_CountThreads(benchmark::State& state) {
    SearchOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count(30, Constraint::none(), opts).count);
    }
}
BENCHMARK(BM_CountThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DfsCount(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dfs_count(n, Constraint::none()));
    }
}
BENCHMARK(BM_DfsCount)->DenseRange(12, 18, 2)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::vector<PartialState> states;
    for (int i = 0; i < 256; ++i) {
        PartialState s = new_root(n);
        for (int step = 0; step < n / 2 && !s.is_terminal(); ++step) {
            const int k = s.next_edge_label();
            std::vector<int> options;
            for (int u = 0; u + k < n; ++u) {
                if (can_add_edge(s, u, u + k)) options.push_back(u);
            }
            if (options.empty()) break;
            const int u = options[rng() % options.size()];
            s = add_edge(s, u, u + k);
        }
        states.push_back(s);
    }
    std::vector<std::uint8_t> codes(static_cast<size_t>(n));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonical_codes(states[i++ & 255], codes));
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_Canonicalize)->Arg(20)->Arg(40)->Arg(64);

void BM_ExpandLevel(benchmark::State& state) {
    auto m = ClassMap::root(40);
    while (m.level() > 31) m = expand_level(m, Constraint::none());
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_level(m, Constraint::none()).size());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * m.size()));
}
BENCHMARK(BM_ExpandLevel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
