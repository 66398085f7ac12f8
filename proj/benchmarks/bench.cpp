#include <benchmark/benchmark.h>

#include <complex>

#include "mst/cascade.hpp"
#include "mst/charpoly.hpp"
#include "mst/search_tree.hpp"
#include "mst/spacings.hpp"

namespace {

mst::Complex lambda27() {
    static const mst::Complex l = mst::find_lambda2(27).value;
    return l;
}

void BM_FindRoots(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mst::find_roots(m));
    }
}
BENCHMARK(BM_FindRoots)->Arg(8)->Arg(27)->Arg(40);

void BM_SampleSpacings(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    mst::RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mst::sample_spacings(m, rng));
    }
}
BENCHMARK(BM_SampleSpacings)->Arg(4)->Arg(27);

void BM_Multiplier(benchmark::State& state) {
    const int m = 27;
    const mst::Complex lambda = lambda27();
    mst::RandomStream rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mst::compute_A(mst::sample_spacings(m, rng), lambda));
    }
}
BENCHMARK(BM_Multiplier);

void BM_TreeInsert(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto n = static_cast<std::int64_t>(state.range(1));
    mst::RandomStream rng(3);
    for (auto _ : state) {
        mst::SearchTree tree(m);
        for (std::int64_t i = 0; i < n; ++i) tree.insert(rng.uniform());
        benchmark::DoNotOptimize(tree.composition());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TreeInsert)->Args({4, 100000})->Args({27, 100000});

void BM_PoolRound(benchmark::State& state) {
    const auto size = static_cast<std::size_t>(state.range(0));
    auto pool = mst::make_constant_pool(27, lambda27(), size, 5);
    for (auto _ : state) {
        pool = mst::iterate_pool(pool, 1, 5, 1);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(size));
}
BENCHMARK(BM_PoolRound)->Arg(10000)->Arg(100000);

void BM_CascadeDepth(benchmark::State& state) {
    mst::CascadeConfig cfg{27, lambda27(), static_cast<int>(state.range(0)), 7};
    mst::RandomStream rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mst::sample_Yn(cfg, rng));
    }
}
BENCHMARK(BM_CascadeDepth)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
