#include <benchmark/benchmark.h>

#include "dshift/gallery.hpp"
#include "dshift/ows.hpp"

namespace {

using namespace dshift;

void bm_ows_product(benchmark::State& state) {
    const OwsOperator T = build_example_4_3();
    const std::int64_t hi = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ows_product_log(T, 0, 1, hi));
    state.SetItemsProcessed(state.iterations() * hi);
}
BENCHMARK(bm_ows_product)->Arg(1 << 7)->Arg(1 << 11)->Arg(1 << 15);

void bm_grid_rank_roundtrip(benchmark::State& state) {
    const IndexSpace grid = IndexSpace::grid();
    for (auto _ : state)
        for (std::size_t m = 0; m < 256; ++m)
            benchmark::DoNotOptimize(grid.rank(grid.at(m)));
}
BENCHMARK(bm_grid_rank_roundtrip);

void bm_set_membership(benchmark::State& state) {
    for (auto _ : state)
        for (std::int64_t n = 0; n < 4096; ++n)
            benchmark::DoNotOptimize(in_c_set(n));
}
BENCHMARK(bm_set_membership);

void bm_tree_certificate(benchmark::State& state) {
    const ShiftTuple tuple = build_tree_example();
    std::vector<std::size_t> steps;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(state.range(0)); ++k)
        steps.push_back(k);
    const Schedule schedule = Schedule::user(steps);
    const WindowGrowth window = fixed_window({Index::scalar(0)});
    for (auto _ : state)
        benchmark::DoNotOptimize(check_dhc(tuple, schedule, window));
}
BENCHMARK(bm_tree_certificate)->Arg(6)->Arg(12);

void bm_ows_powers_certificate(benchmark::State& state) {
    const OwsOperator T = build_example_4_3();
    std::vector<std::size_t> steps;
    for (std::size_t k = 1; k <= 4; ++k)
        steps.push_back(std::size_t(1) << (2 * k + 1));
    const Schedule schedule = Schedule::user(steps);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_ows_powers_dsc(T, 2, schedule, 4));
}
BENCHMARK(bm_ows_powers_certificate);

}  // namespace

BENCHMARK_MAIN();
