#include "xmv/cost_model.hpp"
#include "xmv/generator.hpp"

#include <benchmark/benchmark.h>

using namespace xmv;

namespace {

void BM_CardenasDistinct(benchmark::State &state)
{
    const auto facts = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cardenas_distinct(1000.0, facts));
}
BENCHMARK(BM_CardenasDistinct)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_YaoDistinct(benchmark::State &state)
{
    const auto facts = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(yao_distinct(1e8, 1000.0, facts));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_YaoDistinct)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ExactCellCount(benchmark::State &state)
{
    GenerationSpec spec;
    spec.dimensions = {make_dimension("a", 50, 16), make_dimension("b", 40, 16),
                       make_dimension("c", 30, 16)};
    spec.measures = default_measures();
    spec.fact_count = static_cast<std::uint64_t>(state.range(0));
    const Warehouse warehouse = generate_synthetic(spec, 1);

    CandidateView view;
    view.id = "v";
    view.attributes = {"a_a1", "b_a1"};
    view.dimensions = {"a", "b"};
    view.measures = {{AggregateOp::Sum, "quantity"}};

    for (auto _ : state)
        benchmark::DoNotOptimize(exact_cell_count(view, warehouse));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ExactCellCount)->Arg(1000)->Arg(10000)->Arg(100000);

} // namespace
