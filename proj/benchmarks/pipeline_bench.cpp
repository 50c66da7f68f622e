#include "xmv/clustering.hpp"
#include "xmv/cost_model.hpp"
#include "xmv/generator.hpp"
#include "xmv/materialize.hpp"
#include "xmv/matrix.hpp"
#include "xmv/query.hpp"
#include "xmv/selection.hpp"
#include "xmv/warehouse.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

using namespace xmv;

namespace {

// Synthetic workloads: `queries` queries spread over 10 attribute groups.
std::vector<DecisionQuery> synthetic_workload(std::size_t queries)
{
    std::mt19937_64 rng(4242);
    std::vector<DecisionQuery> workload;
    for (std::size_t i = 0; i != queries; ++i) {
        DecisionQuery query;
        query.id = "q" + std::to_string(i + 1);
        const std::size_t group = i % 10;
        query.group_by = {"g" + std::to_string(group) + "_a", "g" + std::to_string(group) + "_b"};
        if (rng() % 2)
            query.predicates.push_back(
                {"dim" + std::to_string(group), "g" + std::to_string(group) + "_c", "v" + std::to_string(rng() % 5)});
        query.aggregations = {{AggregateOp::Sum, "quantity"}};
        workload.push_back(std::move(query));
    }
    return workload;
}

WarehouseSchema wide_schema()
{
    WarehouseSchema schema;
    schema.fact_name = "f";
    for (int group = 0; group != 10; ++group) {
        DimensionSpec dimension;
        dimension.name = "dim" + std::to_string(group);
        dimension.cardinality = 20 + group;
        dimension.attributes = {{"g" + std::to_string(group) + "_a", 8},
                                {"g" + std::to_string(group) + "_b", 8},
                                {"g" + std::to_string(group) + "_c", 8}};
        schema.dimensions.push_back(std::move(dimension));
    }
    schema.measures = {{"amount"}, {"quantity"}};
    return schema;
}

void BM_MatrixAndClusters(benchmark::State &state)
{
    const auto workload = synthetic_workload(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const QueryAttributeMatrix matrix = build_matrix(workload);
        benchmark::DoNotOptimize(cluster_queries(matrix));
    }
}
BENCHMARK(BM_MatrixAndClusters)->Arg(10)->Arg(100)->Arg(400);

void BM_GreedySelect(benchmark::State &state)
{
    const auto workload = synthetic_workload(static_cast<std::size_t>(state.range(0)));
    const WarehouseSchema schema = wide_schema();
    const auto candidates = build_candidate_views(cluster_queries(build_matrix(workload)), workload, schema);
    const CostParams params = CostParams::from_schema(schema, 100000);

    ViewEstimates estimates;
    for (const CandidateView &view : candidates) {
        ViewEstimate estimate;
        estimate.cells = cardenas_estimate(view, params);
        estimate.bytes = view_byte_size(view, estimate.cells, params);
        estimates[view.id] = estimate;
    }

    SelectionConfig config;
    config.objective = Objective::Ratio;
    config.storage_budget = 1e7;
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_select(candidates, workload, config, estimates, 100000));
}
BENCHMARK(BM_GreedySelect)->Arg(10)->Arg(100)->Arg(400);

void BM_ParseFacts(benchmark::State &state)
{
    GenerationSpec spec;
    spec.dimensions = {make_dimension("a", 20, 16), make_dimension("b", 30, 16)};
    spec.measures = default_measures();
    spec.fact_count = static_cast<std::uint64_t>(state.range(0));
    const Warehouse warehouse = generate_synthetic(spec, 3);
    const WarehouseDocuments documents = serialize_warehouse(warehouse);

    for (auto _ : state)
        benchmark::DoNotOptimize(parse_facts(documents.facts_xml, warehouse.schema));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * documents.facts_xml.size());
}
BENCHMARK(BM_ParseFacts)->Arg(1000)->Arg(10000);

void BM_Materialize(benchmark::State &state)
{
    GenerationSpec spec;
    spec.dimensions = {make_dimension("a", 20, 16), make_dimension("b", 30, 16),
                       make_dimension("c", 10, 16)};
    spec.measures = default_measures();
    spec.fact_count = static_cast<std::uint64_t>(state.range(0));
    const Warehouse warehouse = generate_synthetic(spec, 5);

    CandidateView view;
    view.id = "v";
    view.attributes = {"a_a1", "b_a1"};
    view.dimensions = {"a", "b"};
    view.measures = {{AggregateOp::Sum, "quantity"}, {AggregateOp::Count, "quantity"},
                     {AggregateOp::Sum, "amount"}};

    for (auto _ : state)
        benchmark::DoNotOptimize(materialize(view, warehouse));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Materialize)->Arg(1000)->Arg(10000);

} // namespace
