#pragma once

#include "xmv/materialize.hpp"
#include "xmv/query.hpp"
#include "xmv/warehouse.hpp"

#include <span>
#include <string>
#include <vector>

namespace xmv {

struct QueryBenchRow
{
    std::string query_id;
    double base_cost = 0.0;     // cells scanned against Facts.xml
    double view_cost = 0.0;     // cells scanned on the cheapest answering view
    std::string view_id;        // empty when no selected view answers the query

    bool operator==(const QueryBenchRow &) const = default;
};

struct BenchReport
{
    std::vector<QueryBenchRow> per_query;
    double total_base = 0.0;
    double total_with_views = 0.0;
    double speedup = 1.0;       // total_base / total_with_views
};

/// Logical workload cost with and without the materialized views: each
/// query is charged the cheapest available access path (exact view row
/// counts). Speedup is 1.0 for an empty view set or an empty warehouse.
BenchReport bench_workload(std::span<const DecisionQuery> workload,
                           std::span<const MaterializedView> views,
                           const Warehouse &warehouse);

} // namespace xmv
