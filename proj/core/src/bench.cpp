#include "xmv/bench.hpp"

namespace xmv {

BenchReport bench_workload(std::span<const DecisionQuery> workload,
                           std::span<const MaterializedView> views,
                           const Warehouse &warehouse)
{
    BenchReport report;
    const double base_cost = static_cast<double>(warehouse.facts.size());

    for (const DecisionQuery &query : workload) {
        QueryBenchRow row;
        row.query_id = query.id;
        row.base_cost = base_cost;
        row.view_cost = base_cost;
        for (const MaterializedView &view : views) {
            if (!answerable(query, view.definition))
                continue;
            const double cost = static_cast<double>(view.rows.size());
            if (cost < row.view_cost) {
                row.view_cost = cost;
                row.view_id = view.definition.id;
            }
        }
        report.total_base += row.base_cost;
        report.total_with_views += row.view_cost;
        report.per_query.push_back(std::move(row));
    }

    report.speedup = report.total_with_views > 0.0 ? report.total_base / report.total_with_views : 1.0;
    return report;
}

} // namespace xmv
