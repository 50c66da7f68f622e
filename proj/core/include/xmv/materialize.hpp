#pragma once

#include "xmv/clustering.hpp"
#include "xmv/query.hpp"
#include "xmv/warehouse.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace xmv {

/// True iff the query can be rewritten against the view: all of its
/// representative attributes are view columns and every aggregation is
/// derivable from the view's measures (exact (op, measure) match, or avg
/// from sum + count).
bool answerable(const DecisionQuery &query, const CandidateView &view);

struct MaterializedRow
{
    std::map<std::string, std::string> group_key;  // folded attribute -> value
    std::map<Aggregate, double> aggregates;

    bool operator==(const MaterializedRow &) const = default;
};

/// A view evaluated against a warehouse: one row per distinct combination
/// of the view's attribute values, carrying every aggregate of the
/// definition. Rows are kept in sorted group-key order.
struct MaterializedView
{
    CandidateView definition;
    std::vector<MaterializedRow> rows;

    std::uint64_t exact_cell_count() const { return rows.size(); }

    bool operator==(const MaterializedView &) const = default;
};

/// Groups all facts by the view's attributes. Predicates are not baked in:
/// the rows keep the attribute columns, so any equality predicate over
/// them can be applied at query time.
MaterializedView materialize(const CandidateView &view, const Warehouse &warehouse);

struct ResultRow
{
    std::vector<std::string> key;     // group-by values, in the query's order
    std::vector<double> values;       // one per aggregation, in the query's order

    bool operator==(const ResultRow &) const = default;
};

struct EvalResult
{
    std::vector<ResultRow> rows;      // canonical order: sorted by key
    std::uint64_t scanned_cells = 0;  // |facts| for base scans, row count for views

    bool operator==(const EvalResult &) const = default;
};

/// Evaluates the query against the base fact document (logical full scan).
EvalResult evaluate(const DecisionQuery &query, const Warehouse &warehouse);

/// Evaluates the query against a materialized view; requires
/// answerable(query, view.definition), else throws ValidationError.
EvalResult evaluate(const DecisionQuery &query, const MaterializedView &view);

} // namespace xmv
