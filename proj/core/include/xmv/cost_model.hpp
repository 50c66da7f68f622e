#pragma once

#include "xmv/clustering.hpp"
#include "xmv/warehouse.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace xmv {

/// Inputs of the size estimators: per-dimension cardinalities and byte
/// sizes plus the fact count (number of Cell elements in Facts.xml).
struct CostParams
{
    std::map<std::string, std::uint64_t> dimension_cardinalities;  // folded name -> |d|
    std::map<std::string, std::uint64_t> dimension_byte_sizes;     // folded name -> bytes
    std::uint64_t fact_count = 0;

    static CostParams from_schema(const WarehouseSchema &schema, std::uint64_t fact_count);

    std::uint64_t cardinality_of(std::string_view dimension) const;
    std::uint64_t byte_size_of(std::string_view dimension) const;
};

/// Maximum number of Cell elements: the product of all dimension
/// cardinalities. Throws ValidationError on uint64 overflow.
std::uint64_t max_cells(const CostParams &params);

/// Key space of a view: the product of its dimensions' cardinalities.
std::uint64_t max_view_size(const CandidateView &view, const CostParams &params);

struct YaoEstimate
{
    double cells = 0.0;
    /// Set when the fact count exceeds the total key space (the sampling-
    /// without-replacement model is out of its domain); the estimate is
    /// pinned at the full view size.
    bool saturated = false;
};

/// Expected distinct groups hit when `fact_count` cells are drawn without
/// replacement from a key space of `key_space` cells partitioned into
/// `group_count` equal groups. Computed in log space.
YaoEstimate yao_distinct(double key_space, double group_count, std::uint64_t fact_count);

/// Expected distinct groups when draws are independent (with replacement):
/// m * (1 - (1 - 1/m)^n). Exact for small integer n.
double cardenas_distinct(double group_count, std::uint64_t fact_count);

YaoEstimate yao_estimate(const CandidateView &view, const CostParams &params);
double cardenas_estimate(const CandidateView &view, const CostParams &params);

/// Storage estimate: estimated cells times the summed byte size of the
/// view's dimensions.
double view_byte_size(const CandidateView &view, double estimated_cells, const CostParams &params);

/// Ground truth for the estimators: distinct projections of the facts onto
/// the view's dimensions.
std::uint64_t exact_cell_count(const CandidateView &view, const Warehouse &warehouse);

} // namespace xmv
