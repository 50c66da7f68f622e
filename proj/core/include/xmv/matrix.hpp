#pragma once

#include "xmv/query.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xmv {

/// Binary queries x attributes matrix: cell (i, k) is 1 iff attribute k
/// appears in query i's Where or Group by clause. Rows follow workload
/// order; columns are the case-folded attribute names, sorted.
struct QueryAttributeMatrix
{
    std::vector<std::string> queries;
    std::vector<std::string> attributes;
    std::vector<std::vector<std::uint8_t>> cells;

    std::size_t query_count() const { return queries.size(); }
    std::size_t attribute_count() const { return attributes.size(); }

    std::span<const std::uint8_t> row(std::size_t query_index) const
    {
        return cells[query_index];
    }

    bool operator==(const QueryAttributeMatrix &) const = default;
};

/// Throws ValidationError on an empty workload and IntegrityError when the
/// same attribute name is claimed by two different dimensions.
QueryAttributeMatrix build_matrix(std::span<const DecisionQuery> workload);

} // namespace xmv
