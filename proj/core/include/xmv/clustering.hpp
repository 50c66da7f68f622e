#pragma once

#include "xmv/matrix.hpp"
#include "xmv/query.hpp"
#include "xmv/warehouse.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace xmv {

/// Pointwise attribute similarity: 1 iff the attribute occurs in both rows.
constexpr unsigned delta_sim(unsigned x, unsigned y) noexcept
{
    return (x == 1 && y == 1) ? 1u : 0u;
}

/// Pointwise attribute dissimilarity: 1 iff exactly one row has the attribute.
constexpr unsigned delta_dissim(unsigned x, unsigned y) noexcept
{
    return x != y ? 1u : 0u;
}

/// Summed similarity over all matrix attributes. Throws ValidationError on
/// row length mismatch.
std::size_t sim(std::span<const std::uint8_t> qi, std::span<const std::uint8_t> qj);
std::size_t dissim(std::span<const std::uint8_t> qi, std::span<const std::uint8_t> qj);

struct ClusteringPolicy
{
    enum class Kind { SimDominates, Threshold };

    Kind kind = Kind::SimDominates;
    std::size_t min_similarity = 1;   // Threshold policy: edge iff sim >= this

    static ClusteringPolicy sim_dominates() { return {}; }
    static ClusteringPolicy threshold(std::size_t min_similarity)
    {
        return {Kind::Threshold, min_similarity};
    }
    /// "sim-dominates" or "threshold:N"; throws ValidationError otherwise.
    static ClusteringPolicy parse(std::string_view text);

    std::string name() const;
};

struct Cluster
{
    std::string id;                      // c<k>, k = 1-based index of the smallest member
    std::vector<std::string> query_ids;  // in workload order

    bool operator==(const Cluster &) const = default;
};

/// Partitions the workload. Under the default policy two queries are
/// connected iff sim > dissim; clusters are the connected components, so
/// the partition is independent of row order.
std::vector<Cluster> cluster_queries(const QueryAttributeMatrix &matrix,
                                     const ClusteringPolicy &policy = {});

struct CandidateView
{
    std::string id;                      // v<k>, matching the source cluster
    std::set<std::string> attributes;    // case-folded
    std::set<std::string> dimensions;    // schema spelling
    std::set<Aggregate> measures;
    std::string source_cluster;

    bool operator==(const CandidateView &) const = default;
};

/// One candidate per cluster: the union of the member queries' attributes
/// and aggregations (avg decomposed into sum + count), with dimensions
/// resolved through the schema. Throws ValidationError for attributes the
/// schema does not declare.
std::vector<CandidateView> build_candidate_views(std::span<const Cluster> clusters,
                                                 std::span<const DecisionQuery> workload,
                                                 const WarehouseSchema &schema);

} // namespace xmv
