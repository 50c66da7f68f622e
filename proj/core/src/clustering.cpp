#include "xmv/clustering.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace xmv {

namespace {

void check_lengths(std::span<const std::uint8_t> qi, std::span<const std::uint8_t> qj)
{
    if (qi.size() != qj.size())
        throw ValidationError("matrix rows have different lengths (" + std::to_string(qi.size()) + " vs "
                              + std::to_string(qj.size()) + ")");
}

// Union-find over query indices.
class Partition
{
public:
    explicit Partition(std::size_t n) : parent_(n)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i)
    {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent_[b] = a;  // smaller index becomes the root
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

std::size_t sim(std::span<const std::uint8_t> qi, std::span<const std::uint8_t> qj)
{
    check_lengths(qi, qj);
    std::size_t total = 0;
    for (std::size_t k = 0; k != qi.size(); ++k)
        total += delta_sim(qi[k], qj[k]);
    return total;
}

std::size_t dissim(std::span<const std::uint8_t> qi, std::span<const std::uint8_t> qj)
{
    check_lengths(qi, qj);
    std::size_t total = 0;
    for (std::size_t k = 0; k != qi.size(); ++k)
        total += delta_dissim(qi[k], qj[k]);
    return total;
}

ClusteringPolicy ClusteringPolicy::parse(std::string_view text)
{
    if (text == "sim-dominates")
        return sim_dominates();
    if (text.starts_with("threshold:"))
        return threshold(parse_uint(text.substr(10), "clustering threshold"));
    throw ValidationError("unknown clustering policy '" + std::string(text)
                          + "' (expected sim-dominates or threshold:N)");
}

std::string ClusteringPolicy::name() const
{
    if (kind == Kind::SimDominates)
        return "sim-dominates";
    return "threshold:" + std::to_string(min_similarity);
}

std::vector<Cluster> cluster_queries(const QueryAttributeMatrix &matrix, const ClusteringPolicy &policy)
{
    const std::size_t n = matrix.query_count();
    if (n == 0)
        throw ValidationError("cannot cluster an empty matrix");

    Partition partition(n);
    for (std::size_t i = 0; i != n; ++i) {
        for (std::size_t j = i + 1; j != n; ++j) {
            const std::size_t s = sim(matrix.row(i), matrix.row(j));
            const bool edge = policy.kind == ClusteringPolicy::Kind::SimDominates
                                  ? s > dissim(matrix.row(i), matrix.row(j))
                                  : s >= policy.min_similarity;
            if (edge)
                partition.unite(i, j);
        }
    }

    std::map<std::size_t, Cluster> by_root;
    for (std::size_t i = 0; i != n; ++i) {
        const std::size_t root = partition.find(i);
        Cluster &cluster = by_root[root];
        if (cluster.query_ids.empty())
            cluster.id = "c" + std::to_string(root + 1);
        cluster.query_ids.push_back(matrix.queries[i]);
    }

    std::vector<Cluster> clusters;
    clusters.reserve(by_root.size());
    for (auto &[root, cluster] : by_root)
        clusters.push_back(std::move(cluster));
    return clusters;
}

std::vector<CandidateView> build_candidate_views(std::span<const Cluster> clusters,
                                                 std::span<const DecisionQuery> workload,
                                                 const WarehouseSchema &schema)
{
    std::map<std::string, const DecisionQuery *> by_id;
    for (const DecisionQuery &query : workload)
        by_id[query.id] = &query;

    std::vector<CandidateView> candidates;
    for (const Cluster &cluster : clusters) {
        CandidateView view;
        view.source_cluster = cluster.id;
        view.id = "v" + cluster.id.substr(1);

        for (const std::string &query_id : cluster.query_ids) {
            const auto it = by_id.find(query_id);
            if (it == by_id.end())
                throw ValidationError("cluster " + cluster.id + " references unknown query '" + query_id + "'");
            const DecisionQuery &query = *it->second;
            view.attributes.merge(representative_attributes(query));
            for (const Aggregate &aggregate : query.aggregations) {
                if (aggregate.op == AggregateOp::Avg) {
                    // avg is answered from sum and count; materialize those.
                    view.measures.insert(Aggregate{AggregateOp::Sum, fold(aggregate.measure)});
                    view.measures.insert(Aggregate{AggregateOp::Count, fold(aggregate.measure)});
                } else {
                    view.measures.insert(Aggregate{aggregate.op, fold(aggregate.measure)});
                }
            }
        }

        for (const std::string &attribute : view.attributes) {
            const DimensionSpec *owner = schema.find_attribute_owner(attribute);
            if (owner == nullptr)
                throw ValidationError("attribute '" + attribute + "' is not declared by any schema dimension");
            view.dimensions.insert(owner->name);
        }
        candidates.push_back(std::move(view));
    }
    return candidates;
}

} // namespace xmv
