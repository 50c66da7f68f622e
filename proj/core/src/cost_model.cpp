#include "xmv/cost_model.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace xmv {

CostParams CostParams::from_schema(const WarehouseSchema &schema, std::uint64_t fact_count)
{
    CostParams params;
    params.fact_count = fact_count;
    for (const DimensionSpec &dimension : schema.dimensions) {
        params.dimension_cardinalities[fold(dimension.name)] = dimension.cardinality;
        params.dimension_byte_sizes[fold(dimension.name)] = dimension.byte_size();
    }
    return params;
}

std::uint64_t CostParams::cardinality_of(std::string_view dimension) const
{
    const auto it = dimension_cardinalities.find(fold(dimension));
    if (it == dimension_cardinalities.end())
        throw ValidationError("unknown dimension '" + std::string(dimension) + "' in cost parameters");
    return it->second;
}

std::uint64_t CostParams::byte_size_of(std::string_view dimension) const
{
    const auto it = dimension_byte_sizes.find(fold(dimension));
    if (it == dimension_byte_sizes.end())
        throw ValidationError("unknown dimension '" + std::string(dimension) + "' in cost parameters");
    return it->second;
}

namespace {

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b, const char *what)
{
    std::uint64_t result = 0;
    if (__builtin_mul_overflow(a, b, &result))
        throw ValidationError(std::string(what) + " overflows 64-bit arithmetic");
    return result;
}

// x^n by binary exponentiation; keeps (1 - 1/m)^n exact when both x and
// every intermediate square are exactly representable.
double pow_uint(double x, std::uint64_t n)
{
    double result = 1.0;
    while (n != 0) {
        if (n & 1)
            result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

} // namespace

std::uint64_t max_cells(const CostParams &params)
{
    std::uint64_t product = 1;
    for (const auto &[name, cardinality] : params.dimension_cardinalities)
        product = checked_product(product, cardinality, "maximum cell count");
    return product;
}

std::uint64_t max_view_size(const CandidateView &view, const CostParams &params)
{
    std::uint64_t product = 1;
    for (const std::string &dimension : view.dimensions)
        product = checked_product(product, params.cardinality_of(dimension), "maximum view size");
    return product;
}

double cardenas_distinct(double group_count, std::uint64_t fact_count)
{
    if (fact_count == 0 || group_count <= 0.0)
        return 0.0;
    if (group_count <= 1.0)
        return 1.0;

    const double miss_rate = 1.0 - 1.0 / group_count;
    const double draws = static_cast<double>(fact_count);
    double hit_fraction;  // 1 - (1 - 1/m)^n
    if (miss_rate == 1.0 || draws < 0.25 * group_count) {
        // Nearly every draw lands in a fresh group; 1 - (1-1/m)^n suffers
        // catastrophic cancellation, so evaluate it as -expm1(n*log1p(-1/m)).
        hit_fraction = -std::expm1(draws * std::log1p(-1.0 / group_count));
    } else {
        // Repeated squaring keeps exactly representable cases exact.
        hit_fraction = 1.0 - pow_uint(miss_rate, fact_count);
    }
    const double estimate = group_count * hit_fraction;
    return std::clamp(estimate, 0.0, std::min(group_count, draws));
}

YaoEstimate yao_distinct(double key_space, double group_count, std::uint64_t fact_count)
{
    YaoEstimate result;
    if (fact_count == 0 || group_count <= 0.0)
        return result;
    if (group_count <= 1.0) {
        result.cells = 1.0;
        return result;
    }
    if (static_cast<double>(fact_count) > key_space) {
        // More draws than distinct cells exist: every group is hit.
        result.cells = group_count;
        result.saturated = true;
        return result;
    }

    // Product over i = 1..n of (key_space*c - i + 1) / (key_space - i + 1)
    // with c = 1 - 1/m, accumulated as summed logs. Each factor equals
    // 1 + (key_space*c - key_space) / (key_space - i + 1), so log1p keeps
    // precision when the product stays near 1.
    const double deficit = -key_space / group_count;  // key_space*c - key_space
    double log_product = 0.0;
    for (std::uint64_t i = 1; i <= fact_count; ++i) {
        const double denominator = key_space - static_cast<double>(i) + 1.0;
        const double factor = deficit / denominator;
        if (factor <= -1.0) {
            // All cells outside some group are already drawn: the group is
            // certainly hit and the product collapses to zero.
            result.cells = group_count;
            return result;
        }
        log_product += std::log1p(factor);
        if (log_product < -745.0)
            break;  // exp() underflows to zero beyond this point
    }
    const double estimate = group_count * -std::expm1(log_product);
    result.cells = std::clamp(estimate, 0.0, std::min(group_count, static_cast<double>(fact_count)));
    return result;
}

YaoEstimate yao_estimate(const CandidateView &view, const CostParams &params)
{
    return yao_distinct(static_cast<double>(max_cells(params)),
                        static_cast<double>(max_view_size(view, params)),
                        params.fact_count);
}

double cardenas_estimate(const CandidateView &view, const CostParams &params)
{
    return cardenas_distinct(static_cast<double>(max_view_size(view, params)), params.fact_count);
}

double view_byte_size(const CandidateView &view, double estimated_cells, const CostParams &params)
{
    std::uint64_t per_cell = 0;
    for (const std::string &dimension : view.dimensions)
        per_cell += params.byte_size_of(dimension);
    return estimated_cells * static_cast<double>(per_cell);
}

std::uint64_t exact_cell_count(const CandidateView &view, const Warehouse &warehouse)
{
    std::unordered_set<std::string> groups;
    groups.reserve(warehouse.facts.size());
    for (const FactCell &fact : warehouse.facts) {
        std::string key;
        for (const std::string &dimension : view.dimensions) {
            const std::string *member = nullptr;
            const auto it = fact.dimension_refs.find(dimension);
            if (it != fact.dimension_refs.end()) {
                member = &it->second;
            } else {
                // View dimensions use schema spellings; facts built by hand
                // may use a different casing.
                for (const auto &[name, id] : fact.dimension_refs)
                    if (iequals(name, dimension))
                        member = &id;
            }
            if (member == nullptr)
                throw ValidationError("fact cell is missing dimension '" + dimension + "'");
            key += std::to_string(member->size());
            key.push_back(':');
            key += *member;
        }
        groups.insert(std::move(key));
    }
    return groups.size();
}

} // namespace xmv
