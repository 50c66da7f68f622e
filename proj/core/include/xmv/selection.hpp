#pragma once

#include "xmv/clustering.hpp"
#include "xmv/materialize.hpp"
#include "xmv/query.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xmv {

enum class Objective { Profit, Ratio, Hybrid };
enum class Estimator { Cardenas, Yao };

std::string_view to_string(Objective objective);
std::string_view to_string(Estimator estimator);
Objective objective_from(std::string_view name);
Estimator estimator_from(std::string_view name);

/// Estimated cell count and byte size per candidate view.
struct ViewEstimate
{
    double cells = 0.0;
    double bytes = 0.0;

    bool operator==(const ViewEstimate &) const = default;
};

using ViewEstimates = std::map<std::string, ViewEstimate>;

struct SelectionConfig
{
    Objective objective = Objective::Profit;
    std::optional<double> storage_budget;   // bytes; required for ratio and hybrid
    std::optional<double> alpha;            // (0, 1]; required for hybrid
    double update_query_ratio = 0.0;        // proportion of updates vs. queries

    /// Maintenance cost charged per update; the default bills a full view
    /// rebuild, i.e. the view's cell count.
    std::function<double(const CandidateView &, double cells)> update_cost;

    void validate() const;
    double update_cost_of(const CandidateView &view, double cells) const;
};

struct SelectionStep
{
    std::string view_id;
    double objective_value = 0.0;
    std::optional<double> remaining_budget;  // after this acceptance, when budgeted
};

struct SelectionResult
{
    std::vector<SelectionStep> selected;    // acceptance order
    double baseline_cost = 0.0;             // |Q| x |F|
    double final_workload_cost = 0.0;

    bool contains(std::string_view view_id) const;
};

/// Cost of running one query given the selected views: the cheapest access
/// path among the base fact scan and every answerable view.
double query_cost(const DecisionQuery &query,
                  std::span<const CandidateView> selected,
                  const ViewEstimates &estimates,
                  double fact_count);

/// Sum of query costs; |Q| x |F| when no view is selected.
double workload_cost(std::span<const DecisionQuery> workload,
                     std::span<const CandidateView> selected,
                     const ViewEstimates &estimates,
                     double fact_count);

/// Query-cost saving of adding `view` minus the update penalty
/// |Q| * update_query_ratio * update_cost(view).
double profit(const CandidateView &view,
              std::span<const CandidateView> selected,
              std::span<const DecisionQuery> workload,
              const SelectionConfig &config,
              const ViewEstimates &estimates,
              double fact_count);

/// Profit per stored byte. Throws ValidationError for zero-size views.
double ratio_objective(const CandidateView &view,
                       std::span<const CandidateView> selected,
                       std::span<const DecisionQuery> workload,
                       const SelectionConfig &config,
                       const ViewEstimates &estimates,
                       double fact_count);

/// Profit while remaining_space/storage_budget <= alpha, otherwise the
/// profit/space ratio. `remaining_space` is the space left after adding
/// `view`.
double hybrid_objective(const CandidateView &view,
                        std::span<const CandidateView> selected,
                        std::span<const DecisionQuery> workload,
                        const SelectionConfig &config,
                        const ViewEstimates &estimates,
                        double fact_count,
                        double remaining_space);

/// Greedy configuration construction: repeatedly accepts the candidate
/// with the largest strictly positive objective, recomputing objectives
/// against the growing selection. Budgeted objectives skip candidates
/// larger than the remaining space and stop when nothing fits.
SelectionResult greedy_select(std::span<const CandidateView> candidates,
                              std::span<const DecisionQuery> workload,
                              const SelectionConfig &config,
                              const ViewEstimates &estimates,
                              std::uint64_t fact_count);

} // namespace xmv
