#include "xmv/selection.hpp"

#include "xmv/errors.hpp"

#include <algorithm>
#include <limits>

namespace xmv {

std::string_view to_string(Objective objective)
{
    switch (objective) {
        case Objective::Profit: return "profit";
        case Objective::Ratio: return "ratio";
        case Objective::Hybrid: return "hybrid";
    }
    return "?";
}

std::string_view to_string(Estimator estimator)
{
    return estimator == Estimator::Cardenas ? "cardenas" : "yao";
}

Objective objective_from(std::string_view name)
{
    if (name == "profit")
        return Objective::Profit;
    if (name == "ratio")
        return Objective::Ratio;
    if (name == "hybrid")
        return Objective::Hybrid;
    throw ValidationError("unknown objective '" + std::string(name) + "' (expected profit, ratio or hybrid)");
}

Estimator estimator_from(std::string_view name)
{
    if (name == "cardenas")
        return Estimator::Cardenas;
    if (name == "yao")
        return Estimator::Yao;
    throw ValidationError("unknown estimator '" + std::string(name) + "' (expected cardenas or yao)");
}

void SelectionConfig::validate() const
{
    if ((objective == Objective::Ratio || objective == Objective::Hybrid) && !storage_budget.has_value())
        throw ValidationError(std::string(to_string(objective)) + " objective requires a storage budget");
    if (objective == Objective::Hybrid) {
        if (!alpha.has_value())
            throw ValidationError("hybrid objective requires alpha");
        if (*alpha <= 0.0 || *alpha > 1.0)
            throw ValidationError("alpha must lie in (0, 1]");
    }
    if (storage_budget.has_value() && *storage_budget < 0.0)
        throw ValidationError("storage budget must be non-negative");
    if (update_query_ratio < 0.0)
        throw ValidationError("update/query ratio must be non-negative");
}

double SelectionConfig::update_cost_of(const CandidateView &view, double cells) const
{
    return update_cost ? update_cost(view, cells) : cells;
}

bool SelectionResult::contains(std::string_view view_id) const
{
    return std::any_of(selected.begin(), selected.end(),
                       [&](const SelectionStep &step) { return step.view_id == view_id; });
}

namespace {

double estimated_cells(const ViewEstimates &estimates, const CandidateView &view)
{
    const auto it = estimates.find(view.id);
    if (it == estimates.end())
        throw ValidationError("no size estimate for view '" + view.id + "'");
    return it->second.cells;
}

double estimated_bytes(const ViewEstimates &estimates, const CandidateView &view)
{
    const auto it = estimates.find(view.id);
    if (it == estimates.end())
        throw ValidationError("no size estimate for view '" + view.id + "'");
    return it->second.bytes;
}

} // namespace

double query_cost(const DecisionQuery &query,
                  std::span<const CandidateView> selected,
                  const ViewEstimates &estimates,
                  double fact_count)
{
    double best = fact_count;
    for (const CandidateView &view : selected)
        if (answerable(query, view))
            best = std::min(best, estimated_cells(estimates, view));
    return best;
}

double workload_cost(std::span<const DecisionQuery> workload,
                     std::span<const CandidateView> selected,
                     const ViewEstimates &estimates,
                     double fact_count)
{
    double total = 0.0;
    for (const DecisionQuery &query : workload)
        total += query_cost(query, selected, estimates, fact_count);
    return total;
}

double profit(const CandidateView &view,
              std::span<const CandidateView> selected,
              std::span<const DecisionQuery> workload,
              const SelectionConfig &config,
              const ViewEstimates &estimates,
              double fact_count)
{
    const double cost_before = workload_cost(workload, selected, estimates, fact_count);

    std::vector<CandidateView> with_view(selected.begin(), selected.end());
    with_view.push_back(view);
    const double cost_after = workload_cost(workload, with_view, estimates, fact_count);

    const double beta = static_cast<double>(workload.size()) * config.update_query_ratio;
    const double update_penalty = beta * config.update_cost_of(view, estimated_cells(estimates, view));
    return cost_before - cost_after - update_penalty;
}

double ratio_objective(const CandidateView &view,
                       std::span<const CandidateView> selected,
                       std::span<const DecisionQuery> workload,
                       const SelectionConfig &config,
                       const ViewEstimates &estimates,
                       double fact_count)
{
    const double size = estimated_bytes(estimates, view);
    if (size <= 0.0)
        throw ValidationError("view '" + view.id + "' has zero estimated size; profit/space is undefined");
    return profit(view, selected, workload, config, estimates, fact_count) / size;
}

double hybrid_objective(const CandidateView &view,
                        std::span<const CandidateView> selected,
                        std::span<const DecisionQuery> workload,
                        const SelectionConfig &config,
                        const ViewEstimates &estimates,
                        double fact_count,
                        double remaining_space)
{
    const double budget = config.storage_budget.value_or(0.0);
    const double fill_ratio = budget > 0.0 ? remaining_space / budget : 0.0;
    if (fill_ratio <= config.alpha.value_or(1.0))
        return profit(view, selected, workload, config, estimates, fact_count);
    return ratio_objective(view, selected, workload, config, estimates, fact_count);
}

SelectionResult greedy_select(std::span<const CandidateView> candidates,
                              std::span<const DecisionQuery> workload,
                              const SelectionConfig &config,
                              const ViewEstimates &estimates,
                              std::uint64_t fact_count)
{
    config.validate();
    const double facts = static_cast<double>(fact_count);
    const bool budgeted = config.objective != Objective::Profit;

    SelectionResult result;
    result.baseline_cost = static_cast<double>(workload.size()) * facts;

    std::vector<CandidateView> selected;
    std::vector<const CandidateView *> remaining;
    for (const CandidateView &candidate : candidates)
        remaining.push_back(&candidate);

    double remaining_budget = budgeted ? *config.storage_budget : std::numeric_limits<double>::infinity();

    while (!remaining.empty()) {
        const CandidateView *best = nullptr;
        double best_value = 0.0;  // F_max starts at zero: only positive objectives are accepted
        for (const CandidateView *candidate : remaining) {
            const double size = estimated_bytes(estimates, *candidate);
            if (budgeted && size > remaining_budget)
                continue;  // cannot fit; exclude from this and later iterations
            double value = 0.0;
            switch (config.objective) {
                case Objective::Profit:
                    value = profit(*candidate, selected, workload, config, estimates, facts);
                    break;
                case Objective::Ratio:
                    value = ratio_objective(*candidate, selected, workload, config, estimates, facts);
                    break;
                case Objective::Hybrid:
                    value = hybrid_objective(*candidate, selected, workload, config, estimates, facts,
                                             remaining_budget - size);
                    break;
            }
            if (value > best_value) {
                best_value = value;
                best = candidate;
            }
        }
        if (best == nullptr)
            break;  // no strictly positive objective (or nothing fits)

        if (budgeted)
            remaining_budget -= estimated_bytes(estimates, *best);
        result.selected.push_back(SelectionStep{
            best->id,
            best_value,
            budgeted ? std::optional<double>(remaining_budget) : std::nullopt,
        });
        selected.push_back(*best);
        std::erase(remaining, best);
    }

    result.final_workload_cost = workload_cost(workload, selected, estimates, facts);
    return result;
}

} // namespace xmv
