#include "xmv/selection.hpp"

#include "xmv/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace xmv;

namespace {

DecisionQuery group_by_query(std::string id, std::vector<std::string> attributes)
{
    DecisionQuery query;
    query.id = std::move(id);
    query.group_by = std::move(attributes);
    query.aggregations = {{AggregateOp::Sum, "quantity"}};
    return query;
}

CandidateView view_with(std::string id, std::set<std::string> attributes)
{
    CandidateView view;
    view.id = std::move(id);
    view.attributes = std::move(attributes);
    view.dimensions = {"d"};
    view.measures = {{AggregateOp::Sum, "quantity"}};
    return view;
}

// Two queries, one view answering both: the running example for the
// objective functions.
struct ProfitFixture
{
    std::vector<DecisionQuery> workload = {group_by_query("q1", {"x"}), group_by_query("q2", {"x"})};
    CandidateView view = view_with("v1", {"x"});
    ViewEstimates estimates = {{"v1", {10.0, 2400.0}}};
    double fact_count = 1000.0;
};

} // namespace

TEST_CASE("query_cost picks the cheapest access path")
{
    const DecisionQuery query = group_by_query("q", {"x"});
    const ViewEstimates estimates = {{"a", {50.0, 1.0}}, {"b", {20.0, 1.0}}, {"c", {5.0, 1.0}}};

    CHECK(query_cost(query, {}, estimates, 1000.0) == 1000.0);

    const std::vector<CandidateView> one = {view_with("a", {"x"})};
    CHECK(query_cost(query, one, estimates, 1000.0) == 50.0);

    const std::vector<CandidateView> two = {view_with("a", {"x"}), view_with("b", {"x"})};
    CHECK(query_cost(query, two, estimates, 1000.0) == 20.0);

    // Unanswerable views do not help.
    const std::vector<CandidateView> wrong = {view_with("c", {"y"})};
    CHECK(query_cost(query, wrong, estimates, 1000.0) == 1000.0);
}

TEST_CASE("workload_cost sums query costs")
{
    std::vector<DecisionQuery> workload;
    for (int i = 0; i != 10; ++i)
        workload.push_back(group_by_query("q" + std::to_string(i + 1), {"x"}));

    CHECK(workload_cost(workload, {}, {}, 1000.0) == 10000.0);

    const std::vector<CandidateView> universal = {view_with("v", {"x"})};
    const ViewEstimates estimates = {{"v", {1.0, 1.0}}};
    CHECK(workload_cost(workload, universal, estimates, 1000.0) == 10.0);
}

TEST_CASE("workload_cost on a mixed-answerability fixture")
{
    const std::vector<DecisionQuery> workload = {group_by_query("q1", {"x"}), group_by_query("q2", {"y"}),
                                                 group_by_query("q3", {"x", "y"})};
    const std::vector<CandidateView> selected = {view_with("v1", {"x"})};
    const ViewEstimates estimates = {{"v1", {25.0, 1.0}}};

    // q1 -> 25, q2 -> 500, q3 -> 500.
    CHECK(workload_cost(workload, selected, estimates, 500.0) == 1025.0);
}

TEST_CASE("profit equals the cost drop minus the update penalty")
{
    ProfitFixture fixture;
    SelectionConfig config;

    SUBCASE("no update penalty")
    {
        CHECK(profit(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count) == 1980.0);
    }
    SUBCASE("update ratio 0.1 charges beta * |v|")
    {
        config.update_query_ratio = 0.1;
        CHECK(profit(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count)
              == doctest::Approx(1978.0));
    }
    SUBCASE("an unhelpful view has zero profit")
    {
        const CandidateView unrelated = view_with("v2", {"zzz"});
        ViewEstimates estimates = fixture.estimates;
        estimates["v2"] = {10.0, 100.0};
        CHECK(profit(unrelated, {}, fixture.workload, config, estimates, fixture.fact_count) == 0.0);
    }
    SUBCASE("a custom update-cost policy is honored")
    {
        config.update_query_ratio = 1.0;
        config.update_cost = [](const CandidateView &, double) { return 7.0; };
        // 1980 - |Q| * ratio * 7.
        CHECK(profit(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count)
              == doctest::Approx(1980.0 - 14.0));
    }
}

TEST_CASE("ratio objective divides profit by the byte size")
{
    ProfitFixture fixture;
    SelectionConfig config;
    config.objective = Objective::Ratio;
    config.storage_budget = 1e9;
    config.update_query_ratio = 0.1;

    const double value =
        ratio_objective(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count);
    CHECK(value == 1978.0 / 2400.0);
    CHECK(value == doctest::Approx(0.8242).epsilon(1e-4));

    SUBCASE("zero profit gives zero ratio")
    {
        SelectionConfig no_updates = config;
        no_updates.update_query_ratio = 0.0;
        const CandidateView unrelated = view_with("v2", {"zzz"});
        ViewEstimates estimates = fixture.estimates;
        estimates["v2"] = {10.0, 100.0};
        CHECK(ratio_objective(unrelated, {}, fixture.workload, no_updates, estimates, fixture.fact_count) == 0.0);
    }
    SUBCASE("equal profit, double size, half ratio")
    {
        ViewEstimates estimates = fixture.estimates;
        estimates["v1"].bytes = 4800.0;
        const double halved =
            ratio_objective(fixture.view, {}, fixture.workload, config, estimates, fixture.fact_count);
        CHECK(halved == doctest::Approx(value / 2.0));
    }
    SUBCASE("zero-size views are degenerate")
    {
        ViewEstimates estimates = fixture.estimates;
        estimates["v1"].bytes = 0.0;
        CHECK_THROWS_AS(
            ratio_objective(fixture.view, {}, fixture.workload, config, estimates, fixture.fact_count),
            ValidationError);
    }
}

TEST_CASE("hybrid objective switches on the remaining-space ratio")
{
    ProfitFixture fixture;
    SelectionConfig config;
    config.objective = Objective::Hybrid;
    config.storage_budget = 10000.0;
    config.alpha = 0.5;

    const double profit_value =
        profit(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count);
    const double ratio_value =
        ratio_objective(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count);

    // remaining/total = 0.3 <= alpha: profit branch.
    CHECK(hybrid_objective(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count,
                           3000.0)
          == profit_value);
    // remaining/total = 0.9 > alpha: ratio branch.
    CHECK(hybrid_objective(fixture.view, {}, fixture.workload, config, fixture.estimates, fixture.fact_count,
                           9000.0)
          == ratio_value);

    SUBCASE("alpha = 1 always takes the profit branch")
    {
        config.alpha = 1.0;
        CHECK(hybrid_objective(fixture.view, {}, fixture.workload, config, fixture.estimates,
                               fixture.fact_count, 9999.0)
              == profit_value);
    }
}

TEST_CASE("config validation")
{
    SelectionConfig config;
    config.objective = Objective::Ratio;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config.objective = Objective::Hybrid;
    config.storage_budget = 100.0;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config.alpha = 1.5;
    CHECK_THROWS_AS(config.validate(), ValidationError);

    config.alpha = 0.7;
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("greedy selection basics")
{
    ProfitFixture fixture;
    SelectionConfig config;

    SUBCASE("no candidates, baseline cost")
    {
        const SelectionResult result = greedy_select({}, fixture.workload, config, {}, 1000);
        CHECK(result.selected.empty());
        CHECK(result.baseline_cost == 2000.0);
        CHECK(result.final_workload_cost == 2000.0);
    }

    SUBCASE("a single profitable candidate is selected exactly once")
    {
        const std::vector<CandidateView> candidates = {fixture.view};
        const SelectionResult result =
            greedy_select(candidates, fixture.workload, config, fixture.estimates, 1000);
        REQUIRE(result.selected.size() == 1);
        CHECK(result.selected[0].view_id == "v1");
        CHECK(result.selected[0].objective_value == 1980.0);
        CHECK_FALSE(result.selected[0].remaining_budget.has_value());
        CHECK(result.final_workload_cost == 20.0);
    }
}

// One dominant view, one view made redundant by it, one view too large
// for the budget. Verified against exhaustive enumeration of all 2^3
// subsets under the budget.
TEST_CASE("greedy trace on the three-candidate fixture")
{
    const std::vector<DecisionQuery> workload = {group_by_query("q1", {"a1"}), group_by_query("q2", {"a2"}),
                                                 group_by_query("q3", {"a3"})};
    const std::vector<CandidateView> candidates = {
        view_with("A", {"a1", "a2", "a3"}),
        view_with("B", {"a1"}),
        view_with("C", {"a2", "a3"}),
    };
    const ViewEstimates estimates = {
        {"A", {50.0, 500.0}},
        {"B", {60.0, 400.0}},
        {"C", {10.0, 5000.0}},
    };

    SelectionConfig config;
    config.objective = Objective::Ratio;
    config.storage_budget = 600.0;

    const SelectionResult result = greedy_select(candidates, workload, config, estimates, 1000);

    REQUIRE(result.selected.size() == 1);
    CHECK(result.selected[0].view_id == "A");
    CHECK(result.selected[0].objective_value == doctest::Approx((3000.0 - 150.0) / 500.0));
    CHECK(result.selected[0].remaining_budget == doctest::Approx(100.0));
    CHECK(result.final_workload_cost == 150.0);

    // Exhaustive check: among all subsets within budget, {A} minimizes the
    // workload cost, so the greedy choice is also globally best here.
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::string> best_subset;
    for (int mask = 0; mask != 8; ++mask) {
        std::vector<CandidateView> subset;
        double bytes = 0.0;
        for (int bit = 0; bit != 3; ++bit) {
            if (mask & (1 << bit)) {
                subset.push_back(candidates[static_cast<std::size_t>(bit)]);
                bytes += estimates.at(subset.back().id).bytes;
            }
        }
        if (bytes > *config.storage_budget)
            continue;
        const double cost = workload_cost(workload, subset, estimates, 1000.0);
        if (cost < best_cost) {
            best_cost = cost;
            best_subset.clear();
            for (const CandidateView &view : subset)
                best_subset.push_back(view.id);
        }
    }
    CHECK(best_cost == 150.0);
    CHECK(best_subset == std::vector<std::string>{"A"});
}

TEST_CASE("budgeted runs respect the budget and stop when nothing fits")
{
    const std::vector<DecisionQuery> workload = {group_by_query("q1", {"a1"}), group_by_query("q2", {"a2"})};
    const std::vector<CandidateView> candidates = {view_with("v1", {"a1"}), view_with("v2", {"a2"})};
    const ViewEstimates estimates = {{"v1", {10.0, 300.0}}, {"v2", {10.0, 300.0}}};

    SelectionConfig config;
    config.objective = Objective::Ratio;

    SUBCASE("zero budget selects nothing")
    {
        config.storage_budget = 0.0;
        const SelectionResult result = greedy_select(candidates, workload, config, estimates, 1000);
        CHECK(result.selected.empty());
        CHECK(result.final_workload_cost == result.baseline_cost);
    }

    SUBCASE("budget for one view stops after one view")
    {
        config.storage_budget = 350.0;
        const SelectionResult result = greedy_select(candidates, workload, config, estimates, 1000);
        REQUIRE(result.selected.size() == 1);
        CHECK(result.selected[0].remaining_budget == doctest::Approx(50.0));
    }

    SUBCASE("budget for both selects both, budget non-increasing")
    {
        config.storage_budget = 800.0;
        const SelectionResult result = greedy_select(candidates, workload, config, estimates, 1000);
        REQUIRE(result.selected.size() == 2);
        CHECK(*result.selected[0].remaining_budget >= *result.selected[1].remaining_budget);
        CHECK(*result.selected[1].remaining_budget >= 0.0);
    }
}

TEST_CASE("hybrid with alpha = 1 selects like profit")
{
    const std::vector<DecisionQuery> workload = {group_by_query("q1", {"a1"}), group_by_query("q2", {"a2"})};
    const std::vector<CandidateView> candidates = {view_with("v1", {"a1"}), view_with("v2", {"a2"})};
    const ViewEstimates estimates = {{"v1", {10.0, 300.0}}, {"v2", {40.0, 100.0}}};

    SelectionConfig profit_config;
    const SelectionResult profit_result = greedy_select(candidates, workload, profit_config, estimates, 1000);

    SelectionConfig hybrid_config;
    hybrid_config.objective = Objective::Hybrid;
    hybrid_config.storage_budget = 1e9;
    hybrid_config.alpha = 1.0;
    const SelectionResult hybrid_result = greedy_select(candidates, workload, hybrid_config, estimates, 1000);

    REQUIRE(profit_result.selected.size() == hybrid_result.selected.size());
    for (std::size_t i = 0; i != profit_result.selected.size(); ++i) {
        CHECK(profit_result.selected[i].view_id == hybrid_result.selected[i].view_id);
        CHECK(profit_result.selected[i].objective_value
              == doctest::Approx(hybrid_result.selected[i].objective_value));
    }
}

TEST_CASE("a universal candidate drives the final cost to |Q| * |v|")
{
    std::vector<DecisionQuery> workload;
    for (int i = 0; i != 7; ++i)
        workload.push_back(group_by_query("q" + std::to_string(i + 1), {"x"}));
    const std::vector<CandidateView> candidates = {view_with("v1", {"x"})};
    const ViewEstimates estimates = {{"v1", {12.0, 120.0}}};

    SelectionConfig config;  // update ratio 0
    const SelectionResult result = greedy_select(candidates, workload, config, estimates, 5000);
    REQUIRE(result.selected.size() == 1);
    CHECK(result.final_workload_cost == 7.0 * 12.0);
}

TEST_CASE("workload cost never increases along the selection trace")
{
    const std::vector<DecisionQuery> workload = {group_by_query("q1", {"a1"}), group_by_query("q2", {"a2"}),
                                                 group_by_query("q3", {"a3"})};
    const std::vector<CandidateView> candidates = {
        view_with("v1", {"a1"}),
        view_with("v2", {"a2"}),
        view_with("v3", {"a1", "a2", "a3"}),
    };
    const ViewEstimates estimates = {{"v1", {5.0, 50.0}}, {"v2", {7.0, 70.0}}, {"v3", {90.0, 900.0}}};

    SelectionConfig config;
    const SelectionResult result = greedy_select(candidates, workload, config, estimates, 1000);

    std::vector<CandidateView> replay;
    double previous = result.baseline_cost;
    for (const SelectionStep &step : result.selected) {
        for (const CandidateView &candidate : candidates)
            if (candidate.id == step.view_id)
                replay.push_back(candidate);
        const double cost = workload_cost(workload, replay, estimates, 1000.0);
        CHECK(cost <= previous);
        previous = cost;
    }
    CHECK(previous == result.final_workload_cost);
}
