#include "xmv/materialize.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"

#include <algorithm>
#include <unordered_map>

namespace xmv {

namespace {

// avg is never accumulated directly; it is derived from sum and count.
std::set<Aggregate> underlying_accumulators(std::span<const Aggregate> wanted)
{
    std::set<Aggregate> needed;
    for (const Aggregate &aggregate : wanted) {
        if (aggregate.op == AggregateOp::Avg) {
            needed.insert(Aggregate{AggregateOp::Sum, fold(aggregate.measure)});
            needed.insert(Aggregate{AggregateOp::Count, fold(aggregate.measure)});
        } else {
            needed.insert(Aggregate{aggregate.op, fold(aggregate.measure)});
        }
    }
    return needed;
}

bool measure_derivable(const Aggregate &wanted, const std::set<Aggregate> &available)
{
    if (available.count(wanted) != 0)
        return true;
    if (wanted.op == AggregateOp::Avg)
        return available.count(Aggregate{AggregateOp::Sum, wanted.measure}) != 0
               && available.count(Aggregate{AggregateOp::Count, wanted.measure}) != 0;
    return false;
}

// Resolves fact cells to per-dimension members once, so grouping and
// predicate checks are map lookups.
class MemberIndex
{
public:
    explicit MemberIndex(const Warehouse &warehouse)
    {
        for (const DimensionMember &member : warehouse.members)
            members_[fold(member.dimension) + "/" + member.member_id] = &member;
    }

    const DimensionMember &resolve(const std::string &dimension, const std::string &member_id) const
    {
        const auto it = members_.find(fold(dimension) + "/" + member_id);
        if (it == members_.end())
            throw IntegrityError("fact references nonexistent member '" + member_id + "' of dimension '" + dimension
                                 + "'");
        return *it->second;
    }

private:
    std::unordered_map<std::string, const DimensionMember *> members_;
};

// folded attribute name -> owning dimension, validated against the schema
std::map<std::string, const DimensionSpec *> attribute_owners(const std::set<std::string> &attributes,
                                                              const WarehouseSchema &schema,
                                                              const std::string &context)
{
    std::map<std::string, const DimensionSpec *> owners;
    for (const std::string &attribute : attributes) {
        const std::string folded = fold(attribute);
        const DimensionSpec *owner = schema.find_attribute_owner(folded);
        if (owner == nullptr)
            throw ValidationError(context + " uses attribute '" + folded
                                  + "' which no schema dimension declares");
        owners[folded] = owner;
    }
    return owners;
}

const std::string &member_attribute(const DimensionMember &member, const std::string &attribute)
{
    const std::string *value = member.find_value(attribute);
    if (value == nullptr)
        throw ValidationError("member '" + member.member_id + "' has no attribute '" + attribute + "'");
    return *value;
}

struct GroupAccumulator
{
    std::map<Aggregate, double> totals;

    void add(const Aggregate &aggregate, double value)
    {
        auto [it, inserted] = totals.emplace(aggregate, value);
        if (inserted)
            return;
        switch (aggregate.op) {
            case AggregateOp::Sum:
            case AggregateOp::Count:
            case AggregateOp::Avg:
                it->second += value;
                break;
            case AggregateOp::Min:
                it->second = std::min(it->second, value);
                break;
            case AggregateOp::Max:
                it->second = std::max(it->second, value);
                break;
        }
    }
};

std::vector<ResultRow> finalize_groups(const DecisionQuery &query,
                                       const std::map<std::vector<std::string>, GroupAccumulator> &groups)
{
    std::vector<ResultRow> rows;
    rows.reserve(groups.size());
    for (const auto &[key, accumulator] : groups) {
        ResultRow row;
        row.key = key;
        for (const Aggregate &aggregate : query.aggregations) {
            const std::string measure = fold(aggregate.measure);
            if (aggregate.op == AggregateOp::Avg) {
                const double sum = accumulator.totals.at(Aggregate{AggregateOp::Sum, measure});
                const double count = accumulator.totals.at(Aggregate{AggregateOp::Count, measure});
                row.values.push_back(sum / count);
            } else {
                row.values.push_back(accumulator.totals.at(Aggregate{aggregate.op, measure}));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;  // std::map iteration already yields canonical key order
}

} // namespace

bool answerable(const DecisionQuery &query, const CandidateView &view)
{
    std::set<std::string> view_attributes;
    for (const std::string &attribute : view.attributes)
        view_attributes.insert(fold(attribute));
    for (const std::string &attribute : representative_attributes(query))
        if (view_attributes.count(attribute) == 0)
            return false;

    std::set<Aggregate> view_measures;
    for (const Aggregate &measure : view.measures)
        view_measures.insert(Aggregate{measure.op, fold(measure.measure)});
    for (const Aggregate &aggregate : query.aggregations)
        if (!measure_derivable(Aggregate{aggregate.op, fold(aggregate.measure)}, view_measures))
            return false;
    return true;
}

MaterializedView materialize(const CandidateView &view, const Warehouse &warehouse)
{
    if (view.attributes.empty())
        throw ValidationError("view '" + view.id + "' has no attributes");

    std::set<std::string> folded_attributes;
    for (const std::string &attribute : view.attributes)
        folded_attributes.insert(fold(attribute));
    const auto owners = attribute_owners(folded_attributes, warehouse.schema, "view '" + view.id + "'");

    // (op, folded measure) -> schema measure spelling
    const std::vector<Aggregate> measure_list(view.measures.begin(), view.measures.end());
    const std::set<Aggregate> needed = underlying_accumulators(measure_list);
    std::map<Aggregate, std::string> schema_measure;
    for (const Aggregate &aggregate : needed) {
        const MeasureSpec *measure = warehouse.schema.find_measure(aggregate.measure);
        if (measure == nullptr)
            throw ValidationError("view '" + view.id + "' aggregates unknown measure '" + aggregate.measure + "'");
        schema_measure[aggregate] = measure->name;
    }

    const MemberIndex index(warehouse);
    std::map<std::vector<std::string>, GroupAccumulator> groups;
    for (const FactCell &fact : warehouse.facts) {
        std::vector<std::string> key;
        key.reserve(folded_attributes.size());
        for (const std::string &attribute : folded_attributes) {
            const DimensionSpec &dimension = *owners.at(attribute);
            const auto ref = fact.dimension_refs.find(dimension.name);
            if (ref == fact.dimension_refs.end())
                throw IntegrityError("fact cell is missing dimension '" + dimension.name + "'");
            key.push_back(member_attribute(index.resolve(dimension.name, ref->second), attribute));
        }
        GroupAccumulator &group = groups[key];
        for (const Aggregate &aggregate : needed) {
            const double value = aggregate.op == AggregateOp::Count
                                     ? 1.0
                                     : fact.measure_values.at(schema_measure.at(aggregate));
            group.add(aggregate, value);
        }
    }

    MaterializedView materialized;
    materialized.definition = view;
    materialized.rows.reserve(groups.size());
    for (auto &[key, accumulator] : groups) {
        MaterializedRow row;
        auto attribute = folded_attributes.begin();
        for (const std::string &value : key)
            row.group_key[*attribute++] = value;
        row.aggregates = std::move(accumulator.totals);
        materialized.rows.push_back(std::move(row));
    }
    return materialized;
}

EvalResult evaluate(const DecisionQuery &query, const Warehouse &warehouse)
{
    const auto owners =
        attribute_owners(representative_attributes(query), warehouse.schema, "query '" + query.id + "'");

    const std::set<Aggregate> needed = underlying_accumulators(query.aggregations);
    std::map<Aggregate, std::string> schema_measure;
    for (const Aggregate &aggregate : needed) {
        const MeasureSpec *measure = warehouse.schema.find_measure(aggregate.measure);
        if (measure == nullptr)
            throw ValidationError("query '" + query.id + "' aggregates unknown measure '" + aggregate.measure + "'");
        schema_measure[aggregate] = measure->name;
    }

    const MemberIndex index(warehouse);
    std::map<std::vector<std::string>, GroupAccumulator> groups;
    for (const FactCell &fact : warehouse.facts) {
        bool matches = true;
        for (const Predicate &predicate : query.predicates) {
            const DimensionSpec &dimension = *owners.at(fold(predicate.attribute));
            const auto ref = fact.dimension_refs.find(dimension.name);
            if (ref == fact.dimension_refs.end())
                throw IntegrityError("fact cell is missing dimension '" + dimension.name + "'");
            const DimensionMember &member = index.resolve(dimension.name, ref->second);
            if (member_attribute(member, fold(predicate.attribute)) != predicate.value) {
                matches = false;
                break;
            }
        }
        if (!matches)
            continue;

        std::vector<std::string> key;
        key.reserve(query.group_by.size());
        for (const std::string &attribute : query.group_by) {
            const DimensionSpec &dimension = *owners.at(fold(attribute));
            const DimensionMember &member = index.resolve(dimension.name, fact.dimension_refs.at(dimension.name));
            key.push_back(member_attribute(member, fold(attribute)));
        }

        GroupAccumulator &group = groups[key];
        for (const Aggregate &aggregate : needed) {
            const double value = aggregate.op == AggregateOp::Count
                                     ? 1.0
                                     : fact.measure_values.at(schema_measure.at(aggregate));
            group.add(aggregate, value);
        }
    }

    EvalResult result;
    result.rows = finalize_groups(query, groups);
    result.scanned_cells = warehouse.facts.size();
    return result;
}

EvalResult evaluate(const DecisionQuery &query, const MaterializedView &view)
{
    if (!answerable(query, view.definition))
        throw ValidationError("query '" + query.id + "' is not answerable by view '" + view.definition.id + "'");

    const std::set<Aggregate> needed = underlying_accumulators(query.aggregations);
    std::map<std::vector<std::string>, GroupAccumulator> groups;
    for (const MaterializedRow &row : view.rows) {
        bool matches = true;
        for (const Predicate &predicate : query.predicates) {
            const auto it = row.group_key.find(fold(predicate.attribute));
            if (it == row.group_key.end() || it->second != predicate.value) {
                matches = false;
                break;
            }
        }
        if (!matches)
            continue;

        std::vector<std::string> key;
        key.reserve(query.group_by.size());
        for (const std::string &attribute : query.group_by)
            key.push_back(row.group_key.at(fold(attribute)));

        GroupAccumulator &group = groups[key];
        for (const Aggregate &aggregate : needed)
            group.add(aggregate, row.aggregates.at(aggregate));
    }

    EvalResult result;
    result.rows = finalize_groups(query, groups);
    result.scanned_cells = view.rows.size();
    return result;
}

} // namespace xmv
