#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xmv {

enum class AggregateOp { Sum, Count, Min, Max, Avg };

std::string_view to_string(AggregateOp op);
/// Case-insensitive; throws ValidationError for unknown names.
AggregateOp aggregate_op_from(std::string_view name);

struct Aggregate
{
    AggregateOp op;
    std::string measure;

    auto operator<=>(const Aggregate &) const = default;
};

/// One equality predicate: dimension.attribute = value.
struct Predicate
{
    std::string dimension;
    std::string attribute;
    std::string value;

    bool operator==(const Predicate &) const = default;
};

struct DecisionQuery
{
    std::string id;
    std::vector<Predicate> predicates;
    std::vector<std::string> group_by;
    std::vector<Aggregate> aggregations;

    bool operator==(const DecisionQuery &) const = default;
};

/// Parses one query in the supported FLWOR dialect:
///
///   for $a in //dimensionData/classification/Level[@node='customers']/node,
///       $x in //CubeFacts/cube/Cell
///   let $n := $a/attribute[@name='cust_city']
///   where $a/attribute[@name='cust_city',@value='Lyon']
///     and $x/dimension/@node=$a/@id and $x/dimension/@id='customers'
///   group by(@cust_city) return @cust_city, sum(quantity)
///
/// Selection predicates may also use the split form
/// `$a/attribute/@name='X' and $a/attribute/@value='Y'`. Conjunctions only;
/// disjunction, inequality and nested FLWOR raise UnsupportedConstructError.
/// The returned query has an empty id.
DecisionQuery parse_query(std::string_view text);

/// Parses a workload file: queries separated by lines containing only
/// `---`, each optionally preceded by `-- id: <name>`. Unnamed queries get
/// q1, q2, ... by position.
std::vector<DecisionQuery> parse_workload(std::string_view text);

/// Canonical (case-folded) attribute names appearing in the Where and
/// Group by clauses. These are the matrix columns of the query.
std::set<std::string> representative_attributes(const DecisionQuery &query);

} // namespace xmv
