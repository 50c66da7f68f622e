#include "xmv/matrix.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace xmv {

QueryAttributeMatrix build_matrix(std::span<const DecisionQuery> workload)
{
    if (workload.empty())
        throw ValidationError("cannot build a query-attribute matrix from an empty workload");

    // Bare attribute names are the column identity; the same name bound to
    // two different dimensions would make the columns ambiguous.
    std::map<std::string, std::string> owner_by_attribute;
    for (const DecisionQuery &query : workload) {
        for (const Predicate &predicate : query.predicates) {
            const std::string attribute = fold(predicate.attribute);
            const std::string dimension = fold(predicate.dimension);
            const auto [it, inserted] = owner_by_attribute.emplace(attribute, dimension);
            if (!inserted && it->second != dimension)
                throw IntegrityError("attribute '" + attribute + "' is used with dimension '" + it->second
                                     + "' and dimension '" + dimension + "'; bare names must be unambiguous");
        }
    }

    std::set<std::string> attribute_set;
    for (const DecisionQuery &query : workload)
        attribute_set.merge(representative_attributes(query));

    QueryAttributeMatrix matrix;
    matrix.attributes.assign(attribute_set.begin(), attribute_set.end());
    for (const DecisionQuery &query : workload) {
        matrix.queries.push_back(query.id);
        const std::set<std::string> present = representative_attributes(query);
        std::vector<std::uint8_t> row(matrix.attributes.size(), 0);
        for (std::size_t k = 0; k != matrix.attributes.size(); ++k)
            row[k] = present.count(matrix.attributes[k]) != 0 ? 1 : 0;
        matrix.cells.push_back(std::move(row));
    }
    return matrix;
}

} // namespace xmv
