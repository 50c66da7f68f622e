#include "xmv/generator.hpp"

#include "xmv/errors.hpp"
#include "xmv/random.hpp"

#include <cmath>

namespace xmv {

namespace {

constexpr char kSpecialChars[] = {'<', '>', '&', '"', '\''};

std::string member_value(const std::string &attribute, std::uint64_t member_index, bool specials)
{
    std::string value = attribute + "-v" + std::to_string(member_index);
    if (specials && member_index % 3 == 0)
        value.push_back(kSpecialChars[(member_index / 3) % std::size(kSpecialChars)]);
    return value;
}

} // namespace

DimensionGenSpec make_dimension(std::string name,
                                std::uint64_t cardinality,
                                std::uint64_t total_byte_size,
                                std::size_t attribute_count)
{
    if (attribute_count == 0)
        attribute_count = 1;
    if (total_byte_size < attribute_count)
        attribute_count = static_cast<std::size_t>(std::max<std::uint64_t>(total_byte_size, 1));

    DimensionGenSpec spec;
    spec.cardinality = cardinality;
    const std::uint64_t base = total_byte_size / attribute_count;
    std::uint64_t first = total_byte_size - base * (attribute_count - 1);
    for (std::size_t i = 0; i != attribute_count; ++i) {
        AttributeSpec attribute;
        attribute.name = name + "_a" + std::to_string(i + 1);
        attribute.byte_size = i == 0 ? first : base;
        spec.attributes.push_back(std::move(attribute));
    }
    spec.name = std::move(name);
    return spec;
}

std::vector<MeasureGenSpec> default_measures()
{
    return {
        MeasureGenSpec{"amount", 1.0, 1000.0, true},
        MeasureGenSpec{"quantity", 1.0, 100.0, true},
    };
}

Warehouse generate_synthetic(const GenerationSpec &spec, std::uint64_t seed)
{
    if (spec.dimensions.empty())
        throw ValidationError("generation spec: at least one dimension is required");
    if (spec.measures.empty())
        throw ValidationError("generation spec: at least one measure is required");

    Warehouse warehouse;
    warehouse.schema.fact_name = spec.fact_name;
    for (const DimensionGenSpec &dimension : spec.dimensions) {
        if (dimension.cardinality == 0)
            throw ValidationError("generation spec: dimension '" + dimension.name + "' needs cardinality >= 1");
        DimensionSpec schema_dimension;
        schema_dimension.name = dimension.name;
        schema_dimension.cardinality = dimension.cardinality;
        schema_dimension.attributes = dimension.attributes;
        warehouse.schema.dimensions.push_back(std::move(schema_dimension));
    }
    for (const MeasureGenSpec &measure : spec.measures)
        warehouse.schema.measures.push_back(MeasureSpec{measure.name});
    warehouse.schema.validate();

    for (const DimensionGenSpec &dimension : spec.dimensions) {
        for (std::uint64_t i = 0; i != dimension.cardinality; ++i) {
            DimensionMember member;
            member.dimension = dimension.name;
            member.member_id = dimension.name + "-" + std::to_string(i);
            for (const AttributeSpec &attribute : dimension.attributes)
                member.attribute_values[attribute.name] =
                    member_value(attribute.name, i, spec.embed_xml_special_chars);
            warehouse.members.push_back(std::move(member));
        }
    }

    std::mt19937_64 rng(seed);
    warehouse.facts.reserve(spec.fact_count);
    for (std::uint64_t f = 0; f != spec.fact_count; ++f) {
        FactCell fact;
        for (const DimensionGenSpec &dimension : spec.dimensions) {
            const std::uint64_t pick = uniform_below(rng, dimension.cardinality);
            fact.dimension_refs[dimension.name] = dimension.name + "-" + std::to_string(pick);
        }
        for (const MeasureGenSpec &measure : spec.measures) {
            double value;
            if (measure.integral) {
                const auto lo = static_cast<std::int64_t>(std::llround(measure.min_value));
                const auto hi = static_cast<std::int64_t>(std::llround(measure.max_value));
                const std::uint64_t range = hi >= lo ? static_cast<std::uint64_t>(hi - lo) + 1 : 1;
                value = static_cast<double>(lo + static_cast<std::int64_t>(uniform_below(rng, range)));
            } else {
                value = uniform_real(rng, measure.min_value, measure.max_value);
            }
            fact.measure_values[measure.name] = value;
        }
        warehouse.facts.push_back(std::move(fact));
    }

    warehouse.validate();
    return warehouse;
}

} // namespace xmv
