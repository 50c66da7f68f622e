#pragma once

#include "xmv/warehouse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace xmv {

struct MeasureGenSpec
{
    std::string name;
    double min_value = 1.0;
    double max_value = 100.0;
    /// Integer-valued measures keep aggregate arithmetic exact, so results
    /// recomputed from views compare bitwise against base evaluation.
    bool integral = true;
};

struct DimensionGenSpec
{
    std::string name;
    std::uint64_t cardinality = 1;
    std::vector<AttributeSpec> attributes;
};

struct GenerationSpec
{
    std::string fact_name = "sales";
    std::vector<DimensionGenSpec> dimensions;
    std::vector<MeasureGenSpec> measures;
    std::uint64_t fact_count = 0;
    /// Decorate some member attribute values with <, >, &, " and ' so
    /// serialized documents exercise XML escaping.
    bool embed_xml_special_chars = false;
};

/// A dimension spec with `attribute_count` attributes whose byte sizes sum
/// to `total_byte_size` (as evenly as possible).
DimensionGenSpec make_dimension(std::string name,
                                std::uint64_t cardinality,
                                std::uint64_t total_byte_size,
                                std::size_t attribute_count = 2);

/// The default measure pair: integer-valued amount and quantity.
std::vector<MeasureGenSpec> default_measures();

/// Deterministic synthetic warehouse: same (spec, seed) yields the same
/// warehouse. Each fact draws its member uniformly and independently per
/// dimension; measures are drawn from the configured ranges.
Warehouse generate_synthetic(const GenerationSpec &spec, std::uint64_t seed);

} // namespace xmv
