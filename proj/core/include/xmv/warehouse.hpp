#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace xmv {

struct AttributeSpec
{
    std::string name;
    std::uint64_t byte_size = 1;

    bool operator==(const AttributeSpec &) const = default;
};

struct DimensionSpec
{
    std::string name;
    std::vector<AttributeSpec> attributes;
    std::uint64_t cardinality = 1;

    const AttributeSpec *find_attribute(std::string_view attribute_name) const;
    /// Summed byte size of all attributes: the size(d) term of the storage model.
    std::uint64_t byte_size() const;

    bool operator==(const DimensionSpec &) const = default;
};

struct MeasureSpec
{
    std::string name;

    bool operator==(const MeasureSpec &) const = default;
};

struct WarehouseSchema
{
    std::string fact_name;
    std::vector<DimensionSpec> dimensions;
    std::vector<MeasureSpec> measures;

    const DimensionSpec *find_dimension(std::string_view name) const;
    const MeasureSpec *find_measure(std::string_view name) const;
    /// The unique dimension declaring `attribute_name` (case-insensitive).
    /// Returns nullptr when no dimension declares it; throws IntegrityError
    /// when several do (bare attribute names must be unambiguous).
    const DimensionSpec *find_attribute_owner(std::string_view attribute_name) const;

    void validate() const;

    bool operator==(const WarehouseSchema &) const = default;
};

struct DimensionMember
{
    std::string dimension;
    std::string member_id;
    std::map<std::string, std::string> attribute_values;

    /// Case-insensitive attribute lookup.
    const std::string *find_value(std::string_view attribute_name) const;

    bool operator==(const DimensionMember &) const = default;
};

struct FactCell
{
    std::map<std::string, std::string> dimension_refs;   // dimension name -> member id
    std::map<std::string, double> measure_values;

    bool operator==(const FactCell &) const = default;
};

struct Warehouse
{
    WarehouseSchema schema;
    std::vector<DimensionMember> members;
    std::vector<FactCell> facts;

    /// Checks every structural invariant, including referential integrity
    /// of fact cells against the member set. Throws ValidationError or
    /// IntegrityError.
    void validate() const;

    std::vector<const DimensionMember *> members_of(std::string_view dimension) const;

    bool operator==(const Warehouse &) const = default;
};

// --- XCube document parsing ------------------------------------------------

WarehouseSchema parse_schema(std::string_view xml_text);
std::vector<DimensionMember> parse_dimensions(std::string_view xml_text);
std::vector<FactCell> parse_facts(std::string_view xml_text, const WarehouseSchema &schema);

struct WarehouseDocuments
{
    std::string schema_xml;
    std::string dimensions_xml;
    std::string facts_xml;
};

WarehouseDocuments serialize_warehouse(const Warehouse &warehouse);

/// Parses the three documents and validates the assembled warehouse.
Warehouse load_warehouse(std::string_view schema_xml,
                         std::string_view dimensions_xml,
                         std::string_view facts_xml);

} // namespace xmv
