#include "xmv/warehouse.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"
#include "xmv/xml.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

namespace xmv {

namespace {

void require_element(const XmlElement &element, std::string_view expected)
{
    if (element.name != expected)
        throw ValidationError("expected <" + std::string(expected) + "> but found <" + element.name + "> (line "
                              + std::to_string(element.line) + ")");
}

} // namespace

// --- schema ------------------------------------------------------------------

const AttributeSpec *DimensionSpec::find_attribute(std::string_view attribute_name) const
{
    for (const AttributeSpec &attribute : attributes)
        if (iequals(attribute.name, attribute_name))
            return &attribute;
    return nullptr;
}

std::uint64_t DimensionSpec::byte_size() const
{
    std::uint64_t total = 0;
    for (const AttributeSpec &attribute : attributes)
        total += attribute.byte_size;
    return total;
}

const DimensionSpec *WarehouseSchema::find_dimension(std::string_view name) const
{
    for (const DimensionSpec &dimension : dimensions)
        if (iequals(dimension.name, name))
            return &dimension;
    return nullptr;
}

const MeasureSpec *WarehouseSchema::find_measure(std::string_view name) const
{
    for (const MeasureSpec &measure : measures)
        if (iequals(measure.name, name))
            return &measure;
    return nullptr;
}

const DimensionSpec *WarehouseSchema::find_attribute_owner(std::string_view attribute_name) const
{
    const DimensionSpec *owner = nullptr;
    for (const DimensionSpec &dimension : dimensions) {
        if (dimension.find_attribute(attribute_name) == nullptr)
            continue;
        if (owner != nullptr)
            throw IntegrityError("attribute '" + std::string(attribute_name) + "' is declared by both dimension '"
                                 + owner->name + "' and dimension '" + dimension.name + "'");
        owner = &dimension;
    }
    return owner;
}

void WarehouseSchema::validate() const
{
    if (fact_name.empty())
        throw ValidationError("schema: fact name must not be empty");
    if (dimensions.empty())
        throw ValidationError("schema: at least one dimension is required");
    if (measures.empty())
        throw ValidationError("schema: at least one measure is required");

    std::set<std::string> seen_dimensions;
    for (const DimensionSpec &dimension : dimensions) {
        if (dimension.name.empty())
            throw ValidationError("schema: dimension names must not be empty");
        if (!seen_dimensions.insert(fold(dimension.name)).second)
            throw ValidationError("schema: duplicate dimension '" + dimension.name + "'");
        if (dimension.cardinality == 0)
            throw ValidationError("schema: dimension '" + dimension.name + "' must have cardinality >= 1");
        if (dimension.attributes.empty())
            throw ValidationError("schema: dimension '" + dimension.name + "' must declare at least one attribute");
        std::set<std::string> seen_attributes;
        for (const AttributeSpec &attribute : dimension.attributes) {
            if (attribute.name.empty())
                throw ValidationError("schema: dimension '" + dimension.name + "' has an unnamed attribute");
            if (!seen_attributes.insert(fold(attribute.name)).second)
                throw ValidationError("schema: dimension '" + dimension.name + "' declares attribute '"
                                      + attribute.name + "' twice");
            if (attribute.byte_size == 0)
                throw ValidationError("schema: attribute '" + attribute.name + "' must have size >= 1");
        }
    }

    std::set<std::string> seen_measures;
    for (const MeasureSpec &measure : measures) {
        if (measure.name.empty())
            throw ValidationError("schema: measure names must not be empty");
        if (!seen_measures.insert(fold(measure.name)).second)
            throw ValidationError("schema: duplicate measure '" + measure.name + "'");
    }
}

// --- members and facts ---------------------------------------------------------

const std::string *DimensionMember::find_value(std::string_view attribute_name) const
{
    for (const auto &[name, value] : attribute_values)
        if (iequals(name, attribute_name))
            return &value;
    return nullptr;
}

void Warehouse::validate() const
{
    schema.validate();

    // Members: unique ids per dimension, declared attribute sets, counts.
    std::unordered_map<std::string, std::unordered_set<std::string>> ids_by_dimension;
    std::unordered_map<std::string, std::uint64_t> count_by_dimension;
    for (const DimensionMember &member : members) {
        const DimensionSpec *dimension = schema.find_dimension(member.dimension);
        if (dimension == nullptr)
            throw IntegrityError("member '" + member.member_id + "' names unknown dimension '" + member.dimension
                                 + "'");
        auto &ids = ids_by_dimension[fold(dimension->name)];
        if (!ids.insert(member.member_id).second)
            throw IntegrityError("dimension '" + dimension->name + "' has duplicate member id '" + member.member_id
                                 + "'");
        ++count_by_dimension[fold(dimension->name)];

        if (member.attribute_values.size() != dimension->attributes.size())
            throw ValidationError("member '" + member.member_id + "' of dimension '" + dimension->name + "' carries "
                                  + std::to_string(member.attribute_values.size()) + " attribute values, expected "
                                  + std::to_string(dimension->attributes.size()));
        for (const auto &[attribute_name, value] : member.attribute_values) {
            (void)value;
            if (dimension->find_attribute(attribute_name) == nullptr)
                throw ValidationError("member '" + member.member_id + "' carries undeclared attribute '"
                                      + attribute_name + "'");
        }
    }
    for (const DimensionSpec &dimension : schema.dimensions) {
        const auto it = count_by_dimension.find(fold(dimension.name));
        const std::uint64_t count = it == count_by_dimension.end() ? 0 : it->second;
        if (count != dimension.cardinality)
            throw ValidationError("dimension '" + dimension.name + "' has " + std::to_string(count)
                                  + " members, expected cardinality " + std::to_string(dimension.cardinality));
    }

    // Facts: full dimension coverage, resolvable refs, declared measures.
    std::size_t index = 0;
    for (const FactCell &fact : facts) {
        if (fact.dimension_refs.size() != schema.dimensions.size())
            throw IntegrityError("Cell " + std::to_string(index) + " references "
                                 + std::to_string(fact.dimension_refs.size()) + " dimensions, expected "
                                 + std::to_string(schema.dimensions.size()));
        for (const auto &[dimension_name, member_id] : fact.dimension_refs) {
            const DimensionSpec *dimension = schema.find_dimension(dimension_name);
            if (dimension == nullptr)
                throw IntegrityError("Cell " + std::to_string(index) + " references unknown dimension '"
                                     + dimension_name + "'");
            const auto ids = ids_by_dimension.find(fold(dimension->name));
            if (ids == ids_by_dimension.end() || ids->second.count(member_id) == 0)
                throw IntegrityError("Cell " + std::to_string(index) + " references nonexistent member '" + member_id
                                     + "' of dimension '" + dimension_name + "'");
        }
        if (fact.measure_values.size() != schema.measures.size())
            throw IntegrityError("Cell " + std::to_string(index) + " carries "
                                 + std::to_string(fact.measure_values.size()) + " measures, expected "
                                 + std::to_string(schema.measures.size()));
        for (const auto &[measure_name, value] : fact.measure_values) {
            (void)value;
            if (schema.find_measure(measure_name) == nullptr)
                throw IntegrityError("Cell " + std::to_string(index) + " carries unknown measure '" + measure_name
                                     + "'");
        }
        ++index;
    }
}

std::vector<const DimensionMember *> Warehouse::members_of(std::string_view dimension) const
{
    std::vector<const DimensionMember *> result;
    for (const DimensionMember &member : members)
        if (iequals(member.dimension, dimension))
            result.push_back(&member);
    return result;
}

// --- parsing -------------------------------------------------------------------

WarehouseSchema parse_schema(std::string_view xml_text)
{
    const XmlElement root = xml_parse(xml_text);
    require_element(root, "Schema");

    WarehouseSchema schema;
    for (const XmlElement &child : root.children) {
        if (child.name == "fact") {
            schema.fact_name = child.require_attribute("name");
        } else if (child.name == "dimension") {
            DimensionSpec dimension;
            dimension.name = child.require_attribute("name");
            dimension.cardinality =
                parse_uint(child.require_attribute("cardinality"), "dimension '" + dimension.name + "' cardinality");
            for (const XmlElement &attribute : child.children) {
                require_element(attribute, "attribute");
                AttributeSpec spec;
                spec.name = attribute.require_attribute("name");
                spec.byte_size = parse_uint(attribute.require_attribute("size"),
                                            "attribute '" + spec.name + "' size");
                dimension.attributes.push_back(std::move(spec));
            }
            schema.dimensions.push_back(std::move(dimension));
        } else if (child.name == "measure") {
            schema.measures.push_back(MeasureSpec{child.require_attribute("name")});
        } else {
            throw ValidationError("unexpected element <" + child.name + "> in Schema.xml (line "
                                  + std::to_string(child.line) + ")");
        }
    }
    schema.validate();
    return schema;
}

std::vector<DimensionMember> parse_dimensions(std::string_view xml_text)
{
    const XmlElement root = xml_parse(xml_text);
    require_element(root, "dimensionData");

    std::vector<DimensionMember> members;
    std::set<std::string> seen_levels;
    for (const XmlElement &classification : root.children) {
        require_element(classification, "classification");
        for (const XmlElement &level : classification.children) {
            require_element(level, "Level");
            const std::string &dimension = level.require_attribute("node");
            if (!seen_levels.insert(fold(dimension)).second)
                throw IntegrityError("Dimensions.xml declares Level '" + dimension + "' twice");
            std::set<std::string> seen_ids;
            for (const XmlElement &node : level.children) {
                require_element(node, "node");
                DimensionMember member;
                member.dimension = dimension;
                member.member_id = node.require_attribute("id");
                if (!seen_ids.insert(member.member_id).second)
                    throw IntegrityError("Level '" + dimension + "' has duplicate member id '" + member.member_id
                                         + "'");
                for (const XmlElement &attribute : node.children) {
                    require_element(attribute, "attribute");
                    const std::string &name = attribute.require_attribute("name");
                    if (member.attribute_values.count(name) != 0)
                        throw IntegrityError("member '" + member.member_id + "' repeats attribute '" + name + "'");
                    member.attribute_values[name] = attribute.require_attribute("value");
                }
                members.push_back(std::move(member));
            }
        }
    }
    return members;
}

std::vector<FactCell> parse_facts(std::string_view xml_text, const WarehouseSchema &schema)
{
    const XmlElement root = xml_parse(xml_text);
    require_element(root, "CubeFacts");

    std::vector<FactCell> facts;
    std::size_t index = 0;
    for (const XmlElement &cube : root.children) {
        require_element(cube, "cube");
        for (const XmlElement &cell : cube.children) {
            require_element(cell, "Cell");
            FactCell fact;
            for (const XmlElement &child : cell.children) {
                if (child.name == "dimension") {
                    const std::string &id = child.require_attribute("id");
                    const DimensionSpec *dimension = schema.find_dimension(id);
                    if (dimension == nullptr)
                        throw IntegrityError("Cell " + std::to_string(index) + " references unknown dimension '" + id
                                             + "'");
                    if (fact.dimension_refs.count(dimension->name) != 0)
                        throw IntegrityError("Cell " + std::to_string(index) + " references dimension '" + id
                                             + "' twice");
                    fact.dimension_refs[dimension->name] = child.require_attribute("node");
                } else {
                    const MeasureSpec *measure = schema.find_measure(child.name);
                    if (measure == nullptr)
                        throw IntegrityError("Cell " + std::to_string(index) + " carries unknown measure element <"
                                             + child.name + ">");
                    if (fact.measure_values.count(measure->name) != 0)
                        throw IntegrityError("Cell " + std::to_string(index) + " repeats measure '" + measure->name
                                             + "'");
                    fact.measure_values[measure->name] =
                        parse_double(child.text, "Cell " + std::to_string(index) + " measure '" + measure->name + "'");
                }
            }
            for (const DimensionSpec &dimension : schema.dimensions)
                if (fact.dimension_refs.count(dimension.name) == 0)
                    throw IntegrityError("Cell " + std::to_string(index) + " is missing dimension '" + dimension.name
                                         + "'");
            for (const MeasureSpec &measure : schema.measures)
                if (fact.measure_values.count(measure.name) == 0)
                    throw IntegrityError("Cell " + std::to_string(index) + " is missing measure '" + measure.name
                                         + "'");
            facts.push_back(std::move(fact));
            ++index;
        }
    }
    return facts;
}

// --- serialization ---------------------------------------------------------------

WarehouseDocuments serialize_warehouse(const Warehouse &warehouse)
{
    WarehouseDocuments documents;

    XmlElement schema;
    schema.name = "Schema";
    schema.add_child("fact").set_attribute("name", warehouse.schema.fact_name);
    for (const DimensionSpec &dimension : warehouse.schema.dimensions) {
        XmlElement &element = schema.add_child("dimension");
        element.set_attribute("name", dimension.name);
        element.set_attribute("cardinality", std::to_string(dimension.cardinality));
        for (const AttributeSpec &attribute : dimension.attributes) {
            element.add_child("attribute")
                .set_attribute("name", attribute.name)
                .set_attribute("size", std::to_string(attribute.byte_size));
        }
    }
    for (const MeasureSpec &measure : warehouse.schema.measures)
        schema.add_child("measure").set_attribute("name", measure.name);
    documents.schema_xml = xml_serialize(schema);

    XmlElement dimension_data;
    dimension_data.name = "dimensionData";
    XmlElement &classification = dimension_data.add_child("classification");
    for (const DimensionSpec &dimension : warehouse.schema.dimensions) {
        XmlElement &level = classification.add_child("Level");
        level.set_attribute("node", dimension.name);
        for (const DimensionMember *member : warehouse.members_of(dimension.name)) {
            XmlElement &node = level.add_child("node");
            node.set_attribute("id", member->member_id);
            for (const auto &[name, value] : member->attribute_values)
                node.add_child("attribute").set_attribute("name", name).set_attribute("value", value);
        }
    }
    documents.dimensions_xml = xml_serialize(dimension_data);

    XmlElement cube_facts;
    cube_facts.name = "CubeFacts";
    XmlElement &cube = cube_facts.add_child("cube");
    for (const FactCell &fact : warehouse.facts) {
        XmlElement &cell = cube.add_child("Cell");
        for (const DimensionSpec &dimension : warehouse.schema.dimensions) {
            const auto ref = fact.dimension_refs.find(dimension.name);
            if (ref == fact.dimension_refs.end())
                throw IntegrityError("fact cell is missing dimension '" + dimension.name + "'");
            cell.add_child("dimension").set_attribute("id", dimension.name).set_attribute("node", ref->second);
        }
        for (const MeasureSpec &measure : warehouse.schema.measures) {
            const auto value = fact.measure_values.find(measure.name);
            if (value == fact.measure_values.end())
                throw IntegrityError("fact cell is missing measure '" + measure.name + "'");
            cell.add_child(measure.name).text = format_double(value->second);
        }
    }
    documents.facts_xml = xml_serialize(cube_facts);

    return documents;
}

Warehouse load_warehouse(std::string_view schema_xml,
                         std::string_view dimensions_xml,
                         std::string_view facts_xml)
{
    Warehouse warehouse;
    warehouse.schema = parse_schema(schema_xml);
    warehouse.members = parse_dimensions(dimensions_xml);
    warehouse.facts = parse_facts(facts_xml, warehouse.schema);
    warehouse.validate();
    return warehouse;
}

} // namespace xmv
