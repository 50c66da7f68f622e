#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xmv {

/// One XML element. Attribute order is preserved. Character data of the
/// element (across child boundaries) is concatenated into `text`; text
/// that is pure whitespace is dropped. Comments, processing instructions
/// and the XML declaration are skipped while parsing.
struct XmlElement
{
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;
    std::string text;
    std::size_t line = 0;   ///< position of the opening '<' in the source
    std::size_t column = 0;

    const std::string *find_attribute(std::string_view attribute_name) const;
    /// Value of a mandatory attribute; throws ValidationError naming the element.
    const std::string &require_attribute(std::string_view attribute_name) const;

    XmlElement &add_child(std::string child_name);
    XmlElement &set_attribute(std::string attribute_name, std::string value);
};

/// Parses a document with a single root element. UTF-8, no DTDs, no
/// namespaces. Throws ParseError with the 1-based line/column.
XmlElement xml_parse(std::string_view text);

/// Serializes `root` with an XML declaration, 2-space indentation and
/// standard escaping. parse(serialize(e)) reproduces `e`.
std::string xml_serialize(const XmlElement &root);

std::string xml_escape_text(std::string_view value);
std::string xml_escape_attribute(std::string_view value);

} // namespace xmv
