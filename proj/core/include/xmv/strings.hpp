#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace xmv {

/// ASCII lower-casing. Attribute and dimension identifiers match
/// case-insensitively throughout; folding is the canonical spelling.
std::string fold(std::string_view text);

bool iequals(std::string_view a, std::string_view b);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Strict double / unsigned parsing of a whole (trimmed) token.
double parse_double(std::string_view text, const std::string &context);
std::uint64_t parse_uint(std::string_view text, const std::string &context);

std::string_view trim(std::string_view text);

} // namespace xmv
