#include "xmv/strings.hpp"

#include "xmv/errors.hpp"

#include <cctype>
#include <charconv>

namespace xmv {

std::string fold(std::string_view text)
{
    std::string out(text);
    for (char &c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool iequals(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i != a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string format_double(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw Error("cannot format double");
    return std::string(buf, end);
}

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    return text;
}

double parse_double(std::string_view text, const std::string &context)
{
    const std::string_view token = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ValidationError(context + ": '" + std::string(text) + "' is not a number");
    return value;
}

std::uint64_t parse_uint(std::string_view text, const std::string &context)
{
    const std::string_view token = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ValidationError(context + ": '" + std::string(text) + "' is not a non-negative integer");
    return value;
}

} // namespace xmv
