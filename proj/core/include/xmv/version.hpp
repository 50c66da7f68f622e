#pragma once

namespace xmv {

constexpr const char *version_string()
{
    return "0.1.0";
}

} // namespace xmv
