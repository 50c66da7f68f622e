#pragma once

#include <cstdint>
#include <random>

namespace xmv {

/// Unbiased draw in [0, n) by rejection sampling. mt19937_64 is fully
/// specified by the standard, so results are identical on every platform
/// (the distributions in <random> are not).
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t n)
{
    if (n == 0)
        return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

/// Uniform double in [lo, hi) with 53 random bits.
inline double uniform_real(std::mt19937_64 &rng, double lo, double hi)
{
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

} // namespace xmv
