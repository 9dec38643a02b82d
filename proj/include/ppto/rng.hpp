#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ppto {

using Rng = std::mt19937_64;
using Day = int;
using AgentId = std::uint32_t;

/// Named substreams derived from one master seed. Each consumer owns its own
/// engine so that, e.g., the number of PPTO iterations never shifts the draws
/// used by the contact generator.
enum class Stream : std::uint64_t {
    graph = 1,
    contacts = 2,
    disease = 3,
    devices = 4,
    policy = 5,
    ppto = 6,
    tests = 7,
    pseudonyms = 8,
};

inline Rng make_stream(std::uint64_t master_seed, Stream stream)
{
    const auto id = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(id), 0x5a9e5eedU};
    return Rng(seq);
}

/// Uniform draw in [0, 1).
inline double uniform01(Rng& rng)
{
    return std::generate_canonical<double, 53>(rng);
}

inline bool bernoulli(Rng& rng, double p)
{
    if (p <= 0.0)
        return false;
    if (p >= 1.0)
        return true;
    return uniform01(rng) < p;
}

inline int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace ppto
