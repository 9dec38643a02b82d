#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "ppto/rng.hpp"

namespace ppto::device {

/// Opaque 128-bit random code exchanged per contact.
struct TokenId {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend auto operator<=>(const TokenId&, const TokenId&) = default;

    std::string hex() const;
};

inline TokenId random_token(Rng& rng)
{
    return TokenId{rng(), rng()};
}

struct TokenHash {
    std::size_t operator()(const TokenId& t) const noexcept
    {
        return static_cast<std::size_t>(t.hi ^ (t.lo * 0x9e3779b97f4a7c15ULL));
    }
};

} // namespace ppto::device
