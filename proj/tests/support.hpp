#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "setcx/bitstring.hpp"

namespace setcx::test {

// xorshift64 bit stream; the same generator produced the frozen zlib
// fixtures, so tests do not depend on the library's RNG.
inline BitString xorshift_bits(std::uint64_t seed, std::size_t length) {
    std::vector<std::uint8_t> bits(length);
    std::uint64_t x = seed;
    for (auto& b : bits) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        b = static_cast<std::uint8_t>(x >> 63);
    }
    return BitString(std::move(bits));
}

inline constexpr std::uint64_t seed_x = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t seed_y = 0xD1B54A32D192ED03ULL;

inline std::vector<std::uint8_t> ascii(const BitString& b) { return encode(b, Encoding::ascii01); }

}  // namespace setcx::test
