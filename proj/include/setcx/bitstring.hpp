#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setcx/rng.hpp"

namespace setcx {

/// How bits are turned into bytes for the compressor.
///  ascii01: one byte per bit, '0' or '1'.
///  packed:  eight bits per byte, most significant first, zero padded.
enum class Encoding { ascii01, packed };

std::string to_string(Encoding encoding);
Encoding parse_encoding(std::string_view name);

/// Immutable finite bit sequence.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters; anything else is a DomainError.
    static BitString from_string(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::size_t count_ones() const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;  // each element 0 or 1
};

std::vector<std::uint8_t> encode(const BitString& x, Encoding encoding);

/// Inverse of encode; `length` is the bit count (needed to drop packed padding).
BitString decode(std::span<const std::uint8_t> bytes, std::size_t length, Encoding encoding);

std::size_t hamming_distance(const BitString& a, const BitString& b);

/// L i.i.d. uniform bits. L = 0 is a DomainError.
BitString random_bitstring(std::size_t length, Rng& rng);

/// Copy of x with the listed positions inverted. Positions must be distinct
/// and in range.
BitString flip_bits(const BitString& x, std::span<const std::size_t> positions);

/// Uniformly random permutation of x's bits (Fisher-Yates).
BitString permute_bits(const BitString& x, Rng& rng);

/// Uniformly random permutation of [0, n).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

/// Contents of a string-set file: one '0'/'1' line per member, optional
/// `#encoding=ascii01|packed` header (default ascii01).
struct StringSetFile {
    Encoding encoding = Encoding::ascii01;
    std::vector<BitString> members;
};

/// Throws ParseError with the offending 1-based line number.
StringSetFile read_string_set(std::istream& in);
void write_string_set(std::ostream& out, const StringSetFile& file);

}  // namespace setcx
