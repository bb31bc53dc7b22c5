#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "setcx/bitstring.hpp"
#include "setcx/compression.hpp"

namespace setcx {

/// Ordered collection of bit strings together with their encoded bytes and
/// cached compressed sizes C(x_i).
///
/// Members keep their input positions; `order()` lists member indices by
/// increasing C, ties broken by encoded bytes and then by input position.
/// Measures sum pairs in this order, so reordering the input never changes
/// a result.
class StringSet {
public:
    StringSet(std::vector<BitString> members, Encoding encoding = Encoding::ascii01,
              CompressorSpec spec = {}, unsigned threads = 1);

    std::size_t size() const noexcept { return members_.size(); }
    const BitString& member(std::size_t i) const { return members_[i]; }
    std::span<const BitString> members() const noexcept { return members_; }
    ByteView bytes(std::size_t i) const { return encoded_[i]; }
    Encoding encoding() const noexcept { return encoding_; }
    const CompressorSpec& spec() const noexcept { return spec_; }

    /// Compressed size of member i in bytes.
    std::size_t compressed(std::size_t i) const { return sizes_[i]; }
    std::span<const std::size_t> compressed_sizes() const noexcept { return sizes_; }

    /// C(x_i) as doubles; with `per_byte` each size is divided by the
    /// member's encoded length.
    std::vector<double> complexities(bool per_byte = false) const;

    std::span<const std::size_t> order() const noexcept { return order_; }

    /// True when member i precedes member j in the canonical pair order used
    /// for concatenation (smaller C first, then bytes, then index).
    bool precedes(std::size_t i, std::size_t j) const;

    /// Raw NCD of members i and j, concatenated in canonical order.
    double ncd(std::size_t i, std::size_t j) const;

    /// NCD of member i against an exact copy of itself.
    double self_ncd(std::size_t i) const;

private:
    std::vector<BitString> members_;
    std::vector<std::vector<std::uint8_t>> encoded_;
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_;
    Encoding encoding_;
    CompressorSpec spec_;
};

}  // namespace setcx
