#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace setcx {

using ByteView = std::span<const std::uint8_t>;

/// DEFLATE container used for the size estimate. All three share the same
/// compressed stream and differ only in framing overhead.
enum class Algorithm { gzip, zlib, deflate_raw };

/// Compressor selection. The default (gzip at level 9) is the reference
/// backend every calibrated number in this project is measured against.
struct CompressorSpec {
    Algorithm algorithm = Algorithm::gzip;
    int level = 9;

    friend bool operator==(const CompressorSpec&, const CompressorSpec&) = default;
};

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

/// "gzip:9" style description written into output headers.
std::string describe(const CompressorSpec& spec);

/// Throws ConfigError if the level is outside [1, 9].
void validate(const CompressorSpec& spec);

/// Length in bytes of the compressed representation of x. Stateless and
/// deterministic; safe to call concurrently.
std::size_t compressed_size(ByteView x, const CompressorSpec& spec = {});

/// compressed_size of x followed directly by y (no separator).
std::size_t joint_size(ByteView x, ByteView y, const CompressorSpec& spec = {});

}  // namespace setcx
