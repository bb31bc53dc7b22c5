#include "setcx/compression.hpp"

#include <zlib.h>

#include <vector>

#include "setcx/errors.hpp"

namespace setcx {
namespace {

int window_bits(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::gzip: return 15 + 16;
        case Algorithm::zlib: return 15;
        case Algorithm::deflate_raw: return -15;
    }
    throw ConfigError("unsupported compression algorithm");
}

// Compresses the concatenation of the given chunks in one deflate stream and
// returns the total output length. The output buffer is sized by deflateBound
// so a single Z_FINISH call always completes.
std::size_t deflate_size(std::span<const ByteView> chunks, const CompressorSpec& spec) {
    validate(spec);
    std::vector<std::uint8_t> input;
    std::size_t total = 0;
    for (auto c : chunks) total += c.size();
    input.reserve(total);
    for (auto c : chunks) input.insert(input.end(), c.begin(), c.end());

    z_stream stream{};
    if (deflateInit2(&stream, spec.level, Z_DEFLATED, window_bits(spec.algorithm), 9,
                     Z_DEFAULT_STRATEGY) != Z_OK) {
        throw ConfigError("deflateInit2 failed for " + describe(spec));
    }
    std::vector<std::uint8_t> output(deflateBound(&stream, static_cast<uLong>(input.size())) + 64);
    stream.next_in = input.data();
    stream.avail_in = static_cast<uInt>(input.size());
    stream.next_out = output.data();
    stream.avail_out = static_cast<uInt>(output.size());
    const int rc = deflate(&stream, Z_FINISH);
    const std::size_t produced = stream.total_out;
    deflateEnd(&stream);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate did not finish");
    return produced;
}

}  // namespace

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::gzip: return "gzip";
        case Algorithm::zlib: return "zlib";
        case Algorithm::deflate_raw: return "deflate";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "gzip") return Algorithm::gzip;
    if (name == "zlib") return Algorithm::zlib;
    if (name == "deflate") return Algorithm::deflate_raw;
    throw ConfigError("unsupported compression algorithm '" + std::string(name) +
                      "' (expected gzip, zlib or deflate)");
}

std::string describe(const CompressorSpec& spec) {
    return to_string(spec.algorithm) + ":" + std::to_string(spec.level);
}

void validate(const CompressorSpec& spec) {
    if (spec.level < 1 || spec.level > 9) {
        throw ConfigError("compression level must be in [1, 9], got " + std::to_string(spec.level));
    }
    (void)window_bits(spec.algorithm);
}

std::size_t compressed_size(ByteView x, const CompressorSpec& spec) {
    const ByteView chunks[] = {x};
    return deflate_size(chunks, spec);
}

std::size_t joint_size(ByteView x, ByteView y, const CompressorSpec& spec) {
    const ByteView chunks[] = {x, y};
    return deflate_size(chunks, spec);
}

}  // namespace setcx
