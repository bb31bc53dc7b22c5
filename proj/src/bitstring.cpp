#include "setcx/bitstring.hpp"

#include <istream>
#include <ostream>
#include <utility>

#include "setcx/errors.hpp"

namespace setcx {

std::string to_string(Encoding encoding) {
    return encoding == Encoding::ascii01 ? "ascii01" : "packed";
}

Encoding parse_encoding(std::string_view name) {
    if (name == "ascii01") return Encoding::ascii01;
    if (name == "packed") return Encoding::packed;
    throw ConfigError("unknown encoding '" + std::string(name) + "' (expected ascii01 or packed)");
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
        if (b > 1) throw DomainError("bit values must be 0 or 1");
    }
}

BitString BitString::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw DomainError("bit strings may only contain '0' and '1'");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return BitString(std::move(bits));
}

std::size_t BitString::count_ones() const {
    std::size_t ones = 0;
    for (auto b : bits_) ones += b;
    return ones;
}

std::string BitString::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) s[i] = '1';
    }
    return s;
}

std::vector<std::uint8_t> encode(const BitString& x, Encoding encoding) {
    const auto bits = x.bits();
    if (encoding == Encoding::ascii01) {
        std::vector<std::uint8_t> out(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? '1' : '0';
        return out;
    }
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

BitString decode(std::span<const std::uint8_t> bytes, std::size_t length, Encoding encoding) {
    std::vector<std::uint8_t> bits(length);
    if (encoding == Encoding::ascii01) {
        if (bytes.size() != length) throw DomainError("ascii01 payload length mismatch");
        for (std::size_t i = 0; i < length; ++i) {
            if (bytes[i] != '0' && bytes[i] != '1') throw DomainError("ascii01 payload has non-bit byte");
            bits[i] = bytes[i] == '1';
        }
    } else {
        if (bytes.size() != (length + 7) / 8) throw DomainError("packed payload length mismatch");
        for (std::size_t i = 0; i < length; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    }
    return BitString(std::move(bits));
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw DomainError("hamming distance needs equal lengths");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

BitString random_bitstring(std::size_t length, Rng& rng) {
    if (length == 0) throw DomainError("random_bitstring: length must be at least 1");
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    return BitString(std::move(bits));
}

BitString flip_bits(const BitString& x, std::span<const std::size_t> positions) {
    std::vector<std::uint8_t> bits(x.bits().begin(), x.bits().end());
    std::vector<bool> seen(bits.size(), false);
    for (auto p : positions) {
        if (p >= bits.size()) {
            throw DomainError("flip_bits: position " + std::to_string(p) + " out of range");
        }
        if (seen[p]) throw DomainError("flip_bits: duplicate position " + std::to_string(p));
        seen[p] = true;
        bits[p] ^= 1u;
    }
    return BitString(std::move(bits));
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

BitString permute_bits(const BitString& x, Rng& rng) {
    if (x.empty()) throw DomainError("permute_bits: empty string");
    const auto perm = random_permutation(x.size(), rng);
    std::vector<std::uint8_t> bits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) bits[i] = x.bits()[perm[i]];
    return BitString(std::move(bits));
}

StringSetFile read_string_set(std::istream& in) {
    StringSetFile file;
    std::string line;
    std::size_t line_no = 0;
    bool seen_member = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view key = "#encoding=";
            if (line.starts_with(key)) {
                if (seen_member) throw ParseError(line_no, "encoding header after first string");
                try {
                    file.encoding = parse_encoding(std::string_view(line).substr(key.size()));
                } catch (const ConfigError& e) {
                    throw ParseError(line_no, e.what());
                }
            }
            continue;  // other '#' lines are comments
        }
        for (char c : line) {
            if (c != '0' && c != '1') {
                throw ParseError(line_no, std::string("invalid character '") + c +
                                              "' (strings contain only '0' and '1')");
            }
        }
        file.members.push_back(BitString::from_string(line));
        seen_member = true;
    }
    return file;
}

void write_string_set(std::ostream& out, const StringSetFile& file) {
    out << "#encoding=" << to_string(file.encoding) << '\n';
    for (const auto& m : file.members) out << m.to_string() << '\n';
}

}  // namespace setcx
