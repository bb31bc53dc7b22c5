#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "setcx/bitstring.hpp"
#include "setcx/compression.hpp"
#include "setcx/errors.hpp"

using namespace setcx;

TEST_SUITE("bitstrings") {

TEST_CASE("random_bitstring is seed-deterministic") {
    Rng a(77), b(77);
    CHECK(random_bitstring(8, a) == random_bitstring(8, b));
    Rng c(1);
    CHECK_THROWS_AS(random_bitstring(0, c), DomainError);
}

TEST_CASE("random_bitstring is balanced") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto x = random_bitstring(100000, rng);
        const double frac = double(x.count_ones()) / 100000.0;
        CHECK(frac >= 0.49);
        CHECK(frac <= 0.51);
    }
}

TEST_CASE("strings from different seeds differ in about half their bits") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r1(seed), r2(seed + 1000);
        const auto d = hamming_distance(random_bitstring(1000, r1), random_bitstring(1000, r2));
        CHECK(d >= 450);
        CHECK(d <= 550);
    }
}

TEST_CASE("flip_bits") {
    const auto x = BitString::from_string("0000");
    const std::vector<std::size_t> none;
    CHECK(flip_bits(x, none) == x);
    const std::vector<std::size_t> p02{0, 2};
    CHECK(flip_bits(x, p02).to_string() == "1010");
    const std::vector<std::size_t> p3{3};
    const auto y = BitString::from_string("10110");
    CHECK(flip_bits(flip_bits(y, p3), p3) == y);

    const std::vector<std::size_t> out{4};
    CHECK_THROWS_AS(flip_bits(x, out), DomainError);
    const std::vector<std::size_t> dup{1, 1};
    CHECK_THROWS_AS(flip_bits(x, dup), DomainError);
}

TEST_CASE("flip_bits changes weight by zeros flipped minus ones flipped (exhaustive, L <= 12)") {
    for (std::size_t len = 1; len <= 12; ++len) {
        for (std::uint32_t value = 0; value < (1u << len); value += (len > 8 ? 7 : 1)) {
            std::vector<std::uint8_t> bits(len);
            for (std::size_t i = 0; i < len; ++i) bits[i] = (value >> i) & 1u;
            const BitString x(bits);
            for (std::uint32_t mask = 0; mask < (1u << len); mask += (len > 8 ? 13 : 1)) {
                std::vector<std::size_t> pos;
                long zeros = 0, ones = 0;
                for (std::size_t i = 0; i < len; ++i) {
                    if ((mask >> i) & 1u) {
                        pos.push_back(i);
                        (bits[i] ? ones : zeros)++;
                    }
                }
                const auto y = flip_bits(x, pos);
                REQUIRE(long(y.count_ones()) - long(x.count_ones()) == zeros - ones);
            }
        }
    }
}

TEST_CASE("permute_bits preserves the multiset") {
    Rng rng(3);
    const auto zeros = BitString(std::vector<std::uint8_t>(64, 0));
    CHECK(permute_bits(zeros, rng) == zeros);
    for (int t = 0; t < 100; ++t) {
        const auto x = random_bitstring(1 + rng.below(200), rng);
        CHECK(permute_bits(x, rng).count_ones() == x.count_ones());
    }
}

TEST_CASE("a permuted balanced string compresses like a fresh random string") {
    std::vector<std::uint8_t> half(1000, 0);
    std::fill(half.begin(), half.begin() + 500, 1);
    const BitString sorted(half);  // 500 ones then 500 zeros
    double permuted = 0, fresh = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        permuted += double(compressed_size(encode(permute_bits(sorted, rng), Encoding::ascii01)));
        fresh += double(compressed_size(encode(random_bitstring(1000, rng), Encoding::ascii01)));
    }
    CHECK(permuted == doctest::Approx(fresh).epsilon(0.05));
}

TEST_CASE("encodings round-trip and have the documented lengths") {
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
        const auto x = random_bitstring(1 + rng.below(100), rng);
        const auto a = encode(x, Encoding::ascii01);
        const auto p = encode(x, Encoding::packed);
        CHECK(a.size() == x.size());
        CHECK(p.size() == (x.size() + 7) / 8);
        CHECK(decode(a, x.size(), Encoding::ascii01) == x);
        CHECK(decode(p, x.size(), Encoding::packed) == x);
    }
    const auto x = BitString::from_string("101");
    CHECK(encode(x, Encoding::packed) == std::vector<std::uint8_t>{0xA0});
    CHECK(encode(x, Encoding::ascii01) == std::vector<std::uint8_t>{'1', '0', '1'});
}

TEST_CASE("string-set file format") {
    std::istringstream plain("0101\n1111\n");
    const auto f = read_string_set(plain);
    CHECK(f.encoding == Encoding::ascii01);
    REQUIRE(f.members.size() == 2);
    CHECK(f.members[1].to_string() == "1111");

    std::istringstream packed("#encoding=packed\n0101\n");
    CHECK(read_string_set(packed).encoding == Encoding::packed);

    std::istringstream bad("0101\n01x1\n");
    try {
        read_string_set(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream bad_header("#encoding=hex\n01\n");
    CHECK_THROWS_AS(read_string_set(bad_header), ParseError);

    std::ostringstream out;
    write_string_set(out, f);
    std::istringstream back(out.str());
    CHECK(read_string_set(back).members == f.members);
}

}  // TEST_SUITE
