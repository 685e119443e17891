#include <doctest.h>

#include <set>
#include <vector>

#include "feedgame/bitvec.hpp"
#include "feedgame/rng.hpp"

using namespace feedgame;

TEST_SUITE("bitvec") {
    TEST_CASE("set/test/count across word boundaries") {
        BitVec v(77);
        CHECK(v.size() == 77);
        CHECK(v.none());
        v.set(0);
        v.set(36);
        v.set(63);
        v.set(64);
        v.set(76);
        CHECK(v.count() == 5);
        CHECK(v.test(36));
        CHECK(!v.test(37));
        v.set(36, false);
        CHECK(v.count() == 4);
        CHECK(!v.test(36));
    }

    TEST_CASE("hex round-trip is width-stable") {
        BitVec v(77);
        v.set(0);
        v.set(75);
        v.set(76);
        const std::string hex = v.to_hex();
        CHECK(hex.size() == 20);  // ceil(77/4)
        CHECK(BitVec::from_hex(hex, 77) == v);

        BitVec zero(77);
        CHECK(zero.to_hex() == std::string(20, '0'));
        CHECK(BitVec::from_hex(zero.to_hex(), 77) == zero);

        // bit 0 is the least significant digit's low bit
        BitVec one(8);
        one.set(0);
        CHECK(one.to_hex() == "01");
    }

    TEST_CASE("from_hex rejects garbage") {
        CHECK_THROWS_AS(BitVec::from_hex("xyz", 12), std::invalid_argument);
        CHECK_THROWS_AS(BitVec::from_hex("0", 12), std::invalid_argument);   // wrong width
        CHECK_THROWS_AS(BitVec::from_hex("80", 5), std::invalid_argument);   // bit beyond width
    }

    TEST_CASE("and/subset semantics") {
        BitVec a(10), b(10);
        a.set(1);
        a.set(3);
        a.set(7);
        b.set(3);
        b.set(7);
        CHECK(b.is_subset_of(a));
        CHECK(!a.is_subset_of(b));
        a.and_with(b);
        CHECK(a == b);
        BitVec empty(10);
        CHECK(empty.is_subset_of(b));
    }
}

TEST_SUITE("rng") {
    TEST_CASE("pcg32 matches the reference sequence") {
        // First outputs of the reference pcg32 demo for seed 42, stream 54.
        Pcg32 rng(42, 54);
        const std::uint32_t expected[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
                                          0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
        for (std::uint32_t want : expected) CHECK(rng.next_u32() == want);
    }

    TEST_CASE("streams with the same seed differ") {
        Pcg32 a(7, 1), b(7, 2);
        bool any_diff = false;
        for (int i = 0; i < 16; ++i) any_diff |= a.next_u32() != b.next_u32();
        CHECK(any_diff);
    }

    TEST_CASE("below() stays in range and hits every value") {
        Pcg32 rng(123, 9);
        std::set<std::uint32_t> seen;
        for (int i = 0; i < 1000; ++i) {
            const std::uint32_t v = rng.below(3);
            CHECK(v < 3);
            seen.insert(v);
        }
        CHECK(seen.size() == 3);
    }

    TEST_CASE("unit() is in [0,1)") {
        Pcg32 rng(5, 5);
        for (int i = 0; i < 1000; ++i) {
            const double u = rng.unit();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
        }
    }
}
