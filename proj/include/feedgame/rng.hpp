#pragma once

#include <cstdint>

namespace feedgame {

// PCG32 (pcg32_random_r from the PCG reference implementation). Chosen as
// the run generator because its output is defined bit-for-bit by the
// algorithm, independent of the standard library, so a (seed, stream)
// pair reproduces the exact same trajectory on any platform.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream) : state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // Unbiased draw in [0, bound) by rejection, bound >= 1.
    std::uint32_t below(std::uint32_t bound) {
        const std::uint32_t threshold = (0u - bound) % bound;
        for (;;) {
            const std::uint32_t r = next_u32();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 32 bits of resolution.
    double unit() { return static_cast<double>(next_u32()) * 0x1p-32; }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

// Stream ids keep the world's placement draws and the agent's actuation
// draws on disjoint sequences derived from the one run seed.
inline constexpr std::uint64_t kWorldRngStream = 1;
inline constexpr std::uint64_t kAgentRngStream = 2;

}  // namespace feedgame
