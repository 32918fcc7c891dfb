#pragma once

#include <array>
#include <cstdint>

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Each output
// block is a pure function of (key, counter), so any sample index can be
// generated independently of all others; parallel decomposition cannot change
// the stream.

namespace ehrelay::rng {

namespace detail {

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace detail

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;

    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        detail::mul_hi_lo(kMulA, counter[0], hi0, lo0);
        detail::mul_hi_lo(kMulB, counter[2], hi1, lo1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return counter;
}

// Uniform double in (0, 1) from 64 random bits; never returns 0 or 1, so
// -log(u) stays finite.
inline double to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Three independent uniforms in (0,1) for a given (seed, sample index) pair.
inline std::array<double, 3> uniform_triple(std::uint64_t seed, std::uint64_t index) {
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const std::uint32_t lo = static_cast<std::uint32_t>(index);
    const std::uint32_t hi = static_cast<std::uint32_t>(index >> 32);

    const auto block0 = philox4x32({lo, hi, 0u, 0u}, key);
    const auto block1 = philox4x32({lo, hi, 1u, 0u}, key);
    const auto join = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    return {to_unit_open(join(block0[0], block0[1])),
            to_unit_open(join(block0[2], block0[3])),
            to_unit_open(join(block1[0], block1[1]))};
}

} // namespace ehrelay::rng
