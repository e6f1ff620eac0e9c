#pragma once

#include <array>
#include <cstdint>

namespace gamblekit {

/// Philox4x32-10 counter-based block cipher (Salmon, Moraes, Dror, Shaw;
/// SC'11). Maps a 128-bit counter and 64-bit key to 128 random bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 output function (Steele, Lea, Flood).
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Seed of run `index` in a batch keyed by `master_seed`:
///   splitmix64_mix(master_seed + 0x9E3779B97F4A7C15 * (index + 1)).
/// derive_seed(s, i) equals the i-th output of a SplitMix64 generator
/// started at state s.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Sequential view over the Philox stream for one seed. Block j uses counter
/// (j_lo, j_hi, 0, 0) and key (seed_lo, seed_hi); each block yields two
/// 53-bit uniforms built from word pairs (0,1) and (2,3).
class PhiloxStream {
public:
    explicit PhiloxStream(std::uint64_t seed) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() noexcept;

    /// True with probability p; p <= 0 never, p >= 1 always.
    bool bernoulli(double p) noexcept { return next_uniform() < p; }

private:
    PhiloxKey key_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
};

}  // namespace gamblekit
