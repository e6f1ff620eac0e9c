#include "gamblekit/rng.hpp"

namespace gamblekit {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

inline PhiloxCounter philox_round(const PhiloxCounter& c, const PhiloxKey& k) noexcept {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, c[0], lo0, hi0);
    mulhilo(kPhiloxM1, c[2], lo1, hi1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
    counter = philox_round(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
        counter = philox_round(counter, key);
    }
    return counter;
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return splitmix64_mix(master_seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

PhiloxStream::PhiloxStream(std::uint64_t seed) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

double PhiloxStream::next_uniform() noexcept {
    if (used_ >= 4) {
        buffer_ = philox4x32_10(
            {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), 0u, 0u}, key_);
        ++block_;
        used_ = 0;
    }
    const std::uint32_t a = buffer_[static_cast<std::size_t>(used_)] >> 5;
    const std::uint32_t b = buffer_[static_cast<std::size_t>(used_) + 1] >> 6;
    used_ += 2;
    return (a * 67108864.0 + b) * (1.0 / 9007199254740992.0);
}

}  // namespace gamblekit
