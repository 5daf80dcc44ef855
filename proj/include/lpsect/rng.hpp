#pragma once

// Counter-based RNG (Philox4x32-10, Salmon et al. SC 2011) so every Monte
// Carlo sample owns an independent stream addressed by (seed, sample index).
// Reproducibility is positional: sample k draws the same numbers no matter
// which thread evaluates it or in which order.

#include <array>
#include <cmath>
#include <cstdint>

namespace lpsect {

namespace philox {

inline constexpr std::uint32_t kW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(prod);
    hi = static_cast<std::uint32_t>(prod >> 32);
}

inline std::array<std::uint32_t, 4> round_once(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kM4x32A, ctr[0], lo0, hi0);
    mulhilo(kM4x32B, ctr[2], lo1, hi1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

// 10-round block cipher: counter+key -> 128 pseudorandom bits.
inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 4> ctr) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kW32A;
            key[1] += kW32B;
        }
        ctr = round_once(ctr, key);
    }
    return ctr;
}

}  // namespace philox

// One stream per Monte Carlo sample: key = seed, counter = (sample, block).
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t sample)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          sample_(sample) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[static_cast<std::size_t>(pos_++)];
    }

    // 53-bit uniform in (0, 1]; never returns 0 so log() is safe.
    double next_uniform() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        const std::uint64_t mant = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(mant) + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; second of each pair is cached
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(sample_), static_cast<std::uint32_t>(sample_ >> 32),
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32)};
        buf_ = philox::block(key_, ctr);
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t sample_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace lpsect
