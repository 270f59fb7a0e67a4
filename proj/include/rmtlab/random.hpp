#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3"). The 64-bit seed is the key and the 64-bit
// stream id occupies the upper half of the 128-bit counter, so every
// (seed, stream) pair is an independent, reproducible sequence regardless of
// which thread consumes it.

#include <array>
#include <cstdint>
#include <limits>

namespace rmtlab {

class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using block_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    result_type operator()() noexcept {
        if (lane_ == 0) {
            block_ = generate(counter_block(), key_);
            ++block_index_;
        }
        const result_type out = (static_cast<result_type>(block_[2 * lane_]) << 32) |
                                block_[2 * lane_ + 1];
        lane_ ^= 1U;
        return out;
    }

    /// The raw 10-round bijection; exposed for known-answer tests.
    static block_type generate(block_type ctr, key_type key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53U;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57U;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9U;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85U;

    block_type counter_block() const noexcept {
        return {static_cast<std::uint32_t>(block_index_),
                static_cast<std::uint32_t>(block_index_ >> 32),
                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    }

    key_type key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    block_type block_{};
    unsigned lane_ = 0;
};

/// Uniform double in (0, 1) from the top 53 bits.
template <class Engine>
double uniform_open01(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rmtlab
