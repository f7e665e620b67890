#pragma once

#include <cstdint>

namespace guessbound {

/// SplitMix64. Bit-exact across platforms, used only to make hashing
/// matrices reproducible from a seed; it is not a cryptographic source.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Reads a SplitMix64 stream one bit at a time, most significant bit of each
/// 64-bit output first.
class SplitMixBitStream {
public:
    explicit constexpr SplitMixBitStream(std::uint64_t seed) noexcept : gen_(seed) {}

    constexpr bool next_bit() noexcept {
        if (left_ == 0) {
            word_ = gen_.next();
            left_ = 64;
        }
        --left_;
        return (word_ >> left_) & 1U;
    }

private:
    SplitMix64 gen_;
    std::uint64_t word_ = 0;
    unsigned left_ = 0;
};

}  // namespace guessbound
