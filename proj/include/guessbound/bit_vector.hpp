#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guessbound {

/**
 * Fixed-length bit string packed into 64-bit words.
 *
 * Bit i lives in word i / 64 at position 63 - i % 64, so the first bit of the
 * string is the most significant bit of the first word. Pad bits past size()
 * are always zero; word-wise kernels rely on that.
 */
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);

    /// "1011..." (whitespace ignored). Throws std::invalid_argument on other characters.
    static BitVector from_string(std::string_view bits);
    /// First `size` bits of the given words, MSB first; pad bits are cleared.
    static BitVector from_words(std::span<const std::uint64_t> words, std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    std::size_t popcount() const noexcept;
    bool none() const noexcept;

    /// Throws DimensionError on length mismatch.
    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Lexicographic by bit index, shorter first on a shared prefix.
    friend bool operator<(const BitVector& a, const BitVector& b);

    std::string to_string() const;

private:
    static constexpr std::uint64_t mask(std::size_t i) noexcept {
        return std::uint64_t{1} << (63 - (i % 64));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// First n2 bits of k. Throws RangeError unless 1 <= n2 <= k.size().
BitVector truncate_key(const BitVector& k, std::size_t n2);

/// MSB-first byte serialization; the last byte is zero padded.
std::vector<std::uint8_t> to_bytes(const BitVector& v);
/// Inverse of to_bytes. Throws DimensionError when bytes is too short for `size`.
BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t size);

}  // namespace guessbound
