#include "guessbound/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

#include "guessbound/errors.hpp"

namespace guessbound {

namespace {

constexpr std::size_t word_count(std::size_t bits) noexcept { return (bits + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    std::size_t n = 0;
    for (char c : bits) {
        if (c == '0' || c == '1') {
            ++n;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument(std::string("BitVector: unexpected character '") + c + "'");
        }
    }
    BitVector v(n);
    std::size_t i = 0;
    for (char c : bits) {
        if (c == '0' || c == '1') v.set(i++, c == '1');
    }
    return v;
}

BitVector BitVector::from_words(std::span<const std::uint64_t> words, std::size_t size) {
    if (words.size() < word_count(size)) {
        throw DimensionError("BitVector::from_words: not enough words");
    }
    BitVector v(size);
    std::copy_n(words.begin(), v.words_.size(), v.words_.begin());
    if (size % 64 != 0) {
        v.words_.back() &= ~std::uint64_t{0} << (64 - size % 64);
    }
    return v;
}

bool BitVector::get(std::size_t i) const {
    if (i >= size_) throw RangeError("BitVector::get: index out of range");
    return (words_[i / 64] & mask(i)) != 0;
}

void BitVector::set(std::size_t i, bool value) {
    if (i >= size_) throw RangeError("BitVector::set: index out of range");
    if (value) {
        words_[i / 64] |= mask(i);
    } else {
        words_[i / 64] &= ~mask(i);
    }
}

void BitVector::flip(std::size_t i) {
    if (i >= size_) throw RangeError("BitVector::flip: index out of range");
    words_[i / 64] ^= mask(i);
}

std::size_t BitVector::popcount() const noexcept {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVector::none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw DimensionError("BitVector xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool operator<(const BitVector& a, const BitVector& b) {
    // MSB-first packing makes word order coincide with bit order
    const std::size_t shared = std::min(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
    }
    return a.size_ < b.size_;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

BitVector truncate_key(const BitVector& k, std::size_t n2) {
    if (n2 < 1 || n2 > k.size()) {
        throw RangeError("truncate_key: n2 must lie in [1, " + std::to_string(k.size()) + "]");
    }
    return BitVector::from_words(k.words(), n2);
}

std::vector<std::uint8_t> to_bytes(const BitVector& v) {
    std::vector<std::uint8_t> out((v.size() + 7) / 8, 0);
    const auto words = v.words();
    for (std::size_t b = 0; b < out.size(); ++b) {
        out[b] = static_cast<std::uint8_t>(words[b / 8] >> (56 - 8 * (b % 8)));
    }
    return out;
}

BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t size) {
    if (bytes.size() < (size + 7) / 8) throw DimensionError("from_bytes: not enough bytes");
    std::vector<std::uint64_t> words(word_count(size), 0);
    for (std::size_t b = 0; b < (size + 7) / 8; ++b) {
        words[b / 8] |= std::uint64_t{bytes[b]} << (56 - 8 * (b % 8));
    }
    return BitVector::from_words(words, size);
}

}  // namespace guessbound
