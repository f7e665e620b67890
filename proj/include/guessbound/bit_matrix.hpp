#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "guessbound/bit_vector.hpp"

namespace guessbound {

enum class MatrixKind {
    explicit_random,    ///< every entry an independent seeded bit
    modified_toeplitz,  ///< [I_n | T] with T constant along diagonals
};

std::string_view to_string(MatrixKind kind) noexcept;
/// Throws std::invalid_argument for unknown names.
MatrixKind matrix_kind_from_string(std::string_view name);

/// Public seed of a hashing matrix.
struct HashSeed {
    std::uint64_t value = 0;
    friend bool operator==(HashSeed, HashSeed) = default;
};

/// n x N matrix over GF(2), stored as n packed rows.
class BitMatrix {
public:
    /// Throws DimensionError when rows have unequal length or there are none.
    BitMatrix(std::vector<BitVector> rows, MatrixKind kind,
              std::optional<HashSeed> seed = std::nullopt);

    static BitMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return rows_.front().size(); }
    MatrixKind kind() const noexcept { return kind_; }
    std::optional<HashSeed> seed() const noexcept { return seed_; }

    const BitVector& row(std::size_t i) const { return rows_.at(i); }
    bool get(std::size_t i, std::size_t j) const { return rows_.at(i).get(j); }

    /// Equality of dimensions and entries; kind and seed are metadata.
    bool same_entries(const BitMatrix& other) const noexcept { return rows_ == other.rows_; }
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::vector<BitVector> rows_;
    MatrixKind kind_;
    std::optional<HashSeed> seed_;
};

/**
 * n x N matrix filled row-major from the SplitMix64 bit stream of `seed`.
 *
 * The n*N entries are read as one continuous stream, one 64-bit output per 64
 * entries, most significant bit first; rows do not restart on a word boundary.
 * Throws DimensionError unless 1 <= n <= N.
 */
BitMatrix random_matrix(HashSeed seed, std::size_t n, std::size_t N);

/// First N - 1 bits of the SplitMix64 bit stream of `seed`.
BitVector toeplitz_diagonal(HashSeed seed, std::size_t N);

/**
 * Modified Toeplitz matrix [I_n | T] from an explicit diagonal string d of
 * length N - 1, with T[i][j] = d[j - i + n - 1].
 * Throws DimensionError unless 1 <= n < N and d.size() == N - 1.
 */
BitMatrix toeplitz_from_diagonal(const BitVector& diagonal, std::size_t n, std::size_t N,
                                 std::optional<HashSeed> seed = std::nullopt);

/// toeplitz_from_diagonal(toeplitz_diagonal(seed, N), n, N).
BitMatrix toeplitz_matrix(HashSeed seed, std::size_t n, std::size_t N);

/// k = R s over GF(2). Throws DimensionError when s.size() != R.cols().
BitVector hash_key(const BitMatrix& R, const BitVector& s);

/// First n2 rows of R, same kind and seed. Throws RangeError unless 1 <= n2 <= R.rows().
BitMatrix submatrix_rows(const BitMatrix& R, std::size_t n2);

/// Rank over GF(2).
std::size_t gf2_rank(const BitMatrix& R);

}  // namespace guessbound
