#include "guessbound/bit_matrix.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "guessbound/errors.hpp"
#include "guessbound/splitmix.hpp"

namespace guessbound {

std::string_view to_string(MatrixKind kind) noexcept {
    switch (kind) {
        case MatrixKind::explicit_random: return "explicit-random";
        case MatrixKind::modified_toeplitz: return "modified-toeplitz";
    }
    return "unknown";
}

MatrixKind matrix_kind_from_string(std::string_view name) {
    if (name == "explicit-random" || name == "random") return MatrixKind::explicit_random;
    if (name == "modified-toeplitz" || name == "toeplitz") return MatrixKind::modified_toeplitz;
    throw std::invalid_argument("unknown matrix kind '" + std::string(name) + "'");
}

BitMatrix::BitMatrix(std::vector<BitVector> rows, MatrixKind kind, std::optional<HashSeed> seed)
    : rows_(std::move(rows)), kind_(kind), seed_(seed) {
    if (rows_.empty()) throw DimensionError("BitMatrix: at least one row required");
    for (const auto& r : rows_) {
        if (r.size() != rows_.front().size() || r.empty()) {
            throw DimensionError("BitMatrix: rows must share one non-zero length");
        }
    }
}

BitMatrix BitMatrix::zero(std::size_t rows, std::size_t cols) {
    return BitMatrix(std::vector<BitVector>(rows, BitVector(cols)), MatrixKind::explicit_random);
}

BitMatrix random_matrix(HashSeed seed, std::size_t n, std::size_t N) {
    if (n == 0 || n > N) {
        throw DimensionError("random_matrix: need 1 <= n <= N (n = " + std::to_string(n) +
                             ", N = " + std::to_string(N) + ")");
    }
    SplitMixBitStream stream(seed.value);
    std::vector<BitVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVector row(N);
        for (std::size_t j = 0; j < N; ++j) {
            if (stream.next_bit()) row.set(j, true);
        }
        rows.push_back(std::move(row));
    }
    return BitMatrix(std::move(rows), MatrixKind::explicit_random, seed);
}

BitVector toeplitz_diagonal(HashSeed seed, std::size_t N) {
    if (N < 2) throw DimensionError("toeplitz_diagonal: N must be at least 2");
    SplitMixBitStream stream(seed.value);
    BitVector d(N - 1);
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (stream.next_bit()) d.set(i, true);
    }
    return d;
}

BitMatrix toeplitz_from_diagonal(const BitVector& diagonal, std::size_t n, std::size_t N,
                                 std::optional<HashSeed> seed) {
    if (n == 0 || n >= N) {
        throw DimensionError("toeplitz matrix: need 1 <= n < N (n = " + std::to_string(n) +
                             ", N = " + std::to_string(N) + ")");
    }
    if (diagonal.size() != N - 1) throw DimensionError("toeplitz matrix: diagonal must have N - 1 bits");

    std::vector<BitVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVector row(N);
        row.set(i, true);
        for (std::size_t j = 0; j < N - n; ++j) {
            if (diagonal.get(j + n - 1 - i)) row.set(n + j, true);
        }
        rows.push_back(std::move(row));
    }
    return BitMatrix(std::move(rows), MatrixKind::modified_toeplitz, seed);
}

BitMatrix toeplitz_matrix(HashSeed seed, std::size_t n, std::size_t N) {
    if (n == 0 || n >= N) {
        throw DimensionError("toeplitz_matrix: need 1 <= n < N (n = " + std::to_string(n) +
                             ", N = " + std::to_string(N) + ")");
    }
    return toeplitz_from_diagonal(toeplitz_diagonal(seed, N), n, N, seed);
}

BitVector hash_key(const BitMatrix& R, const BitVector& s) {
    if (s.size() != R.cols()) {
        throw DimensionError("hash_key: key has " + std::to_string(s.size()) +
                             " bits, matrix has " + std::to_string(R.cols()) + " columns");
    }
    const auto sw = s.words();
    BitVector k(R.rows());
    for (std::size_t i = 0; i < R.rows(); ++i) {
        const auto rw = R.row(i).words();
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < sw.size(); ++w) acc ^= rw[w] & sw[w];
        if (std::popcount(acc) & 1) k.set(i, true);
    }
    return k;
}

BitMatrix submatrix_rows(const BitMatrix& R, std::size_t n2) {
    if (n2 < 1 || n2 > R.rows()) {
        throw RangeError("submatrix_rows: n2 must lie in [1, " + std::to_string(R.rows()) + "]");
    }
    std::vector<BitVector> rows;
    rows.reserve(n2);
    for (std::size_t i = 0; i < n2; ++i) rows.push_back(R.row(i));
    return BitMatrix(std::move(rows), R.kind(), R.seed());
}

std::size_t gf2_rank(const BitMatrix& R) {
    std::vector<BitVector> rows;
    rows.reserve(R.rows());
    for (std::size_t i = 0; i < R.rows(); ++i) rows.push_back(R.row(i));

    std::size_t rank = 0;
    for (std::size_t col = 0; col < R.cols() && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

}  // namespace guessbound
