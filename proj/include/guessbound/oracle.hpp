#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "guessbound/bit_matrix.hpp"
#include "guessbound/bit_vector.hpp"

/// Exhaustive, exact verification of the classical guessing-probability
/// claims at desk scale. Every verdict is an integer comparison.
namespace guessbound::oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxFreeBits = 24;    // 2^24 consistent strings
inline constexpr std::size_t kMaxMatrixBits = 16;  // 2^16 matrices

/// Classical side information: Eve knows some sifted-key bits exactly and
/// nothing about the rest, which are uniform.
class EveKnowledge {
public:
    /// Throws DomainError on duplicate or out-of-range positions.
    EveKnowledge(std::size_t n_bits, std::vector<std::pair<std::size_t, bool>> known);

    static EveKnowledge nothing(std::size_t n_bits) { return EveKnowledge(n_bits, {}); }
    /// t distinct positions and their values drawn from SplitMix64(seed).
    static EveKnowledge random(std::size_t n_bits, std::size_t t, std::uint64_t seed);
    /// Eve knows every bit of s.
    static EveKnowledge everything(const BitVector& s);

    std::size_t n_bits() const noexcept { return n_bits_; }
    std::size_t known_count() const noexcept { return known_.size(); }
    std::size_t free_count() const noexcept { return n_bits_ - known_.size(); }
    const std::vector<std::pair<std::size_t, bool>>& known() const noexcept { return known_; }

    /// Positions Eve does not know, ascending.
    std::vector<std::size_t> free_positions() const;
    /// Known bits set, free bits zero.
    BitVector base_string() const;

private:
    std::size_t n_bits_;
    std::vector<std::pair<std::size_t, bool>> known_;
};

struct GuessReport {
    Rational p_exact;            ///< max_k Pr[R s = k]
    BitVector argmax_key;        ///< smallest key attaining the maximum
    std::uint64_t support = 0;   ///< number of keys with non-zero probability
};

/// Key distribution induced by R on the strings consistent with `eve`,
/// sorted by key.
struct KeyTally {
    std::size_t key_bits = 0;
    std::uint64_t total = 0;  ///< 2^(N - t)
    std::vector<std::pair<BitVector, std::uint64_t>> counts;
};

/// Throws BudgetError when N - t exceeds kMaxFreeBits and DimensionError when
/// R.cols() != eve.n_bits().
KeyTally key_distribution(const BitMatrix& R, const EveKnowledge& eve);

/// Same preconditions as key_distribution. Enumeration is split over threads
/// for large spaces; tallies are merged by key, so the result does not depend
/// on the split.
GuessReport exact_guessing_probability(const BitMatrix& R, const EveKnowledge& eve);

/// Guessing probability of f(k) when k follows `tally`.
Rational guessing_probability_after_map(const KeyTally& tally,
                                        const std::function<BitVector(const BitVector&)>& f);

struct TruncationVerdict {
    bool pass = false;
    Rational p_full;       ///< p(k), key from R
    Rational p_truncated;  ///< p(k'), key from the first n2 rows of R
};

/// p(k) <= p(k') for k' = first n2 rows of R applied to the same s.
/// Throws RangeError unless 1 <= n2 <= R.rows().
TruncationVerdict verify_truncation(const BitMatrix& R, const EveKnowledge& eve,
                                           std::size_t n2);

struct CollisionResult {
    Rational rate;
    bool degenerate = false;  ///< x == y, not evidence of universality
};

/// Fraction of all 2^(nN) n x N matrices with R x = R y.
/// Throws BudgetError when n * N > kMaxMatrixBits.
CollisionResult collision_rate(std::size_t n, std::size_t N, const BitVector& x,
                               const BitVector& y);

/// Exact 2^-n as a rational.
Rational pow2_neg(std::size_t n);

std::string to_string(const Rational& r);

// Suites ------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;
    std::string detail;  ///< first counterexample, or a summary on success
};

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::uint64_t matrix_seeds = 1000;      ///< truncation sweep
    std::uint64_t commutation_cases = 10000;
    std::size_t commutation_max_cols = 512;
    std::size_t universality_max_bits = kMaxMatrixBits;  ///< largest n * N enumerated
};

/// p(k) <= p(k') for both matrix kinds, n <= 4, N <= 8, every t <= N and n2 <= n.
SuiteResult truncation_sweep(const SuiteConfig& config);
/// Collision rate 2^-n for every x != y whenever n * N <= universality_max_bits.
SuiteResult universality_suite(const SuiteConfig& config);
/// truncate(hash(R, s), n2) == hash(first n2 rows of R, s): exhaustive for
/// N <= 6, randomized up to commutation_max_cols.
SuiteResult commutation_suite(const SuiteConfig& config);
/// Full-rank R with t = 0 gives exactly 2^-n.
SuiteResult full_rank_suite(const SuiteConfig& config);
/// Max probability never decreases under random maps of the key, n <= 4.
SuiteResult function_of_key_suite(const SuiteConfig& config);

std::vector<SuiteResult> run_all_suites(const SuiteConfig& config);

}  // namespace guessbound::oracle
