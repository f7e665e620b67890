#include "guessbound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "guessbound/errors.hpp"
#include "guessbound/splitmix.hpp"

namespace guessbound::oracle {

namespace {

constexpr std::size_t kDenseKeyBits = 20;
constexpr std::size_t kParallelFreeBits = 18;

std::uint64_t gray(std::uint64_t g) noexcept { return g ^ (g >> 1); }

// Keys that fit one word. Dense counting below kDenseKeyBits bits, hashed above.
struct NarrowTally {
    std::size_t key_bits = 0;
    std::vector<std::uint64_t> dense;
    std::unordered_map<std::uint64_t, std::uint64_t> sparse;

    explicit NarrowTally(std::size_t bits) : key_bits(bits) {
        if (bits <= kDenseKeyBits) dense.assign(std::size_t{1} << bits, 0);
    }

    void add(std::uint64_t key, std::uint64_t count = 1) {
        if (!dense.empty()) {
            dense[key >> (64 - key_bits)] += count;
        } else {
            sparse[key] += count;
        }
    }

    void merge(const NarrowTally& other) {
        if (!dense.empty()) {
            for (std::size_t i = 0; i < dense.size(); ++i) dense[i] += other.dense[i];
        } else {
            for (const auto& [k, c] : other.sparse) sparse[k] += c;
        }
    }

    template <class F>
    void for_each(F&& f) const {
        if (!dense.empty()) {
            for (std::size_t i = 0; i < dense.size(); ++i) {
                if (dense[i] != 0) f(static_cast<std::uint64_t>(i) << (64 - key_bits), dense[i]);
            }
        } else {
            for (const auto& [k, c] : sparse) f(k, c);
        }
    }
};

using WideTally = std::map<std::vector<std::uint64_t>, std::uint64_t>;

struct Enumeration {
    std::size_t key_bits;
    std::size_t key_words;
    std::size_t free_bits;
    std::vector<std::uint64_t> base;     // R s0, key_words words
    std::vector<std::uint64_t> columns;  // free_bits x key_words, column f of R
};

Enumeration prepare(const BitMatrix& R, const EveKnowledge& eve) {
    if (R.cols() != eve.n_bits()) {
        throw DimensionError("oracle: matrix has " + std::to_string(R.cols()) +
                             " columns, Eve's model covers " + std::to_string(eve.n_bits()) +
                             " bits");
    }
    if (eve.free_count() > kMaxFreeBits) {
        throw BudgetError("oracle: 2^" + std::to_string(eve.free_count()) +
                          " consistent strings exceed the 2^24 enumeration budget");
    }
    Enumeration e;
    e.key_bits = R.rows();
    e.key_words = (R.rows() + 63) / 64;
    e.free_bits = eve.free_count();

    const BitVector k0 = hash_key(R, eve.base_string());
    e.base.assign(k0.words().begin(), k0.words().end());

    const auto free = eve.free_positions();
    e.columns.assign(free.size() * e.key_words, 0);
    for (std::size_t f = 0; f < free.size(); ++f) {
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (R.get(i, free[f])) {
                e.columns[f * e.key_words + i / 64] |= std::uint64_t{1} << (63 - i % 64);
            }
        }
    }
    return e;
}

void enumerate_narrow(const Enumeration& e, std::uint64_t begin, std::uint64_t end,
                      NarrowTally& tally) {
    std::uint64_t key = e.base[0];
    const std::uint64_t g0 = gray(begin);
    for (std::size_t f = 0; f < e.free_bits; ++f) {
        if ((g0 >> f) & 1U) key ^= e.columns[f];
    }
    tally.add(key);
    for (std::uint64_t g = begin + 1; g < end; ++g) {
        key ^= e.columns[static_cast<std::size_t>(std::countr_zero(g))];
        tally.add(key);
    }
}

NarrowTally tally_narrow(const Enumeration& e) {
    const std::uint64_t total = std::uint64_t{1} << e.free_bits;
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    if (e.free_bits < kParallelFreeBits || hw == 1) {
        NarrowTally t(e.key_bits);
        enumerate_narrow(e, 0, total, t);
        return t;
    }
    const unsigned workers = std::min<unsigned>(hw, 16);
    std::vector<NarrowTally> parts(workers, NarrowTally(e.key_bits));
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t b = std::min(total, w * chunk);
        const std::uint64_t en = std::min(total, b + chunk);
        if (b == en) continue;
        threads.emplace_back([&e, &parts, w, b, en] { enumerate_narrow(e, b, en, parts[w]); });
    }
    for (auto& t : threads) t.join();
    for (unsigned w = 1; w < workers; ++w) parts[0].merge(parts[w]);
    return std::move(parts[0]);
}

WideTally tally_wide(const Enumeration& e) {
    WideTally tally;
    std::vector<std::uint64_t> key = e.base;
    ++tally[key];
    const std::uint64_t total = std::uint64_t{1} << e.free_bits;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t f = static_cast<std::size_t>(std::countr_zero(g));
        for (std::size_t w = 0; w < e.key_words; ++w) key[w] ^= e.columns[f * e.key_words + w];
        ++tally[key];
    }
    return tally;
}

Rational fraction(std::uint64_t num, std::size_t log2_den) {
    return Rational(BigInt(num), BigInt(1) << log2_den);
}

}  // namespace

EveKnowledge::EveKnowledge(std::size_t n_bits, std::vector<std::pair<std::size_t, bool>> known)
    : n_bits_(n_bits), known_(std::move(known)) {
    std::vector<bool> seen(n_bits_, false);
    for (const auto& [pos, value] : known_) {
        if (pos >= n_bits_) throw DomainError("EveKnowledge: position out of range");
        if (seen[pos]) throw DomainError("EveKnowledge: duplicate position");
        seen[pos] = true;
    }
}

EveKnowledge EveKnowledge::random(std::size_t n_bits, std::size_t t, std::uint64_t seed) {
    if (t > n_bits) throw DomainError("EveKnowledge: t exceeds N");
    SplitMix64 gen(seed);
    std::vector<std::size_t> order(n_bits);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::pair<std::size_t, bool>> known;
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen.next() % (n_bits - i));
        std::swap(order[i], order[j]);
        known.emplace_back(order[i], (gen.next() >> 63) != 0);
    }
    return EveKnowledge(n_bits, std::move(known));
}

EveKnowledge EveKnowledge::everything(const BitVector& s) {
    std::vector<std::pair<std::size_t, bool>> known;
    for (std::size_t i = 0; i < s.size(); ++i) known.emplace_back(i, s.get(i));
    return EveKnowledge(s.size(), std::move(known));
}

std::vector<std::size_t> EveKnowledge::free_positions() const {
    std::vector<bool> is_known(n_bits_, false);
    for (const auto& kv : known_) is_known[kv.first] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_bits_; ++i) {
        if (!is_known[i]) out.push_back(i);
    }
    return out;
}

BitVector EveKnowledge::base_string() const {
    BitVector s(n_bits_);
    for (const auto& [pos, value] : known_) s.set(pos, value);
    return s;
}

KeyTally key_distribution(const BitMatrix& R, const EveKnowledge& eve) {
    const Enumeration e = prepare(R, eve);
    KeyTally out;
    out.key_bits = e.key_bits;
    out.total = std::uint64_t{1} << e.free_bits;
    if (e.key_words == 1) {
        tally_narrow(e).for_each([&](std::uint64_t key, std::uint64_t count) {
            out.counts.emplace_back(BitVector::from_words(std::span(&key, 1), e.key_bits), count);
        });
        std::sort(out.counts.begin(), out.counts.end());
    } else {
        for (const auto& [key, count] : tally_wide(e)) {
            out.counts.emplace_back(BitVector::from_words(key, e.key_bits), count);
        }
    }
    return out;
}

GuessReport exact_guessing_probability(const BitMatrix& R, const EveKnowledge& eve) {
    const Enumeration e = prepare(R, eve);
    std::uint64_t best = 0;
    std::uint64_t support = 0;
    GuessReport report;
    if (e.key_words == 1) {
        std::uint64_t best_key = 0;
        tally_narrow(e).for_each([&](std::uint64_t key, std::uint64_t count) {
            ++support;
            if (count > best || (count == best && key < best_key)) {
                best = count;
                best_key = key;
            }
        });
        report.argmax_key = BitVector::from_words(std::span(&best_key, 1), e.key_bits);
    } else {
        const std::vector<std::uint64_t>* best_key = nullptr;
        const WideTally tally = tally_wide(e);
        for (const auto& [key, count] : tally) {
            ++support;
            if (count > best) {  // map order: first maximum is the smallest key
                best = count;
                best_key = &key;
            }
        }
        report.argmax_key = BitVector::from_words(*best_key, e.key_bits);
    }
    report.p_exact = fraction(best, e.free_bits);
    report.support = support;
    return report;
}

Rational guessing_probability_after_map(const KeyTally& tally,
                                        const std::function<BitVector(const BitVector&)>& f) {
    std::map<BitVector, std::uint64_t> mapped;
    for (const auto& [key, count] : tally.counts) mapped[f(key)] += count;
    std::uint64_t best = 0;
    for (const auto& kv : mapped) best = std::max(best, kv.second);
    return Rational(BigInt(best), BigInt(tally.total));
}

TruncationVerdict verify_truncation(const BitMatrix& R, const EveKnowledge& eve,
                                           std::size_t n2) {
    const BitMatrix sub = submatrix_rows(R, n2);
    TruncationVerdict v;
    v.p_full = exact_guessing_probability(R, eve).p_exact;
    v.p_truncated = exact_guessing_probability(sub, eve).p_exact;
    v.pass = v.p_full <= v.p_truncated;
    return v;
}

CollisionResult collision_rate(std::size_t n, std::size_t N, const BitVector& x,
                               const BitVector& y) {
    if (n == 0 || N == 0) throw DimensionError("collision_rate: dimensions must be positive");
    if (n * N > kMaxMatrixBits) {
        throw BudgetError("collision_rate: 2^" + std::to_string(n * N) +
                          " matrices exceed the 2^16 enumeration budget");
    }
    if (x.size() != N || y.size() != N) throw DimensionError("collision_rate: inputs must have N bits");

    // Matrix m: row i is bits [i N, (i + 1) N) of m; column j is bit j of a row.
    // R x = R y row by row, i.e. every row has even overlap with x ^ y.
    std::uint32_t diff = 0;
    for (std::size_t j = 0; j < N; ++j) {
        diff |= static_cast<std::uint32_t>(x.get(j) != y.get(j)) << j;
    }
    const std::uint64_t row_mask = (std::uint64_t{1} << N) - 1;
    const std::uint64_t matrices = std::uint64_t{1} << (n * N);
    std::uint64_t hits = 0;
    if (n == 1) {
        for (std::uint64_t m = 0; m < matrices; ++m) {
            hits += 1 - (std::popcount(static_cast<std::uint32_t>(m) & diff) & 1);
        }
    } else {
        for (std::uint64_t m = 0; m < matrices; ++m) {
            bool equal = true;
            for (std::size_t i = 0; i < n && equal; ++i) {
                const auto row = static_cast<std::uint32_t>((m >> (i * N)) & row_mask);
                equal = (std::popcount(row & diff) & 1) == 0;
            }
            hits += equal ? 1 : 0;
        }
    }
    return {fraction(hits, n * N), x == y};
}

Rational pow2_neg(std::size_t n) { return Rational(BigInt(1), BigInt(1) << n); }

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

}  // namespace guessbound::oracle
