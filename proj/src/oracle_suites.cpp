#include <algorithm>
#include <map>
#include <sstream>

#include "guessbound/oracle.hpp"
#include "guessbound/splitmix.hpp"

namespace guessbound::oracle {

namespace {

BitVector random_bits(SplitMix64& gen, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gen.next() >> 63) v.set(i, true);
    }
    return v;
}

BitVector from_index(std::uint64_t index, std::size_t n) {
    BitVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
        if ((index >> j) & 1U) v.set(j, true);
    }
    return v;
}

SuiteResult named(std::string name) {
    SuiteResult r;
    r.name = std::move(name);
    return r;
}

void fail(SuiteResult& r, const std::string& what) {
    if (r.passed) r.detail = what;
    r.passed = false;
}

std::string describe(const BitMatrix& R) {
    std::ostringstream os;
    os << R.rows() << "x" << R.cols() << " " << to_string(R.kind());
    if (R.seed()) os << " seed " << R.seed()->value;
    return os.str();
}

bool commutes(const BitMatrix& R, const BitVector& s, std::size_t n2) {
    return truncate_key(hash_key(R, s), n2) == hash_key(submatrix_rows(R, n2), s);
}

}  // namespace

SuiteResult truncation_sweep(const SuiteConfig& config) {
    SuiteResult r = named("truncation never raises the guessing probability");
    SplitMix64 seeds(config.seed);
    Rational tightest_gap = 1;
    for (std::uint64_t s = 0; s < config.matrix_seeds; ++s) {
        const HashSeed seed{seeds.next()};
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t N = n; N <= 8; ++N) {
                std::vector<BitMatrix> family{random_matrix(seed, n, N)};
                if (n < N) family.push_back(toeplitz_matrix(seed, n, N));
                for (const auto& R : family) {
                    for (std::size_t t = 0; t <= N; ++t) {
                        const auto eve = EveKnowledge::random(N, t, seed.value ^ (t * 0x9E37ULL));
                        for (std::size_t n2 = 1; n2 <= n; ++n2) {
                            const auto v = verify_truncation(R, eve, n2);
                            ++r.cases;
                            if (!v.pass) {
                                fail(r, describe(R) + " t=" + std::to_string(t) +
                                            " n2=" + std::to_string(n2) + ": p(k)=" +
                                            to_string(v.p_full) + " > p(k')=" +
                                            to_string(v.p_truncated));
                            }
                            if (n2 < n) tightest_gap = std::min(tightest_gap, Rational(v.p_truncated - v.p_full));
                        }
                    }
                }
            }
        }
    }
    if (r.passed) {
        r.detail = std::to_string(config.matrix_seeds) +
                   " seeds; smallest p(k') - p(k) with n2 < n: " + to_string(tightest_gap);
    }
    return r;
}

SuiteResult universality_suite(const SuiteConfig& config) {
    SuiteResult r = named("two-universality of the random-matrix family");
    SplitMix64 gen(0x5EED);
    const std::size_t max_bits = std::min(config.universality_max_bits, kMaxMatrixBits);
    for (std::size_t n = 1; n <= max_bits; ++n) {
        for (std::size_t N = 1; n * N <= max_bits; ++N) {
            const Rational expected = pow2_neg(n);
            auto check = [&](const BitVector& x, const BitVector& y) {
                const auto c = collision_rate(n, N, x, y);
                ++r.cases;
                if (c.degenerate || c.rate != expected) {
                    fail(r, "n=" + std::to_string(n) + " N=" + std::to_string(N) + " x=" +
                                x.to_string() + " y=" + y.to_string() + ": rate " +
                                to_string(c.rate) + ", expected " + to_string(expected));
                }
            };
            if (N <= 4) {
                // every ordered pair
                for (std::uint64_t a = 0; a < (1U << N); ++a) {
                    for (std::uint64_t b = 0; b < (1U << N); ++b) {
                        if (a != b) check(from_index(a, N), from_index(b, N));
                    }
                }
            } else {
                // every non-zero difference, each from a pseudo-random anchor
                for (std::uint64_t d = 1; d < (std::uint64_t{1} << N); ++d) {
                    const BitVector x = random_bits(gen, N);
                    check(x, x ^ from_index(d, N));
                }
            }
        }
    }
    if (r.passed) r.detail = "all collision rates equal 2^-n exactly";
    return r;
}

SuiteResult commutation_suite(const SuiteConfig& config) {
    SuiteResult r = named("truncate(hash(R, s)) == hash(submatrix(R), s)");

    // Exhaustive for N <= 6: all dimensions, all inputs, all diagonals for the
    // Toeplitz family and all matrices for the random family when n N <= 12.
    for (std::size_t N = 1; N <= 6; ++N) {
        for (std::size_t n1 = 1; n1 <= N; ++n1) {
            std::vector<BitMatrix> family;
            if (n1 * N <= 12) {
                for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n1 * N)); ++m) {
                    std::vector<BitVector> rows;
                    for (std::size_t i = 0; i < n1; ++i) rows.push_back(from_index(m >> (i * N), N));
                    family.emplace_back(std::move(rows), MatrixKind::explicit_random);
                }
            } else {
                for (std::uint64_t s = 0; s < 64; ++s) family.push_back(random_matrix(HashSeed{s}, n1, N));
            }
            if (n1 < N) {
                for (std::uint64_t d = 0; d < (std::uint64_t{1} << (N - 1)); ++d) {
                    family.push_back(toeplitz_from_diagonal(from_index(d, N - 1), n1, N));
                }
            }
            for (const auto& R : family) {
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << N); ++s) {
                    const BitVector sv = from_index(s, N);
                    for (std::size_t n2 = 1; n2 <= n1; ++n2) {
                        ++r.cases;
                        if (!commutes(R, sv, n2)) fail(r, describe(R) + " s=" + sv.to_string());
                    }
                }
            }
        }
    }

    SplitMix64 gen(config.seed ^ 0xC0FFEEULL);
    for (std::uint64_t c = 0; c < config.commutation_cases; ++c) {
        const bool toeplitz = (c % 2) == 1;
        const std::size_t N = 2 + static_cast<std::size_t>(gen.next() % (config.commutation_max_cols - 1));
        const std::size_t n1_max = toeplitz ? N - 1 : N;
        const std::size_t n1 = 1 + static_cast<std::size_t>(gen.next() % n1_max);
        const std::size_t n2 = 1 + static_cast<std::size_t>(gen.next() % n1);
        const HashSeed seed{gen.next()};
        const BitMatrix R = toeplitz ? toeplitz_matrix(seed, n1, N) : random_matrix(seed, n1, N);
        const BitVector s = random_bits(gen, N);
        ++r.cases;
        if (!commutes(R, s, n2)) fail(r, describe(R) + " n2=" + std::to_string(n2));
    }
    if (r.passed) r.detail = "exhaustive N <= 6 plus randomized N <= " + std::to_string(config.commutation_max_cols);
    return r;
}

SuiteResult full_rank_suite(const SuiteConfig& config) {
    SuiteResult r = named("full-rank R, no side information: p = 2^-n");
    SplitMix64 seeds(config.seed ^ 0xF011ULL);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const HashSeed seed{seeds.next()};
        for (std::size_t N = 2; N <= 12; ++N) {
            for (std::size_t n = 1; n < N && n <= 6; ++n) {
                for (const auto& R : {random_matrix(seed, n, N), toeplitz_matrix(seed, n, N)}) {
                    if (gf2_rank(R) != n) continue;
                    const auto g = exact_guessing_probability(R, EveKnowledge::nothing(N));
                    ++r.cases;
                    if (g.p_exact != pow2_neg(n)) {
                        fail(r, describe(R) + ": p = " + to_string(g.p_exact));
                    }
                }
            }
        }
    }
    if (r.passed) r.detail = "every full-rank case gave exactly 2^-n";
    return r;
}

SuiteResult function_of_key_suite(const SuiteConfig& config) {
    SuiteResult r = named("any function of the key is at least as guessable");
    SplitMix64 gen(config.seed ^ 0xF00DULL);
    for (std::uint64_t c = 0; c < 2000; ++c) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen.next() % 4);
        const std::size_t N = n + static_cast<std::size_t>(gen.next() % (9 - n));
        const std::size_t t = static_cast<std::size_t>(gen.next() % (N + 1));
        const std::size_t m = 1 + static_cast<std::size_t>(gen.next() % 4);
        const HashSeed seed{gen.next()};
        const BitMatrix R = random_matrix(seed, n, N);
        const auto eve = EveKnowledge::random(N, t, gen.next());

        std::map<BitVector, BitVector> table;
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            table.emplace(from_index(k, n), random_bits(gen, m));
        }
        const auto tally = key_distribution(R, eve);
        const Rational before = exact_guessing_probability(R, eve).p_exact;
        const Rational after =
            guessing_probability_after_map(tally, [&](const BitVector& k) { return table.at(k); });
        ++r.cases;
        if (after < before) {
            fail(r, describe(R) + ": map lowered " + to_string(before) + " to " + to_string(after));
        }
    }
    if (r.passed) r.detail = "2000 random maps";
    return r;
}

std::vector<SuiteResult> run_all_suites(const SuiteConfig& config) {
    return {truncation_sweep(config), universality_suite(config), commutation_suite(config),
            full_rank_suite(config), function_of_key_suite(config)};
}

}  // namespace guessbound::oracle
