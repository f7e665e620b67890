#pragma once

#include <cstdint>
#include <optional>

#include "guessbound/numerics.hpp"

namespace guessbound {

/**
 * Public finite-key parameters of a BB84-style run.
 *
 * The correctness budget is taken equal to the secrecy budget, so a single
 * epsilon enters the key-length formula.
 */
struct ProtocolParams {
    std::uint64_t n_total = 0;  ///< sifted bits, key generation plus estimation
    std::uint64_t n_key = 0;    ///< bits used for key generation (N)
    std::uint64_t n_pe = 0;     ///< bits used for parameter estimation (N_z)
    double q_tol = 0.0214;      ///< channel error tolerance
    double f_ec = 1.1;          ///< error-correction inefficiency
    Log2Prob eps_target = Log2Prob::from_log2(-29.897352853986263);  ///< 1e-9

    /// N = round(0.78 N_tol), N_z = N_tol - N, Q_tol = 2.14%, f = 1.1, eps = 1e-9.
    static ProtocolParams with_default_split(std::uint64_t n_total);

    /// Throws DomainError when an invariant is broken.
    void validate() const;
};

struct BoundIntermediates {
    double mu = 0.0;    ///< statistical fluctuation of the phase error rate
    double h_q = 0.0;   ///< h(Q_tol)
    double ln2e = 0.0;  ///< ln(2 / eps)
    /// Real-valued key length N[1 - h(Q_tol + mu)] - f N h(Q_tol) - log2(2 / eps^3).
    /// Empty when Q_tol + mu >= 0.5.
    std::optional<double> rhs;
};

/// log2_eps may be up to 1 (eps = 2), where mu vanishes. Throws DomainError above that.
double mu_term(const ProtocolParams& params, double log2_eps);
double mu_term(const ProtocolParams& params, Log2Prob eps);

BoundIntermediates bound_intermediates(const ProtocolParams& params, Log2Prob eps);

/// floor of the real-valued key length, or 0 when it is negative.
/// Throws InfeasibleError when Q_tol + mu >= 0.5.
std::uint64_t key_length(const ProtocolParams& params, Log2Prob eps);

/// Smallest security level (to within 1e-6 on the log2 axis, rounded towards
/// the safe side) at which an n2-bit key can be extracted.
/// Throws NoSolutionError when no eps <= 1 achieves n2.
Log2Prob epsilon_of_length(const ProtocolParams& params, std::uint64_t n2);

struct FixedPoint {
    double n2_real = 0.0;  ///< real root of 2^-n2 = eps(n2)
    std::uint64_t n2 = 0;  ///< floor(n2_real)
    Log2Prob eps_kprime;   ///< epsilon_of_length(n2)
};

/// Residual 4 n + 1 + f N h(Q_tol) - N[1 - h(Q_tol + mu(n))] with ln(2/eps) = (n+1) ln 2.
/// Strictly increasing in n; +inf once Q_tol + mu >= 0.5.
double fixed_point_residual(const ProtocolParams& params, double n2);

/// Throws InfeasibleError when even n2 = 1 cannot satisfy the condition.
FixedPoint fixed_point_n2(const ProtocolParams& params);

/// 2^-n1 + eps_k, the guessing-probability bound of an eps_k-secure n1-bit key.
Log2Prob trace_distance_bound(std::uint64_t n1, Log2Prob eps_k);

struct TruncationBound {
    Log2Prob bound;  ///< 2^-(n2 - 1)
    std::uint64_t n2 = 0;
};

/// Bound obtained by truncating the n1-bit key to the fixed-point length n2.
/// Throws InapplicableError when n1 <= n2.
TruncationBound truncation_bound(const ProtocolParams& params, std::uint64_t n1);

/// 2^-(n2 - t - 1) capped at one: Eve already knows t bits of the truncated key.
/// Throws DomainError when t > n2.
Log2Prob known_plaintext_bound(std::uint64_t n2, std::uint64_t t);

struct BoundReport {
    std::uint64_t n1 = 0;
    Log2Prob eps_k;
    Log2Prob direct_bound;
    std::optional<FixedPoint> fixed_point;
    /// Present only when n1 > n2.
    std::optional<Log2Prob> truncated_bound;
    double rate_r = 0.0;
    std::optional<double> rate_rprime;
};

/// Full single-point analysis at params.eps_target. Throws InfeasibleError
/// when no key can be extracted at all.
BoundReport analyze(const ProtocolParams& params);

}  // namespace guessbound
