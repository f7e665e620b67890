#include "guessbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "guessbound/errors.hpp"

namespace guessbound {

namespace {

constexpr double kSolverTolerance = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Real-valued key length as a function of log2(eps); empty outside the
// monotone regime Q_tol + mu < 0.5.
std::optional<double> key_length_rhs(const ProtocolParams& p, double log2_eps) {
    const double mu = mu_term(p, log2_eps);
    if (!(p.q_tol + mu < 0.5)) return std::nullopt;
    const double n = static_cast<double>(p.n_key);
    return n * (1.0 - binary_entropy(p.q_tol + mu)) - p.f_ec * n * binary_entropy(p.q_tol) -
           (1.0 - 3.0 * log2_eps);
}

}  // namespace

ProtocolParams ProtocolParams::with_default_split(std::uint64_t n_total) {
    ProtocolParams p;
    p.n_total = n_total;
    p.n_key = static_cast<std::uint64_t>(std::llround(0.78 * static_cast<double>(n_total)));
    p.n_pe = n_total - p.n_key;
    return p;
}

void ProtocolParams::validate() const {
    if (n_key < 1 || n_pe < 1) throw DomainError("N and N_z must be at least 1");
    if (n_key + n_pe > n_total) throw DomainError("N + N_z exceeds N_tol");
    if (!(q_tol >= 0.0 && q_tol < 0.5)) throw DomainError("Q_tol must lie in [0, 0.5)");
    if (!(f_ec >= 1.0) || !std::isfinite(f_ec)) throw DomainError("f must be finite and >= 1");
    if (!(eps_target.log2() < 0.0)) throw DomainError("target epsilon must be below 1");
}

double mu_term(const ProtocolParams& params, double log2_eps) {
    if (std::isnan(log2_eps) || log2_eps > 1.0) {
        throw DomainError("mu_term: epsilon must be at most 2");
    }
    const double n = static_cast<double>(params.n_key);
    const double nz = static_cast<double>(params.n_pe);
    const double ln2e = (1.0 - log2_eps) * std::numbers::ln2;
    return std::sqrt((n + nz) / (n * nz) * (nz + 1.0) / nz * ln2e);
}

double mu_term(const ProtocolParams& params, Log2Prob eps) { return mu_term(params, eps.log2()); }

BoundIntermediates bound_intermediates(const ProtocolParams& params, Log2Prob eps) {
    BoundIntermediates out;
    out.mu = mu_term(params, eps);
    out.h_q = binary_entropy(params.q_tol);
    out.ln2e = (1.0 - eps.log2()) * std::numbers::ln2;
    out.rhs = key_length_rhs(params, eps.log2());
    return out;
}

std::uint64_t key_length(const ProtocolParams& params, Log2Prob eps) {
    const auto rhs = key_length_rhs(params, eps.log2());
    if (!rhs) {
        throw InfeasibleError("Q_tol + mu >= 0.5 at the requested epsilon");
    }
    if (*rhs < 0.0) return 0;
    return static_cast<std::uint64_t>(std::floor(*rhs));
}

Log2Prob epsilon_of_length(const ProtocolParams& params, std::uint64_t n2) {
    if (n2 < 1) throw DomainError("epsilon_of_length: n2 must be at least 1");
    const double target = static_cast<double>(n2);

    // rhs is increasing in log2(eps) on its feasible region, and the lower
    // end of the bracket is always infeasible or far below any target.
    double lo = -20.0 * static_cast<double>(params.n_key);
    double hi = 0.0;
    const auto top = key_length_rhs(params, hi);
    if (!top || *top < target) {
        throw NoSolutionError("no epsilon <= 1 yields a " + std::to_string(n2) + "-bit key");
    }
    while (hi - lo > kSolverTolerance) {
        const double mid = 0.5 * (lo + hi);
        const auto v = key_length_rhs(params, mid);
        if (v && *v >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return Log2Prob::from_log2(hi);
}

double fixed_point_residual(const ProtocolParams& params, double n2) {
    const double mu = mu_term(params, -n2);
    if (!(params.q_tol + mu < 0.5)) return kInf;
    const double n = static_cast<double>(params.n_key);
    return 4.0 * n2 + 1.0 + params.f_ec * n * binary_entropy(params.q_tol) -
           n * (1.0 - binary_entropy(params.q_tol + mu));
}

FixedPoint fixed_point_n2(const ProtocolParams& params) {
    double lo = 1.0;
    double hi = static_cast<double>(params.n_key);
    if (!(fixed_point_residual(params, lo) < 0.0)) {
        throw InfeasibleError("no fixed point n2 >= 1 exists at these parameters");
    }
    if (fixed_point_residual(params, hi) < 0.0) {
        // cannot happen for finite N: 4N + 1 exceeds N[1 - h]
        throw NoSolutionError("fixed point lies above N");
    }
    while (hi - lo > kSolverTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (fixed_point_residual(params, mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    FixedPoint fp;
    fp.n2_real = lo;
    fp.n2 = static_cast<std::uint64_t>(std::floor(lo));
    fp.eps_kprime = epsilon_of_length(params, fp.n2);
    return fp;
}

Log2Prob trace_distance_bound(std::uint64_t n1, Log2Prob eps_k) {
    if (n1 < 1) throw DomainError("key length must be at least 1");
    return log2_add(Log2Prob::from_log2(-static_cast<double>(n1)), eps_k);
}

TruncationBound truncation_bound(const ProtocolParams& params, std::uint64_t n1) {
    const FixedPoint fp = fixed_point_n2(params);
    if (n1 <= fp.n2) {
        throw InapplicableError("truncation bound needs n1 > n2 (n1 = " + std::to_string(n1) +
                                ", n2 = " + std::to_string(fp.n2) + ")");
    }
    return {Log2Prob::from_log2(-(static_cast<double>(fp.n2) - 1.0)), fp.n2};
}

Log2Prob known_plaintext_bound(std::uint64_t n2, std::uint64_t t) {
    if (t > n2) throw DomainError("known bits exceed the truncated key length");
    const double exponent = -(static_cast<double>(n2) - static_cast<double>(t) - 1.0);
    return Log2Prob::from_log2(std::min(exponent, 0.0));
}

BoundReport analyze(const ProtocolParams& params) {
    params.validate();
    BoundReport r;
    r.eps_k = params.eps_target;
    r.n1 = key_length(params, params.eps_target);
    if (r.n1 == 0) throw InfeasibleError("no key can be extracted at these parameters");
    r.direct_bound = trace_distance_bound(r.n1, r.eps_k);
    r.rate_r = static_cast<double>(r.n1) / static_cast<double>(params.n_total);

    try {
        r.fixed_point = fixed_point_n2(params);
    } catch (const InfeasibleError&) {
        return r;
    }
    r.rate_rprime = static_cast<double>(r.fixed_point->n2) / static_cast<double>(params.n_total);
    if (r.n1 > r.fixed_point->n2) {
        r.truncated_bound = Log2Prob::from_log2(-(static_cast<double>(r.fixed_point->n2) - 1.0));
    }
    return r;
}

}  // namespace guessbound
