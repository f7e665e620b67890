#pragma once

#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace guessbound {

/**
 * A probability carried as its base-2 logarithm.
 *
 * Bounds of interest reach 1e-3277, far below the smallest subnormal double,
 * so every security level and guessing probability in the library is stored
 * this way. Probability zero is negative infinity.
 */
class Log2Prob {
public:
    /// Probability one.
    constexpr Log2Prob() noexcept = default;

    /// Throws DomainError for NaN or an exponent above zero.
    static Log2Prob from_log2(double exponent);

    /// Throws DomainError for p outside [0, 1] or NaN.
    static Log2Prob from_probability(double p);

    static constexpr Log2Prob zero() noexcept {
        return Log2Prob(-std::numeric_limits<double>::infinity(), Unchecked{});
    }
    static constexpr Log2Prob one() noexcept { return Log2Prob(); }

    constexpr double log2() const noexcept { return exponent_; }
    double log10() const noexcept;
    /// Linear value; underflows to 0 below about 2^-1074.
    double linear() const noexcept;
    constexpr bool is_zero() const noexcept {
        return exponent_ == -std::numeric_limits<double>::infinity();
    }

    friend constexpr auto operator<=>(Log2Prob a, Log2Prob b) noexcept {
        return a.exponent_ <=> b.exponent_;
    }
    friend constexpr bool operator==(Log2Prob a, Log2Prob b) noexcept {
        return a.exponent_ == b.exponent_;
    }

private:
    struct Unchecked {};
    constexpr Log2Prob(double e, Unchecked) noexcept : exponent_(e) {}

    double exponent_ = 0.0;
};

/// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/**
 * log2(2^a + 2^b), evaluated as max + log2(1 + 2^(min - max)).
 *
 * A sum of two probabilities can exceed one; the result saturates at
 * probability one since it is only ever used as an upper bound.
 */
Log2Prob log2_add(Log2Prob a, Log2Prob b) noexcept;

/// Scientific rendering of a Log2Prob.
struct DecimalForm {
    double coefficient = 0.0;  // in [1, 10), or 0 for probability zero
    long long exponent = 0;
};

/// e = floor(a log10 2), c = 10^(a log10 2 - e). The exponent is never rounded.
DecimalForm to_decimal(Log2Prob a) noexcept;

/// "c×10^e" with `significant_digits` digits in c; "0" for probability zero.
std::string log2_to_decimal_string(Log2Prob a, int significant_digits = 3);

/**
 * Parses probability text into a Log2Prob without going through a linear
 * double, so inputs such as "1e-3277" survive.
 *
 * Accepted forms: "0", plain decimals ("0.5"), "c e-k" scientific notation
 * ("1e-9", "2.5E-400"), "c×10^e" / "cx10^e" / "c*10^e", and powers of two
 * "2^-k". Throws DomainError on malformed text or values above one.
 */
Log2Prob parse_probability(std::string_view text);

}  // namespace guessbound
