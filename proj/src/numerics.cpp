#include "guessbound/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "guessbound/errors.hpp"

namespace guessbound {

namespace {

constexpr double kLog10Of2 = 0.30102999566398119521;  // log10(2)
constexpr double kLog2Of10 = 3.32192809488736234787;  // log2(10)

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, std::string_view whole) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("malformed probability '" + std::string(whole) + "'");
    }
    return value;
}

long long parse_integer(std::string_view s, std::string_view whole) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("malformed exponent in '" + std::string(whole) + "'");
    }
    return value;
}

// log2(c * 10^e) for a decimal mantissa c > 0.
Log2Prob from_mantissa_exponent(double mantissa, double exponent10, std::string_view whole) {
    if (mantissa < 0.0 || !std::isfinite(mantissa)) {
        throw DomainError("probability must be non-negative: '" + std::string(whole) + "'");
    }
    if (mantissa == 0.0) return Log2Prob::zero();
    const double l = std::log2(mantissa) + exponent10 * kLog2Of10;
    // tolerate representation noise on exact ones such as "10e-1"
    if (l > 0.0 && l < 1e-12) return Log2Prob::one();
    return Log2Prob::from_log2(l);
}

}  // namespace

Log2Prob Log2Prob::from_log2(double exponent) {
    if (std::isnan(exponent) || exponent > 0.0) {
        throw DomainError("log2 probability must be <= 0, got " + std::to_string(exponent));
    }
    return Log2Prob(exponent, Unchecked{});
}

Log2Prob Log2Prob::from_probability(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0) {
        throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
    }
    if (p == 0.0) return zero();
    return Log2Prob(std::log2(p), Unchecked{});
}

double Log2Prob::log10() const noexcept { return exponent_ * kLog10Of2; }

double Log2Prob::linear() const noexcept { return std::exp2(exponent_); }

double binary_entropy(double x) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw DomainError("binary_entropy: argument must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

Log2Prob log2_add(Log2Prob a, Log2Prob b) noexcept {
    const double hi = std::max(a.log2(), b.log2());
    const double lo = std::min(a.log2(), b.log2());
    if (lo == -std::numeric_limits<double>::infinity()) {
        return hi == -std::numeric_limits<double>::infinity() ? Log2Prob::zero()
                                                              : Log2Prob::from_log2(hi);
    }
    const double sum = hi + std::log1p(std::exp2(lo - hi)) / std::numbers::ln2;
    return Log2Prob::from_log2(std::min(sum, 0.0));
}

DecimalForm to_decimal(Log2Prob a) noexcept {
    if (a.is_zero()) return {};
    const double l10 = a.log2() * kLog10Of2;
    const double e = std::floor(l10);
    return {std::pow(10.0, l10 - e), static_cast<long long>(e)};
}

std::string log2_to_decimal_string(Log2Prob a, int significant_digits) {
    if (a.is_zero()) return "0";
    significant_digits = std::clamp(significant_digits, 1, 17);
    DecimalForm d = to_decimal(a);

    const int decimals = significant_digits - 1;
    const double scale = std::pow(10.0, decimals);
    double c = std::round(d.coefficient * scale) / scale;
    if (c >= 10.0) {
        // 9.996 at three digits rounds to 10.0; renormalize to keep 1 <= c < 10
        c /= 10.0;
        ++d.exponent;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f\xC3\x97" "10^%lld", decimals, c, d.exponent);
    return buf;
}

Log2Prob parse_probability(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty probability");

    if (s.starts_with("2^")) {
        return Log2Prob::from_log2(parse_double(s.substr(2), text));
    }
    for (std::string_view sep : {std::string_view("\xC3\x97" "10^"), std::string_view("x10^"),
                                 std::string_view("*10^")}) {
        if (auto pos = s.find(sep); pos != std::string_view::npos) {
            const double c = parse_double(s.substr(0, pos), text);
            const long long e = parse_integer(s.substr(pos + sep.size()), text);
            return from_mantissa_exponent(c, static_cast<double>(e), text);
        }
    }
    if (s.starts_with("10^")) {
        return from_mantissa_exponent(1.0, static_cast<double>(parse_integer(s.substr(3), text)),
                                      text);
    }
    if (auto pos = s.find_first_of("eE"); pos != std::string_view::npos) {
        const double c = parse_double(s.substr(0, pos), text);
        const long long e = parse_integer(s.substr(pos + 1), text);
        return from_mantissa_exponent(c, static_cast<double>(e), text);
    }
    return from_mantissa_exponent(parse_double(s, text), 0.0, text);
}

}  // namespace guessbound
