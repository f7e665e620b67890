#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "golden/golden_values.hpp"
#include "guessbound/errors.hpp"
#include "guessbound/numerics.hpp"
#include "guessbound/splitmix.hpp"

using namespace guessbound;

namespace {

Log2Prob lp(double e) { return Log2Prob::from_log2(e); }

}  // namespace

TEST_CASE("Log2Prob construction") {
    CHECK(Log2Prob::from_probability(0.5).log2() == -1.0);
    CHECK(Log2Prob::from_probability(0.0).is_zero());
    CHECK(Log2Prob::one().log2() == 0.0);
    CHECK_THROWS_AS(Log2Prob::from_probability(1.5), DomainError);
    CHECK_THROWS_AS(Log2Prob::from_probability(-0.1), DomainError);
    CHECK_THROWS_AS(Log2Prob::from_probability(std::nan("")), DomainError);
    CHECK_THROWS_AS(Log2Prob::from_log2(0.25), DomainError);
    CHECK_THROWS_AS(Log2Prob::from_log2(std::nan("")), DomainError);
}

TEST_CASE("Log2Prob ordering follows the probabilities") {
    SplitMix64 gen(7);
    for (int i = 0; i < 1000; ++i) {
        const double a = static_cast<double>(gen.next() >> 11) * 0x1.0p-53;
        const double b = static_cast<double>(gen.next() >> 11) * 0x1.0p-53;
        const auto la = Log2Prob::from_probability(a);
        const auto lb = Log2Prob::from_probability(b);
        CHECK((a < b) == (la < lb));
        CHECK((a == b) == (la == lb));
    }
    CHECK(Log2Prob::zero() < lp(-1e9));
}

TEST_CASE("binary_entropy examples") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.0214) == doctest::Approx(golden::kEntropyOf0_0214).epsilon(1e-14));
    CHECK(binary_entropy(0.0214) == doctest::Approx(0.14923).epsilon(1e-4));
}

TEST_CASE("binary_entropy rejects the outside of [0, 1]") {
    CHECK_THROWS_AS(binary_entropy(-1e-12), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.0000001), DomainError);
    CHECK_THROWS_AS(binary_entropy(std::nan("")), DomainError);
    CHECK_THROWS_AS(binary_entropy(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("binary_entropy symmetry and monotonicity on a dense grid") {
    constexpr int kSteps = 20000;
    double previous = -1.0;
    for (int i = 0; i <= kSteps; ++i) {
        const double x = static_cast<double>(i) / kSteps;
        const double hx = binary_entropy(x);
        REQUIRE(hx >= 0.0);
        REQUIRE(hx <= 1.0);
        CHECK(hx == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-12));
        if (x <= 0.5) {
            CHECK(hx > previous);
            previous = hx;
        }
    }
}

TEST_CASE("log2_add examples") {
    CHECK(log2_add(lp(-1), lp(-1)).log2() == 0.0);
    CHECK(log2_add(lp(-10), Log2Prob::zero()).log2() == -10.0);
    CHECK(log2_add(Log2Prob::zero(), Log2Prob::zero()).is_zero());
    CHECK(log2_add(lp(-3322.0), lp(-33.2)).log2() == doctest::Approx(golden::kLog2AddBig));
    // the smaller term is far below double resolution
    CHECK(log2_add(lp(-3322.0), lp(-33.2)).log2() == -33.2);
}

TEST_CASE("log2_add saturates at probability one") {
    CHECK(log2_add(lp(-0.1), lp(-0.1)).log2() == 0.0);
}

TEST_CASE("log2_add properties") {
    SplitMix64 gen(11);
    auto draw = [&] {
        const auto r = gen.next();
        if (r % 17 == 0) return Log2Prob::zero();
        return lp(-static_cast<double>(r >> 40) / 1000.0);
    };
    for (int i = 0; i < 5000; ++i) {
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        CHECK(log2_add(a, b) == log2_add(b, a));
        CHECK(log2_add(a, Log2Prob::zero()) == a);
        CHECK(log2_add(a, b) >= a);
        if (b <= c) CHECK(log2_add(a, b) <= log2_add(a, c));
    }
}

TEST_CASE("log2_to_decimal_string examples") {
    CHECK(log2_to_decimal_string(lp(-1)) == "5.00\xC3\x97" "10^-1");
    CHECK(log2_to_decimal_string(lp(0)) == "1.00\xC3\x97" "10^0");
    CHECK(log2_to_decimal_string(Log2Prob::zero()) == "0");
    const double two_e_minus_3277 = -(3277.0 * std::log2(10.0) - 1.0);
    CHECK(log2_to_decimal_string(lp(two_e_minus_3277)) == "2.00\xC3\x97" "10^-3277");
    CHECK(log2_to_decimal_string(lp(-1), 1) == "5\xC3\x97" "10^-1");
    CHECK(log2_to_decimal_string(lp(-1), 5) == "5.0000\xC3\x97" "10^-1");
}

TEST_CASE("decimal rendering keeps the coefficient below ten") {
    // 9.9996e-5 at three digits would print as 10.0
    const auto a = Log2Prob::from_probability(9.9996e-5);
    CHECK(log2_to_decimal_string(a) == "1.00\xC3\x97" "10^-4");
}

TEST_CASE("decimal form round-trips through the parser") {
    SplitMix64 gen(3);
    for (int i = 0; i < 2000; ++i) {
        const double a = -static_cast<double>(gen.next() >> 12) / static_cast<double>(1ULL << 52) * 1e6;
        const auto text = log2_to_decimal_string(lp(a), 17);
        const auto back = parse_probability(text);
        CHECK(std::abs(back.log2() - a) <= 1e-6 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("parse_probability accepted forms") {
    CHECK(parse_probability("0.5").log2() == doctest::Approx(-1.0));
    CHECK(parse_probability("1e-9").log2() == doctest::Approx(-29.897352853986263));
    CHECK(parse_probability("1e-3277").log2() == doctest::Approx(-3277.0 * std::log2(10.0)));
    CHECK(parse_probability("2^-100").log2() == -100.0);
    CHECK(parse_probability("2x10^-3277").log2() ==
          doctest::Approx(1.0 - 3277.0 * std::log2(10.0)));
    CHECK(parse_probability("10^-32").log2() == doctest::Approx(-32.0 * std::log2(10.0)));
    CHECK(parse_probability("1").log2() == 0.0);
    CHECK(parse_probability("10e-1").log2() == 0.0);
    CHECK(parse_probability("0").is_zero());
    CHECK_THROWS_AS(parse_probability("2"), DomainError);
    CHECK_THROWS_AS(parse_probability("abc"), DomainError);
    CHECK_THROWS_AS(parse_probability(""), DomainError);
    CHECK_THROWS_AS(parse_probability("-1e-3"), DomainError);
}
