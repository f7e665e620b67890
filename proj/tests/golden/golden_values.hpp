// Generated by tests/oracles/golden_oracle.py (mpmath, 80 digits). Do not edit.
#pragma once

#include <array>
#include <cstdint>

namespace guessbound::golden {

inline constexpr double kEntropyOf0_0214 = 0.14923059495049139;
inline constexpr double kMuTableRow1e6 = 0.011171608610935754;
inline constexpr double kLog2AddBig = -33.2;

struct TableRow {
    std::uint64_t n_total;
    double key_length_rhs;       // real-valued key length at eps = 1e-9
    double mu_at_target;
    double fixed_point_real;     // n2*
    std::uint64_t fixed_point_n2; // floor(n2*)
    double log2_eps_at_n2;       // epsilon_of_length(n2)
    double neg_log10_truncated_bound; // (n2 - 1) * log10(2)
    std::array<double, 3> key_length_at_1e_32_327_3277; // -1 marks infeasible
};

inline constexpr std::array<TableRow, 3> kTableRows{{
    {10000, 2014.1836641794383, 0.11174121928732592, 108.04667072640281, 108, -108.04958639999254, 32.210209536045988, {136.16013185398361, -1.0, -1.0}},
    {100000, 40588.455990482141, 0.035328450940457214, 1088.2207565035015, 1088, -1088.2345351531691, 327.21960528674756, {31556.226685086633, 1119.489977040349, -1.0}},
    {1000000, 490309.01673943554, 0.011171608610935754, 10889.962280429423, 10889, -10890.022336054415, 3277.6145927894273, {454787.74662717181, 314354.93795593973, 10954.127239250096}},
}};

// First SplitMix64 outputs for seed 0 and seed 1.
inline constexpr std::array<std::uint64_t, 4> kSplitMixSeed0{{0xE220A8397B1DCDAFULL, 0x6E789E6AA1B965F4ULL, 0x06C45D188009454FULL, 0xF88BB8A8724C81ECULL}};
inline constexpr std::array<std::uint64_t, 4> kSplitMixSeed1{{0x910A2DEC89025CC1ULL, 0xBEEB8DA1658EEC67ULL, 0xF893A2EEFB32555EULL, 0x71C18690EE42C90BULL}};

}  // namespace guessbound::golden
