#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "guessbound/bounds.hpp"
#include "render.hpp"

namespace guessbound::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitBadFlags = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
    kExitOracleFailure = 5,
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string subcommand;

    std::string n_total = "1e6";
    std::optional<std::uint64_t> n_key;
    std::optional<std::uint64_t> n_pe;
    double q_tol = 0.0214;
    double f_ec = 1.1;
    std::string epsilon = "1e-9";

    std::optional<std::uint64_t> known_bits;
    std::uint64_t seed = 0;
    std::optional<std::size_t> truncate_to;
    Format format = Format::json;
    int digits = 3;
    std::string out;

    // hash
    std::string in;
    std::optional<std::size_t> rows;
    std::string kind = "explicit-random";
    std::string truncated_out;
    std::string matrix_in;
    std::string matrix_out;

    // oracle
    std::uint64_t matrix_seeds = 1000;
    std::uint64_t trials = 10000;
};

/// Accepts plain integers and integral scientific forms such as "1e6".
/// Throws DomainError otherwise.
std::uint64_t parse_count(const std::string& text);

/// Defaults N_tol = 1e6, Q_tol = 0.0214, f = 1.1, eps = 1e-9; --n-key and
/// --n-pe override the 0.78 / 0.22 split. Throws DomainError on inconsistent values.
ProtocolParams protocol_params(const RunConfig& config);

Report cmd_bound(const RunConfig& config);
Report cmd_fixed_point(const RunConfig& config);
Report cmd_tables(const RunConfig& config);
/// Writes the key files and the matrix descriptor; returns nothing to render.
void cmd_hash(const RunConfig& config, std::ostream& out);
/// document["all_passed"] carries the verdict.
Report cmd_oracle(const RunConfig& config);

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Returns one of the ExitCode values.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace guessbound::cli
