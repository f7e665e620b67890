#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "guessbound/bit_matrix.hpp"
#include "guessbound/errors.hpp"
#include "guessbound/key_io.hpp"
#include "guessbound/oracle.hpp"

namespace guessbound::cli {

namespace {

constexpr std::uint64_t kTableSizes[] = {10000, 100000, 1000000};
constexpr double kLog10Of2 = 0.30102999566398119521;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json params_json(const ProtocolParams& p, int digits) {
    Json j = Json::object();
    j["n_total"] = p.n_total;
    j["n_key"] = p.n_key;
    j["n_pe"] = p.n_pe;
    j["q_tol"] = p.q_tol;
    j["f_ec"] = p.f_ec;
    j["epsilon"] = probability_json(p.eps_target, digits);
    return j;
}

Json header(std::string_view command) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

double rate(std::uint64_t n, std::uint64_t n_total) {
    return static_cast<double>(n) / static_cast<double>(n_total);
}

// Flat copy of a report for csv/table output, without the bookkeeping fields.
Json record_of(const Json& document) {
    Json r = document;
    r.erase("schema_version");
    r.erase("command");
    return r;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

// Error messages from a file get the file name in front.
template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const FormatError& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace

std::uint64_t parse_count(const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !(value >= 0.0) ||
        value > 9007199254740992.0 || std::floor(value) != value) {
        throw DomainError("expected a non-negative integer count, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(value);
}

ProtocolParams protocol_params(const RunConfig& config) {
    const std::uint64_t n_total = parse_count(config.n_total);
    if (n_total < 2) throw DomainError("--n-total must be at least 2");
    ProtocolParams p = ProtocolParams::with_default_split(n_total);
    if (config.n_key && config.n_pe) {
        p.n_key = *config.n_key;
        p.n_pe = *config.n_pe;
    } else if (config.n_key) {
        if (*config.n_key >= n_total) throw DomainError("--n-key must be below --n-total");
        p.n_key = *config.n_key;
        p.n_pe = n_total - p.n_key;
    } else if (config.n_pe) {
        if (*config.n_pe >= n_total) throw DomainError("--n-pe must be below --n-total");
        p.n_pe = *config.n_pe;
        p.n_key = n_total - p.n_pe;
    }
    p.q_tol = config.q_tol;
    p.f_ec = config.f_ec;
    p.eps_target = parse_probability(config.epsilon);
    p.validate();
    return p;
}

Report cmd_bound(const RunConfig& config) {
    const ProtocolParams p = protocol_params(config);
    const BoundReport r = analyze(p);
    const int d = config.digits;

    Json doc = header("bound");
    doc["params"] = params_json(p, d);
    doc["mu"] = mu_term(p, p.eps_target);
    doc["n1"] = r.n1;
    doc["direct_bound"] = probability_json(r.direct_bound, d);
    if (r.fixed_point) {
        Json fp = Json::object();
        fp["n2_real"] = r.fixed_point->n2_real;
        fp["n2"] = r.fixed_point->n2;
        fp["eps_kprime"] = probability_json(r.fixed_point->eps_kprime, d);
        doc["fixed_point"] = fp;
    } else {
        doc["fixed_point"] = nullptr;
    }
    if (r.truncated_bound) {
        doc["truncated_bound"] = probability_json(*r.truncated_bound, d);
    } else {
        doc["truncated_bound"] = nullptr;
    }
    if (config.known_bits) {
        if (!r.fixed_point) throw InfeasibleError("no fixed point, known-plaintext bound undefined");
        Json kpa = Json::object();
        kpa["known_bits"] = *config.known_bits;
        kpa["bound"] = probability_json(known_plaintext_bound(r.fixed_point->n2, *config.known_bits), d);
        doc["known_plaintext"] = kpa;
    }
    doc["rate_r"] = r.rate_r;
    if (r.rate_rprime) {
        doc["rate_rprime"] = *r.rate_rprime;
    } else {
        doc["rate_rprime"] = nullptr;
    }

    Report report;
    report.records.push_back(record_of(doc));
    report.document = std::move(doc);
    return report;
}

Report cmd_fixed_point(const RunConfig& config) {
    const ProtocolParams p = protocol_params(config);
    const FixedPoint fp = fixed_point_n2(p);
    const int d = config.digits;

    Json doc = header("fixed-point");
    doc["params"] = params_json(p, d);
    doc["n2_real"] = fp.n2_real;
    doc["n2"] = fp.n2;
    doc["eps_kprime"] = probability_json(fp.eps_kprime, d);
    doc["bound"] = probability_json(Log2Prob::from_log2(-(static_cast<double>(fp.n2) - 1.0)), d);
    doc["rate_rprime"] = rate(fp.n2, p.n_total);

    Report report;
    report.records.push_back(record_of(doc));
    report.document = std::move(doc);
    return report;
}

Report cmd_tables(const RunConfig& config) {
    const int d = config.digits;
    const Log2Prob prior_1e6 = parse_probability("1e-6");
    const Log2Prob prior_1e9 = parse_probability("1e-9");

    Json doc = header("tables");
    Json rows = Json::array();
    Json notes = Json::array();
    for (const std::uint64_t n_total : kTableSizes) {
        RunConfig c = config;
        c.n_total = std::to_string(n_total);
        c.n_key.reset();
        c.n_pe.reset();
        const ProtocolParams p = protocol_params(c);
        if (!doc.contains("params")) {
            Json shared = params_json(p, d);
            shared.erase("n_total");
            shared.erase("n_key");
            shared.erase("n_pe");
            shared["key_fraction"] = 0.78;
            doc["params"] = shared;
        }

        const std::uint64_t n = key_length(p, p.eps_target);
        const FixedPoint fp = fixed_point_n2(p);
        const Log2Prob truncated = Log2Prob::from_log2(-(static_cast<double>(fp.n2) - 1.0));
        // eps' quoted as a power of ten: the decade of the truncated bound
        const auto decade = static_cast<std::int64_t>(std::floor(-truncated.log10()));
        const Log2Prob eps_decade = Log2Prob::from_log2(-static_cast<double>(decade) / kLog10Of2);

        Json row = Json::object();
        row["n_total"] = n_total;
        row["n"] = n;
        row["r"] = rate(n, n_total);
        row["pg_prior_1e-6"] = log2_to_decimal_string(prior_1e6, d);
        row["pg_prior_1e-9"] = log2_to_decimal_string(prior_1e9, d);
        row["pg_truncated"] = probability_json(truncated, d);
        row["pg_truncated_below_prior"] = truncated < prior_1e9;
        row["eps_prime"] = probability_json(fp.eps_kprime, d);
        row["eps_prime_decade"] = -decade;
        row["n_prime_fixed_point"] = fp.n2;
        row["r_prime"] = rate(fp.n2, n_total);
        try {
            const std::uint64_t alt = key_length(p, eps_decade);
            row["n_prime_at_decade"] = alt;
            row["r_prime_at_decade"] = rate(alt, n_total);
            row["n_prime_at_decade_log10"] = -static_cast<double>(alt) * kLog10Of2;
            const double gap = std::abs(static_cast<double>(alt) - static_cast<double>(fp.n2));
            if (gap > 0.01 * static_cast<double>(fp.n2)) {
                std::ostringstream os;
                os.precision(3);
                os << "N_tol=" << n_total << ": fixed point n'=" << fp.n2 << " (2^-n' = 10^"
                   << std::fixed << -static_cast<double>(fp.n2) * kLog10Of2
                   << "), key length at eps'=10^" << -decade << " is n'=" << alt << " (2^-n' = 10^"
                   << -static_cast<double>(alt) * kLog10Of2 << ")";
                notes.push_back(os.str());
            }
        } catch (const InfeasibleError&) {
            row["n_prime_at_decade"] = nullptr;
            row["r_prime_at_decade"] = nullptr;
            row["n_prime_at_decade_log10"] = nullptr;
        }
        rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["notes"] = notes;

    Report report;
    report.records = rows;
    report.document = std::move(doc);
    return report;
}

void cmd_hash(const RunConfig& config, std::ostream& out) {
    if (config.in.empty()) throw DomainError("hash needs --in <key file>");
    std::ifstream key_stream = open_in(config.in);
    const KeyFile keys = with_path(config.in, [&] { return read_key_file(key_stream); });

    std::optional<BitMatrix> matrix;
    if (!config.matrix_in.empty()) {
        std::ifstream m = open_in(config.matrix_in);
        matrix = with_path(config.matrix_in, [&] { return read_matrix(m); });
        if (matrix->cols() != keys.bits) {
            throw DimensionError("matrix has " + std::to_string(matrix->cols()) +
                                 " columns, keys have " + std::to_string(keys.bits) + " bits");
        }
    } else {
        if (!config.rows) throw DomainError("hash needs --rows or --matrix-in");
        const HashSeed seed{config.seed};
        const MatrixKind kind = matrix_kind_from_string(config.kind);
        matrix = kind == MatrixKind::explicit_random ? random_matrix(seed, *config.rows, keys.bits)
                                                     : toeplitz_matrix(seed, *config.rows, keys.bits);
    }
    if (config.truncate_to) {
        if (config.truncated_out.empty()) throw DomainError("--truncate-to needs --truncated-out");
        if (*config.truncate_to < 1 || *config.truncate_to > matrix->rows()) {
            throw DomainError("--truncate-to must lie in [1, " + std::to_string(matrix->rows()) + "]");
        }
    }

    KeyFile k{matrix->rows(), {}};
    KeyFile k2{config.truncate_to.value_or(0), {}};
    for (const auto& s : keys.keys) {
        k.keys.push_back(hash_key(*matrix, s));
        if (config.truncate_to) k2.keys.push_back(truncate_key(k.keys.back(), *config.truncate_to));
    }

    if (config.out.empty()) {
        write_key_file(out, k);
    } else {
        std::ofstream f = open_out(config.out);
        write_key_file(f, k);
    }
    if (config.truncate_to) {
        std::ofstream f = open_out(config.truncated_out);
        write_key_file(f, k2);
    }
    if (!config.matrix_out.empty()) {
        std::ofstream f = open_out(config.matrix_out);
        if (matrix->seed() && config.matrix_in.empty()) {
            // header only: the reader regenerates the rows from the seed
            f << matrix->rows() << ' ' << matrix->cols() << ' ' << to_string(matrix->kind()) << ' '
              << matrix->seed()->value << '\n';
        } else {
            write_matrix(f, *matrix);
        }
    }
}

Report cmd_oracle(const RunConfig& config) {
    Json doc = header("oracle");
    Report report;

    if (!config.matrix_in.empty()) {
        std::ifstream m = open_in(config.matrix_in);
        const BitMatrix R = with_path(config.matrix_in, [&] { return read_matrix(m); });
        const auto eve = oracle::EveKnowledge::random(R.cols(), config.known_bits.value_or(0), config.seed);
        const std::size_t n2 = config.truncate_to.value_or(R.rows());
        if (n2 < 1 || n2 > R.rows()) {
            throw DomainError("--truncate-to must lie in [1, " + std::to_string(R.rows()) + "]");
        }
        const auto g = oracle::exact_guessing_probability(R, eve);
        const auto v = oracle::verify_truncation(R, eve, n2);

        Json c = Json::object();
        c["rows"] = R.rows();
        c["cols"] = R.cols();
        c["kind"] = to_string(R.kind());
        c["known_bits"] = eve.known_count();
        c["truncate_to"] = n2;
        c["p_full"] = oracle::to_string(v.p_full);
        c["p_truncated"] = oracle::to_string(v.p_truncated);
        c["argmax_key"] = g.argmax_key.to_string();
        c["support"] = g.support;
        c["passed"] = v.pass;
        doc["case"] = c;
        doc["all_passed"] = v.pass;
        report.records.push_back(c);
        report.document = std::move(doc);
        return report;
    }

    oracle::SuiteConfig sc;
    sc.seed = config.seed;
    sc.matrix_seeds = config.matrix_seeds;
    sc.commutation_cases = config.trials;
    bool all = true;
    Json suites = Json::array();
    for (const auto& s : oracle::run_all_suites(sc)) {
        Json j = Json::object();
        j["name"] = s.name;
        j["passed"] = s.passed;
        j["cases"] = s.cases;
        j["detail"] = s.detail;
        suites.push_back(j);
        all = all && s.passed;
    }
    doc["seed"] = config.seed;
    doc["suites"] = suites;
    doc["all_passed"] = all;
    report.records = suites;
    report.document = std::move(doc);
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string format = "json";

    CLI::App app{"Guessing-probability bounds for finite-key privacy amplification", "guessbound"};
    app.require_subcommand(1);

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--n-total", config.n_total, "sifted bits N_tol (accepts 1e6)")->capture_default_str();
        sub->add_option("--n-key", config.n_key, "key-generation bits N (default 0.78 N_tol)");
        sub->add_option("--n-pe", config.n_pe, "parameter-estimation bits N_z (default N_tol - N)");
        sub->add_option("--q-tol", config.q_tol, "channel error tolerance")->capture_default_str();
        sub->add_option("--f", config.f_ec, "error-correction inefficiency")->capture_default_str();
        sub->add_option("--epsilon", config.epsilon, "security level, e.g. 1e-9 or 2^-30")->capture_default_str();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json, csv or table")
            ->check(CLI::IsMember({"json", "csv", "table"}))
            ->capture_default_str();
        sub->add_option("--digits", config.digits, "significant digits of decimal probabilities")
            ->check(CLI::Range(1, 17))
            ->capture_default_str();
        sub->add_option("--out", config.out, "write the report to this file");
    };

    CLI::App* bound = app.add_subcommand("bound", "key length and guessing-probability bounds");
    add_params(bound);
    bound->add_option("--known-bits", config.known_bits, "bits of the truncated key Eve already knows");
    add_output(bound);

    CLI::App* fixed = app.add_subcommand("fixed-point", "truncation length n2 with 2^-n2 = eps(n2)");
    add_params(fixed);
    add_output(fixed);

    CLI::App* tables = app.add_subcommand("tables", "key lengths, bounds and rates at N_tol = 1e4, 1e5, 1e6");
    tables->add_option("--q-tol", config.q_tol, "channel error tolerance")->capture_default_str();
    tables->add_option("--f", config.f_ec, "error-correction inefficiency")->capture_default_str();
    tables->add_option("--epsilon", config.epsilon, "security level")->capture_default_str();
    add_output(tables);

    CLI::App* hash = app.add_subcommand("hash", "hash keys from a key file");
    hash->add_option("--in", config.in, "input key file")->required();
    hash->add_option("--rows", config.rows, "output key length n");
    hash->add_option("--kind", config.kind, "explicit-random or modified-toeplitz")->capture_default_str();
    hash->add_option("--seed", config.seed, "matrix seed")->capture_default_str();
    hash->add_option("--matrix-in", config.matrix_in, "use this matrix file instead of a seed");
    hash->add_option("--matrix-out", config.matrix_out, "write the matrix descriptor here");
    hash->add_option("--truncate-to", config.truncate_to, "also write keys truncated to this length");
    hash->add_option("--truncated-out", config.truncated_out, "file for the truncated keys");
    hash->add_option("--out", config.out, "output key file (default standard output)");

    CLI::App* orc = app.add_subcommand("oracle", "exhaustive verification suites");
    orc->add_option("--seed", config.seed, "master seed")->capture_default_str();
    orc->add_option("--matrix-seeds", config.matrix_seeds, "seeds in the truncation sweep")->capture_default_str();
    orc->add_option("--trials", config.trials, "randomized commutation cases")->capture_default_str();
    orc->add_option("--matrix-in", config.matrix_in, "check one matrix instead of the suites");
    orc->add_option("--known-bits", config.known_bits, "bits Eve knows (single-matrix mode)");
    orc->add_option("--truncate-to", config.truncate_to, "truncated length (single-matrix mode)");
    add_output(orc);

    std::vector<const char*> argv{"guessbound"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadFlags;
    }

    CLI::App* chosen = app.get_subcommands().front();
    config.subcommand = chosen->get_name();
    config.format = format_from_string(format);

    auto fail = [&](int code, const std::string& what) {
        err << "guessbound " << config.subcommand << ": " << what << '\n';
        if (code == kExitBadFlags) err << "Run 'guessbound " << config.subcommand << " --help' for usage.\n";
        return code;
    };

    try {
        if (config.subcommand == "hash") {
            cmd_hash(config, out);
            return kExitOk;
        }
        Report report;
        if (config.subcommand == "bound") {
            report = cmd_bound(config);
        } else if (config.subcommand == "fixed-point") {
            report = cmd_fixed_point(config);
        } else if (config.subcommand == "tables") {
            report = cmd_tables(config);
        } else {
            report = cmd_oracle(config);
        }
        if (config.out.empty()) {
            render(out, report, config.format);
        } else {
            std::ofstream f = open_out(config.out);
            render(f, report, config.format);
            if (!f) throw IoError("write to '" + config.out + "' failed");
        }
        if (report.document.contains("all_passed") && !report.document["all_passed"].get<bool>()) {
            return fail(kExitOracleFailure, "verification failed");
        }
        return kExitOk;
    } catch (const InfeasibleError& e) {
        return fail(kExitInfeasible, e.what());
    } catch (const NoSolutionError& e) {
        return fail(kExitInfeasible, e.what());
    } catch (const FormatError& e) {
        return fail(kExitIo, e.what());
    } catch (const IoError& e) {
        return fail(kExitIo, e.what());
    } catch (const DimensionError& e) {
        return fail(kExitIo, e.what());
    } catch (const BudgetError& e) {
        return fail(kExitBadFlags, e.what());
    } catch (const DomainError& e) {
        return fail(kExitBadFlags, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitBadFlags, e.what());
    }
}

}  // namespace guessbound::cli
