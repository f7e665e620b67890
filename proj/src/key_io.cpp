#include "guessbound/key_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "guessbound/errors.hpp"

namespace guessbound {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::size_t parse_size(std::string_view token, std::size_t line, std::size_t column,
                       std::string_view what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        throw FormatError(line, column, "expected " + std::string(what) + ", got '" +
                                            std::string(token) + "'");
    }
    return value;
}

BitVector parse_hex_line(std::string_view hex, std::size_t bits, std::size_t line) {
    const std::size_t digits = (bits + 3) / 4;
    if (hex.size() != digits) {
        throw FormatError(line, std::min(hex.size(), digits) + 1,
                          "expected " + std::to_string(digits) + " hex digits for " +
                              std::to_string(bits) + " bits, got " + std::to_string(hex.size()));
    }
    std::vector<std::uint64_t> words((bits + 63) / 64, 0);
    for (std::size_t d = 0; d < digits; ++d) {
        const int v = hex_value(hex[d]);
        if (v < 0) {
            throw FormatError(line, d + 1, std::string("invalid hex digit '") + hex[d] + "'");
        }
        words[d / 16] |= static_cast<std::uint64_t>(v) << (60 - 4 * (d % 16));
    }
    if (bits % 4 != 0) {
        const unsigned pad_mask = (1U << (4 - bits % 4)) - 1;
        if (static_cast<unsigned>(hex_value(hex[digits - 1])) & pad_mask) {
            throw FormatError(line, digits, "non-zero pad bits in last hex digit");
        }
    }
    return BitVector::from_words(words, bits);
}

}  // namespace

std::string to_hex(const BitVector& v) {
    const std::size_t digits = (v.size() + 3) / 4;
    std::string out(digits, '0');
    const auto words = v.words();
    for (std::size_t d = 0; d < digits; ++d) {
        const unsigned nibble = (words[d / 16] >> (60 - 4 * (d % 16))) & 0xF;
        out[d] = kHexDigits[nibble];
    }
    return out;
}

BitVector from_hex(std::string_view hex, std::size_t bits) {
    return parse_hex_line(hex, bits, 1);
}

KeyFile read_key_file(std::istream& in) {
    KeyFile file;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (is_blank(line)) continue;
        if (!have_header) {
            if (!line.starts_with("bits=")) {
                throw FormatError(line_no, 1, "expected 'bits=<len>' header");
            }
            file.bits = parse_size(line.substr(5), line_no, 6, "bit length");
            if (file.bits == 0) throw FormatError(line_no, 6, "bit length must be positive");
            have_header = true;
            continue;
        }
        file.keys.push_back(parse_hex_line(line, file.bits, line_no));
    }
    if (!have_header) throw FormatError(line_no + 1, 1, "missing 'bits=<len>' header");
    return file;
}

void write_key_file(std::ostream& out, const KeyFile& file) {
    out << "bits=" << file.bits << '\n';
    for (const auto& k : file.keys) {
        if (k.size() != file.bits) throw DimensionError("write_key_file: key length mismatch");
        out << to_hex(k) << '\n';
    }
}

BitMatrix read_matrix(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    bool found = false;
    while (!found && std::getline(in, raw)) {
        ++line_no;
        found = !is_blank(strip_cr(raw));
    }
    if (!found) throw FormatError(line_no + 1, 1, "missing matrix header");
    const std::size_t header_line = line_no;

    std::istringstream header{std::string(strip_cr(raw))};
    std::string rows_tok, cols_tok, kind_tok, seed_tok, extra;
    if (!(header >> rows_tok >> cols_tok >> kind_tok >> seed_tok) || (header >> extra)) {
        throw FormatError(line_no, 1, "expected header '<rows> <cols> <kind> <seed|->'");
    }
    const std::size_t rows = parse_size(rows_tok, line_no, 1, "row count");
    const std::size_t cols = parse_size(cols_tok, line_no, 1, "column count");
    if (rows == 0 || cols == 0) throw FormatError(line_no, 1, "matrix dimensions must be positive");
    MatrixKind kind;
    try {
        kind = matrix_kind_from_string(kind_tok);
    } catch (const std::invalid_argument& e) {
        throw FormatError(line_no, 1, e.what());
    }
    std::optional<HashSeed> seed;
    if (seed_tok != "-") seed = HashSeed{parse_size(seed_tok, line_no, 1, "seed")};

    std::vector<BitVector> body;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (is_blank(line)) continue;
        body.push_back(parse_hex_line(line, cols, line_no));
    }
    if (body.empty()) {
        if (!seed) throw FormatError(header_line, 1, "matrix without rows needs a seed");
        try {
            return kind == MatrixKind::explicit_random ? random_matrix(*seed, rows, cols)
                                                       : toeplitz_matrix(*seed, rows, cols);
        } catch (const DimensionError& e) {
            throw FormatError(header_line, 1, e.what());
        }
    }
    if (body.size() != rows) {
        throw FormatError(line_no, 1, "header declares " + std::to_string(rows) + " rows, found " +
                                          std::to_string(body.size()));
    }
    return BitMatrix(std::move(body), kind, seed);
}

void write_matrix(std::ostream& out, const BitMatrix& m) {
    out << m.rows() << ' ' << m.cols() << ' ' << to_string(m.kind()) << ' ';
    if (m.seed()) {
        out << m.seed()->value;
    } else {
        out << '-';
    }
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) out << to_hex(m.row(i)) << '\n';
}

}  // namespace guessbound
