#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace guessbound::cli {

namespace {

using Row = std::vector<std::pair<std::string, std::string>>;

std::string scalar_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& v, const std::string& prefix, Row& out) {
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    out.emplace_back(prefix, scalar_text(v));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

// Display width; "×" is two bytes but one column.
std::size_t width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80 ? 1 : 0;
    return w;
}

void pad(std::ostream& out, const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = width(s); i < w; ++i) out << ' ';
}

}  // namespace

Format format_from_string(std::string_view name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "table") return Format::table;
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

Json probability_json(Log2Prob p, int digits) {
    Json j = Json::object();
    if (p.is_zero()) {
        j["log2"] = nullptr;
    } else {
        j["log2"] = p.log2();
    }
    j["decimal"] = log2_to_decimal_string(p, digits);
    return j;
}

void render(std::ostream& out, const Report& report, Format format) {
    if (format == Format::json) {
        out << report.document.dump(2) << '\n';
        return;
    }

    std::vector<Row> rows;
    for (const auto& r : report.records) {
        Row row;
        flatten(r, "", row);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return;
    const Row& header = rows.front();

    if (format == Format::csv) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            out << (c ? "," : "") << csv_field(header[c].first);
        }
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << csv_field(row[c].second);
            }
            out << '\n';
        }
        return;
    }

    if (rows.size() == 1) {
        std::size_t kw = 0;
        for (const auto& [k, v] : header) kw = std::max(kw, width(k));
        for (const auto& [k, v] : header) {
            pad(out, k, kw + 2);
            out << v << '\n';
        }
        return;
    }

    std::vector<std::size_t> widths;
    for (const auto& [k, v] : header) widths.push_back(width(k));
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
            widths[c] = std::max(widths[c], width(row[c].second));
        }
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
        pad(out, header[c].first, c + 1 < header.size() ? widths[c] + 2 : 0);
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            pad(out, row[c].second, c + 1 < row.size() ? widths[c] + 2 : 0);
        }
        out << '\n';
    }
}

}  // namespace guessbound::cli
