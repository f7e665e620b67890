#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "guessbound/numerics.hpp"

namespace guessbound::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, table };

/// Throws std::invalid_argument for anything but json, csv or table.
Format format_from_string(std::string_view name);

/// {"log2": <double or null for zero>, "decimal": "c×10^e"}
Json probability_json(Log2Prob p, int digits);

/// A report is a JSON document plus the flat records used for csv and table
/// output. Nested objects in records are flattened to dotted keys.
struct Report {
    Json document;
    Json records = Json::array();
};

void render(std::ostream& out, const Report& report, Format format);

}  // namespace guessbound::cli
