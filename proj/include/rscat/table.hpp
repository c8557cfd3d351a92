#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rscat {

// Deterministic tabular output. Numbers are printed with 12 significant
// digits and a '.' decimal separator regardless of locale, so repeated runs
// with the same inputs are byte-identical.

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // print negative zero as 0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

/// Round through the 12-significant-digit text form, so JSON and CSV carry
/// the same values.
inline double round_to_output_precision(double value) {
    return std::strtod(format_number(value).c_str(), nullptr);
}

namespace detail {

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace detail

/// RFC 4180-style CSV: header row, comma separated, LF line endings.
inline std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += detail::csv_escape(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (std::holds_alternative<double>(row[c])) {
                out += format_number(std::get<double>(row[c]));
            } else {
                out += detail::csv_escape(std::get<std::string>(row[c]));
            }
        }
        out += '\n';
    }
    return out;
}

/// One object per row, keyed by column name, key order = column order.
inline nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            if (std::holds_alternative<double>(row[c])) {
                obj[table.columns[c]] = round_to_output_precision(std::get<double>(row[c]));
            } else {
                obj[table.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

}  // namespace rscat
