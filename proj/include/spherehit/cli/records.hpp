// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spherehit::cli {

using Value = std::variant<double, std::int64_t, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Value>>;

/// One output row: {inputs, value, error_bound_or_stderr, convergence_metadata}.
struct Record {
    Fields inputs;
    double value = 0.0;
    double error_bound_or_stderr = 0.0;
    Fields convergence_metadata;
};

/// 17 significant digits; non-finite values as inf, -inf, nan.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

// non-finite doubles become strings so the output stays valid JSON
inline std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : json_string(format_double(x)); }

inline std::string json_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
                return json_number(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else
                return json_string(x);
        },
        v);
}

inline std::string csv_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
                return format_double(x);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else {
                if (x.find_first_of(",\"\n") == std::string::npos) return x;
                std::string out = "\"";
                for (char c : x) out += c == '"' ? std::string("\"\"") : std::string(1, c);
                return out + "\"";
            }
        },
        v);
}

inline void json_object(std::ostream& os, const Fields& fields) {
    os << '{';
    for (std::size_t i = 0; i < fields.size(); ++i)
        os << (i ? ", " : "") << json_string(fields[i].first) << ": " << json_value(fields[i].second);
    os << '}';
}

}  // namespace detail

/// JSON array of records.
inline void write_json(std::ostream& os, const std::vector<Record>& records) {
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << "  {\"inputs\": ";
        detail::json_object(os, r.inputs);
        os << ", \"value\": " << detail::json_number(r.value)
           << ", \"error_bound_or_stderr\": " << detail::json_number(r.error_bound_or_stderr)
           << ", \"convergence_metadata\": ";
        detail::json_object(os, r.convergence_metadata);
        os << '}' << (i + 1 < records.size() ? ",\n" : "\n");
    }
    os << "]\n";
}

/// CSV with a header row; columns are the inputs, value, error bound, then
/// metadata, taken from the first record.
inline void write_csv(std::ostream& os, const std::vector<Record>& records) {
    if (records.empty()) return;
    const auto& first = records.front();
    std::string header;
    for (const auto& [k, v] : first.inputs) header += k + ",";
    header += "value,error_bound_or_stderr";
    for (const auto& [k, v] : first.convergence_metadata) header += "," + k;
    os << header << '\n';
    for (const auto& r : records) {
        for (const auto& [k, v] : r.inputs) os << detail::csv_value(v) << ',';
        os << format_double(r.value) << ',' << format_double(r.error_bound_or_stderr);
        for (const auto& [k, v] : r.convergence_metadata) os << ',' << detail::csv_value(v);
        os << '\n';
    }
}

}  // namespace spherehit::cli
