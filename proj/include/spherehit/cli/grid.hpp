// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "spherehit/error.hpp"
#include "spherehit/specfun/sphere.hpp"

namespace spherehit::cli {

/// Thrown for malformed command-line input.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline double parse_number(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || std::isnan(v)) throw UsageError("not a number: '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return parts;
        start = pos + 1;
    }
}

/// Grid syntax: "lo:hi:count" (inclusive, linear), "log:lo:hi:count"
/// (geometric), or a comma-separated list. Must be nonempty and sorted.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::string body = text;
    const bool log_scale = body.rfind("log:", 0) == 0;
    if (log_scale) body = body.substr(4);
    if (body.find(':') != std::string::npos) {
        const auto p = split(body, ':');
        if (p.size() != 3) throw UsageError("grid must be lo:hi:count, got '" + text + "'");
        const double lo = parse_number(p[0]), hi = parse_number(p[1]);
        const double count = parse_number(p[2]);
        if (count < 1 || count != std::floor(count)) throw UsageError("grid count must be a positive integer");
        if (log_scale && !(lo > 0.0 && hi > 0.0)) throw UsageError("log grid needs positive endpoints");
        const int n = static_cast<int>(count);
        for (int i = 0; i < n; ++i) {
            const double s = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(log_scale ? std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo))) : lo + s * (hi - lo));
        }
        if (n > 1) out.back() = hi;
    } else {
        if (log_scale) throw UsageError("log: prefix needs lo:hi:count");
        for (const auto& part : split(body, ',')) out.push_back(parse_number(part));
    }
    if (out.empty()) throw UsageError("empty grid");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] >= out[i - 1])) throw UsageError("grid must be sorted: '" + text + "'");
    return out;
}

/// Band syntax: "lo,hi".
inline specfun::Band parse_band(const std::string& text) {
    const auto p = split(text, ',');
    if (p.size() != 2) throw UsageError("band must be lo,hi, got '" + text + "'");
    specfun::Band b{parse_number(p[0]), parse_number(p[1])};
    if (!(-1.0 <= b.x_lo && b.x_lo <= b.x_hi && b.x_hi <= 1.0)) throw UsageError("band needs -1 <= lo <= hi <= 1");
    return b;
}

}  // namespace spherehit::cli
