#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

namespace hurstlab::detail {

// Round-trip-exact and locale-free, so reports are byte-stable.
inline std::string num(double v) {
    if (std::isnan(v)) {
        return "NaN";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace hurstlab::detail
