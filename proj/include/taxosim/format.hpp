#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace taxosim {

// Every number that reaches an output stream goes through one of these so
// emitted files and reports stay byte-stable across runs.

inline std::string format_number(double v, int significant_digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
    return buf;
}

inline std::string format_fixed(double v, int decimals) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace taxosim
