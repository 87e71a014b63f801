#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace tailprice::detail {

// Boundary comparisons tolerate this much relative rounding so that a model
// calibrated exactly at its Karamata point still prices its own anchor.
inline constexpr double kZoneSlack = 1e-12;

inline bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

/// "%.12g", the precision every human-facing number is printed with.
inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace tailprice::detail
