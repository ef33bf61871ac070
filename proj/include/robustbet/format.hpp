#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace robustbet {

// 12 significant digits; negative infinity prints as "-inf".
inline std::string format_number(double v) {
    if (std::isinf(v)) return v < 0.0 ? "-inf" : "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace robustbet
