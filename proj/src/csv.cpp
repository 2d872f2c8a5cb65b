// SPDX-License-Identifier: MIT
#include "taut/csv.hpp"

#include <cstdio>

namespace taut::csv {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string num6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace taut::csv
