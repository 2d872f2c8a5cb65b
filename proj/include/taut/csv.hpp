// SPDX-License-Identifier: MIT
#pragma once

#include <string>

namespace taut::csv {

/// Decimal with 17 significant digits; round-trips a double exactly.
std::string num(double x);

/// Decimal with 6 significant digits for human-facing tables.
std::string num6(double x);

} // namespace taut::csv
