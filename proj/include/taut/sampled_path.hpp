// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace taut {

/// A path sampled on the uniform grid t_k = k*horizon/steps, k = 0..steps.
/// values.front() is always 0.
struct SampledPath {
    double horizon = 0.0;
    std::vector<double> values;

    std::size_t steps() const { return values.size() - 1; }
    double dt() const { return horizon / static_cast<double>(steps()); }
    double time_at(std::size_t k) const {
        return horizon * static_cast<double>(k) / static_cast<double>(steps());
    }
};

/// Throws std::invalid_argument if the grid/value invariants fail.
void validate(const SampledPath& path);

/// Two-column CSV (time,value) with 17 significant digits.
void write_csv(const SampledPath& path, std::ostream& out);

} // namespace taut
