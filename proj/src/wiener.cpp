// SPDX-License-Identifier: MIT
#include "taut/wiener.hpp"

#include "taut/csv.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace taut {

void validate(const SampledPath& path) {
    if (path.values.size() < 2)
        throw std::invalid_argument("SampledPath: need at least one step");
    if (!(path.horizon > 0.0))
        throw std::invalid_argument("SampledPath: horizon must be positive");
    if (path.values.front() != 0.0)
        throw std::invalid_argument("SampledPath: values[0] must be 0");
}

void write_csv(const SampledPath& path, std::ostream& out) {
    out << "time,value\n";
    for (std::size_t k = 0; k < path.values.size(); ++k)
        out << csv::num(path.time_at(k)) << ',' << csv::num(path.values[k]) << '\n';
}

SampledPath simulate_wiener(double horizon, std::size_t steps, SeedSpec seed) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("simulate_wiener: horizon must be positive");
    if (steps == 0)
        throw std::invalid_argument("simulate_wiener: steps must be >= 1");

    GaussianStream gauss(seed);
    SampledPath path;
    path.horizon = horizon;
    path.values.resize(steps + 1);
    path.values[0] = 0.0;
    const double scale = std::sqrt(horizon / static_cast<double>(steps));
    for (std::size_t k = 1; k <= steps; ++k)
        path.values[k] = path.values[k - 1] + scale * gauss.next();
    return path;
}

SampledPath add_drift(const SampledPath& path, double mu) {
    validate(path);
    SampledPath out = path;
    for (std::size_t k = 1; k < out.values.size(); ++k)
        out.values[k] -= mu * out.time_at(k);
    return out;
}

} // namespace taut
