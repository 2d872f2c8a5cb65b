// SPDX-License-Identifier: MIT
#pragma once

#include "taut/rng.hpp"
#include "taut/sampled_path.hpp"

namespace taut {

/// Discretized Wiener path: values[k] = values[k-1] + sqrt(T/n) * g_k with
/// independent standard normal g_k from the stream keyed by `seed`.
/// Exact in law at the grid points. Throws std::invalid_argument for
/// T <= 0 or n == 0.
SampledPath simulate_wiener(double horizon, std::size_t steps, SeedSpec seed);

/// Returns the path with values[k] - mu * t_k (the drifted process W_t - mu t).
SampledPath add_drift(const SampledPath& path, double mu);

} // namespace taut
