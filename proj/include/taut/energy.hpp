// SPDX-License-Identifier: MIT
#pragma once

#include "taut/phi.hpp"
#include "taut/piecewise_linear.hpp"

namespace taut {

/// Integral of phi(h') over the whole span: sum of phi(slope) * length
/// per segment, exact since phi(h') is piecewise constant.
/// Exponential phi with overflowing slopes yields +infinity.
double energy(const PiecewiseLinearPath& pl, const PhiSpec& phi);

/// Integral of phi(h') over [t0, t1] (clipped to segments).
/// Throws std::domain_error if [t0, t1] is not inside the span.
double energy_on_interval(const PiecewiseLinearPath& pl, const PhiSpec& phi,
                          double t0, double t1);

/// energy / span.
double normalized_energy(const PiecewiseLinearPath& pl, const PhiSpec& phi);

} // namespace taut
