// SPDX-License-Identifier: MIT
#pragma once

#include "taut/piecewise_linear.hpp"
#include "taut/sampled_path.hpp"

namespace taut {

enum class BoundaryMode {
    /// h(0) = 0 and h(T) = W(T).
    PinnedBothEnds,
    /// Both endpoint values are chosen inside their barrier intervals so
    /// that the string attains the minimal total variation in the tube;
    /// this reproduces TV^r(path) exactly.
    PinnedLeftFreeRight,
};

/// Strip of width r around the path: |h(t) - W(t)| <= r/2.
struct TubeSpec {
    double width = 1.0;
    BoundaryMode mode = BoundaryMode::PinnedBothEnds;
};

/// Taut string accompanying `path` in the tube. Barriers live at grid
/// points; between grid points both the path and the barriers are linear,
/// so feasibility checked at grid points is exact for the interpolants.
///
/// The string is the minimizer of sum phi(slope) * dt over tube-feasible
/// piecewise-linear functions simultaneously for every convex phi (with
/// the endpoint convention of the chosen mode). Knots appear only where
/// the string touches a barrier, plus the two endpoints. O(n) amortized.
///
/// Throws std::invalid_argument if tube.width <= 0.
PiecewiseLinearPath taut_string(const SampledPath& path, const TubeSpec& tube);

/// Glues `inner` to pinned endpoints over unit-length connectors:
/// the result equals `inner` on [1, T-1], starts at 0, ends at W(T), and
/// on the connectors follows W(t) plus a linear correction, staying within
/// (r + delta)/2 of the path whenever `inner` is r-tube feasible.
/// Throws std::invalid_argument if T <= 2 or delta <= 0.
PiecewiseLinearPath make_pseudostring(const SampledPath& path,
                                      const PiecewiseLinearPath& inner,
                                      double delta);

} // namespace taut
