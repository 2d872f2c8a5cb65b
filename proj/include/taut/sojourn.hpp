// SPDX-License-Identifier: MIT
#pragma once

#include "taut/piecewise_linear.hpp"

#include <iosfwd>
#include <vector>

namespace taut {

/// Exact occupation distribution of a piecewise-linear path's derivative:
/// one atom (slope, duration) per run of equal-slope segments, sorted by
/// slope. Dividing weights by the total duration gives the probability
/// measure nu_T.
struct SojournMeasure {
    struct Atom {
        double slope;
        double weight;
    };
    std::vector<Atom> atoms; // sorted by slope, strictly increasing
    double total = 0.0;      // sum of weights == spanned time
};

SojournMeasure sojourn_measure(const PiecewiseLinearPath& pl);

/// nu_T[v, inf) with the closed-left convention: atoms at exactly v count.
double empirical_tail(const SojournMeasure& m, double v);

/// nu_inf[v, inf) for the limit law (see limit_tail in closed_forms).
/// Declared here for locality of the comparison API.
double limit_tail(double v, double r);

/// sup over atom slopes and their left limits of
/// |empirical_tail(v) - limit_tail(v)|; the empirical tail is a step
/// function so this sup is the full Kolmogorov-Smirnov distance.
double ks_distance(const SojournMeasure& m, double r);

/// CSV (slope,weight).
void write_csv(const SojournMeasure& m, std::ostream& out);

/// CSV (v,empirical,limit) at all atom slopes.
void write_tail_comparison_csv(const SojournMeasure& m, double r,
                               std::ostream& out);

} // namespace taut
