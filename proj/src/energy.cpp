// SPDX-License-Identifier: MIT
#include "taut/energy.hpp"

#include <algorithm>
#include <stdexcept>

namespace taut {

double energy(const PiecewiseLinearPath& pl, const PhiSpec& phi) {
    double total = 0.0;
    for (std::size_t i = 0; i < pl.segment_count(); ++i)
        total += phi_eval(phi, pl.slope(i)) * pl.segment_length(i);
    return total;
}

double energy_on_interval(const PiecewiseLinearPath& pl, const PhiSpec& phi,
                          double t0, double t1) {
    if (t0 > t1 || t0 < pl.start_time() || t1 > pl.end_time())
        throw std::domain_error("energy_on_interval: bad interval");
    double total = 0.0;
    for (std::size_t i = 0; i < pl.segment_count(); ++i) {
        const double a = std::max(pl.knots()[i].time, t0);
        const double b = std::min(pl.knots()[i + 1].time, t1);
        if (b > a) total += phi_eval(phi, pl.slope(i)) * (b - a);
    }
    return total;
}

double normalized_energy(const PiecewiseLinearPath& pl, const PhiSpec& phi) {
    return energy(pl, phi) / pl.span();
}

} // namespace taut
