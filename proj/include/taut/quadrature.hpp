// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace taut {

/// Gauss-Kronrod 7-15 panel: returns the K15 estimate, stores an error
/// estimate from the G7/K15 difference.
template <class Func>
double quad_gk15(const Func& f, double a, double b, double& err) {
    // node, Gauss-7 weight, Kronrod-15 weight
    static const double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0, 0.204432940075298},
        {0.586087235467691, 0.0, 0.169004726639267},
        {0.864864423359769, 0.0, 0.104790010322250},
        {0.991455371120813, 0.0, 0.022935322010529},
    };

    const double mid = (a + b) * 0.5;
    const double half = (b - a) * 0.5;

    const double f0 = f(mid);
    double g7 = nw[0][1] * f0;
    double k15 = nw[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * nw[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += nw[i][1] * fi;
        k15 += nw[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;
    err = std::abs(g7 - k15);
    return k15;
}

/// Adaptive bisection on [a, b]. A panel is accepted when its error
/// estimate fits either the share of the global budget proportional to
/// its width or its own value at the relative tolerance. Throws
/// std::runtime_error("...non-convergent...") when the panel budget is
/// exhausted or the integrand is non-finite.
template <class Func>
double integrate_adaptive(const Func& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-15,
                          std::size_t max_panels = 20000) {
    struct Panel {
        double a, b, value, err;
    };

    std::vector<Panel> stack;
    double err0;
    const double v0 = quad_gk15(f, a, b, err0);
    if (!std::isfinite(v0))
        throw std::runtime_error(
            "integrate_adaptive: non-convergent (non-finite integrand)");
    const double budget = std::max(rel_tol * std::abs(v0), abs_tol);
    stack.push_back({a, b, v0, err0});

    double total = 0.0;
    std::size_t used = 1;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        if (!std::isfinite(p.value))
            throw std::runtime_error(
                "integrate_adaptive: non-convergent (non-finite integrand)");
        const double width_frac = (p.b - p.a) / (b - a);
        if (p.err <= budget * width_frac || p.err <= rel_tol * std::abs(p.value)) {
            total += p.value;
            continue;
        }
        if (used + 2 > max_panels)
            throw std::runtime_error("integrate_adaptive: non-convergent");
        const double mid = (p.a + p.b) * 0.5;
        double e1, e2;
        const double v1 = quad_gk15(f, p.a, mid, e1);
        const double v2 = quad_gk15(f, mid, p.b, e2);
        stack.push_back({p.a, mid, v1, e1});
        stack.push_back({mid, p.b, v2, e2});
        used += 2;
    }
    return total;
}

} // namespace taut
