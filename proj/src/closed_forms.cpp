// SPDX-License-Identifier: MIT
#include "taut/closed_forms.hpp"

#include "taut/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace taut {

namespace {

void check_r(double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("closed forms: r must be positive");
}

// (x coth x - 1) / sinh^2 x in a form stable for all x >= 0.
// Near zero the direct form loses digits to cancellation; expanding
// the closed form gives 1/3 - 2x^2/15 + 2x^4/63 - ... and the branch
// point sits where both forms carry full precision.
double density_core(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return 1.0 / 3.0 - 2.0 * x2 / 15.0 + 2.0 * x2 * x2 / 63.0;
    }
    if (x > 350.0) {
        // sinh^2 would overflow; the exact tail is ~ 4(x-1)e^{-2x}
        return 4.0 * (x - 1.0) * std::exp(-2.0 * x);
    }
    const double s = std::sinh(x);
    return (x * std::cosh(x) / s - 1.0) / (s * s);
}

} // namespace

double p_infinity(double u, double r) {
    check_r(r);
    return r * density_core(std::abs(r * u));
}

double m_limit(double mu, double r) {
    check_r(r);
    const double a = std::abs(mu);
    const double x = r * a;
    if (x < 1e-4) {
        // mu coth(r mu) = 1/r + r mu^2/3 - r^3 mu^4/45 + ...
        return 1.0 / r + r * a * a / 3.0 - r * r * r * a * a * a * a / 45.0;
    }
    if (x > 350.0) return a;
    return a * std::cosh(x) / std::sinh(x);
}

double q_limit(double mu, double r) {
    check_r(r);
    if (mu == 0.0) return 0.5 / r;
    // for mu > 0: (mu coth(r mu) - mu)/2 = mu / (e^{2 r mu} - 1),
    // cancellation-free at every scale; reflect via q(-mu) = q(mu) + mu
    const double a = std::abs(mu);
    const double q = a / std::expm1(2.0 * r * a);
    return mu > 0.0 ? q : q + a;
}

double limit_tail(double v, double r) {
    check_r(r);
    if (v < 0.0) return 1.0 - limit_tail(-v, r);
    const double x = r * v;
    if (x < 0.05) {
        // 1/2 - x/3 + 2x^3/45 - 2x^5/315 + 4x^7/4725 + O(x^9)
        const double x2 = x * x;
        return 0.5 +
               x * (-1.0 / 3.0 +
                    x2 * (2.0 / 45.0 + x2 * (-2.0 / 315.0 + x2 * (4.0 / 4725.0))));
    }
    if (x > 350.0) return 0.0;
    const double s = std::sinh(x);
    const double c = std::cosh(x) / s;
    return std::max(0.0, 0.5 * (1.0 - c + x / (s * s)));
}

double density_from_q(double mu, double r, double h) {
    check_r(r);
    if (!(h > 0.0) || h > 1e-3)
        throw std::invalid_argument("density_from_q: need 0 < h <= 1e-3");
    // the target is even in mu; folding to |mu| keeps the second
    // difference of the linear part of q out of the rounding noise
    mu = std::abs(mu);
    return (q_limit(mu - h, r) - 2.0 * q_limit(mu, r) + q_limit(mu + h, r)) /
           (h * h);
}

PhiIntegral integrate_against_p_inf(const PhiSpec& phi, double r) {
    check_r(r);

    if (phi.variant == PhiSpec::Variant::Exponential) {
        // density tail e^{-2r|u|} vs growth e^{lambda * rscale * u}
        if (std::abs(phi.a * phi.b) >= 2.0 * r) return {0.0, true};
    }

    const auto integrand = [&](double u) {
        if (phi.variant == PhiSpec::Variant::Exponential) {
            const double x = std::abs(r * u);
            if (x > 350.0) {
                // combine the exponents; either factor alone would
                // overflow or underflow out here
                return 4.0 * r * (x - 1.0) * std::exp(phi.a * phi.b * u - 2.0 * x);
            }
        }
        return phi_eval(phi, u) * p_infinity(u, r);
    };

    // kink locations of the piecewise-defined variants
    std::vector<double> breaks{0.0};
    switch (phi.variant) {
        case PhiSpec::Variant::ShiftedPositivePart:
        case PhiSpec::Variant::ShiftedNegativePart:
        case PhiSpec::Variant::ShiftedAbs:
            breaks.push_back(phi.a);
            break;
        default:
            break;
    }

    // grow the window geometrically until two consecutive shells are
    // negligible against the running total
    double total = 0.0;
    double lo = 0.0, hi = 0.0;
    double shell_lo = 8.0 / r, shell_hi = 8.0 / r;
    for (double b : breaks) {
        shell_lo = std::max(shell_lo, 2.0 * std::abs(b) + 8.0 / r);
        shell_hi = shell_lo;
    }

    auto piece = [&](double a, double b) {
        double sum = 0.0;
        std::vector<double> pts{a};
        for (double c : breaks)
            if (c > a && c < b) pts.push_back(c);
        std::sort(pts.begin(), pts.end());
        pts.push_back(b);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            sum += integrate_adaptive(integrand, pts[i], pts[i + 1], 1e-13, 1e-16);
        return sum;
    };

    total += piece(-shell_lo, shell_hi);
    lo = -shell_lo;
    hi = shell_hi;

    int quiet = 0;
    while (quiet < 2) {
        const double new_lo = lo * 1.5 - 4.0 / r;
        const double new_hi = hi * 1.5 + 4.0 / r;
        if (new_hi > 40000.0 / r)
            throw std::runtime_error(
                "integrate_against_p_inf: non-convergent (window cap reached)");
        const double shell = piece(new_lo, lo) + piece(hi, new_hi);
        lo = new_lo;
        hi = new_hi;
        if (std::abs(shell) <= 1e-14 * std::max(std::abs(total), 1e-2))
            ++quiet;
        else
            quiet = 0;
        total += shell;
    }
    if (!std::isfinite(total))
        throw std::runtime_error("integrate_against_p_inf: non-convergent");
    return {total, false};
}

} // namespace taut
