// SPDX-License-Identifier: MIT
#pragma once

#include "taut/phi.hpp"

namespace taut {

/// Limit density of the taut-string derivative:
/// p(u) = r (ru coth(ru) - 1) / sinh^2(ru), with value r/3 at u = 0.
/// Even in u; integrates to 1. Throws std::invalid_argument if r <= 0.
double p_infinity(double u, double r);

/// Limit of TV^r(W - mu t, [0,T]) / T:
/// mu coth(r mu) for mu != 0, 1/r at mu = 0. Even in mu.
double m_limit(double mu, double r);

/// Limit of UTV^r(W - mu t, [0,T]) / T:
/// (mu coth(r mu) - mu)/2 for mu != 0, 1/(2r) at mu = 0.
double q_limit(double mu, double r);

/// Tail of the limit law: nu_inf[v, inf) = -d/dv q_limit(v, r).
/// Equals 1/2 at v = 0, tends to 1 and 0 at -inf and +inf.
double limit_tail(double v, double r);

/// Central second difference of q_limit; approximates p_infinity(mu, r)
/// to O(h^2). Requires 0 < h <= 1e-3.
double density_from_q(double mu, double r, double h);

struct PhiIntegral {
    double value = 0.0;
    bool infinite = false;
};

/// Integral of phi * p_infinity over the real line by adaptive panels,
/// split at phi's kink and extended until the tail contribution is
/// negligible. Exponential phi growing at rate >= 2r is flagged infinite
/// (the density tail decays like 4 r^2 u e^{-2ru}).
/// Throws std::runtime_error("non-convergent...") if the quadrature fails.
PhiIntegral integrate_against_p_inf(const PhiSpec& phi, double r);

} // namespace taut
