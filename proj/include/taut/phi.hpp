// SPDX-License-Identifier: MIT
#pragma once

#include <string>

namespace taut {

/// Descriptor of a convex (or affine) test function phi.
///
/// Variants and their formulas:
///   Power(p)               |u|^p, p >= 1
///   ShiftedPositivePart(m) (u - m)^+
///   ShiftedNegativePart(m) (u - m)^-
///   ShiftedAbs(m)          |u - m|
///   GraphLength            sqrt(1 + u^2)
///   Exponential(l, s)      exp(l * s * u)
///   Linear(a, b)           a*u + b
struct PhiSpec {
    enum class Variant {
        Power,
        ShiftedPositivePart,
        ShiftedNegativePart,
        ShiftedAbs,
        GraphLength,
        Exponential,
        Linear,
    };

    Variant variant = Variant::Power;
    double a = 2.0; // exponent / shift / lambda / linear coefficient
    double b = 1.0; // exponential r-scale / linear offset

    static PhiSpec power(double p);
    static PhiSpec rho_plus(double mu);
    static PhiSpec rho_minus(double mu);
    static PhiSpec kappa(double mu);
    static PhiSpec graph_length();
    static PhiSpec exponential(double lambda, double rscale = 1.0);
    static PhiSpec linear(double slope, double offset);

    /// Human-readable descriptor, parseable by parse_phi.
    std::string describe() const;
};

double phi_eval(const PhiSpec& phi, double u);

/// Parses "power:p | rhoplus:mu | rhominus:mu | kappa:mu | graphlen |
/// exp:lambda | linear:a,b". The exponential r-scale is supplied by the
/// caller (the CLI passes its --r). Throws std::invalid_argument on
/// malformed descriptors.
PhiSpec parse_phi(const std::string& descriptor, double exp_rscale = 1.0);

} // namespace taut
