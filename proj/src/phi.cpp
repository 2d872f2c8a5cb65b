// SPDX-License-Identifier: MIT
#include "taut/phi.hpp"

#include "taut/csv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace taut {

PhiSpec PhiSpec::power(double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("PhiSpec::power: exponent must be >= 1");
    return {Variant::Power, p, 0.0};
}
PhiSpec PhiSpec::rho_plus(double mu) { return {Variant::ShiftedPositivePart, mu, 0.0}; }
PhiSpec PhiSpec::rho_minus(double mu) { return {Variant::ShiftedNegativePart, mu, 0.0}; }
PhiSpec PhiSpec::kappa(double mu) { return {Variant::ShiftedAbs, mu, 0.0}; }
PhiSpec PhiSpec::graph_length() { return {Variant::GraphLength, 0.0, 0.0}; }
PhiSpec PhiSpec::exponential(double lambda, double rscale) {
    return {Variant::Exponential, lambda, rscale};
}
PhiSpec PhiSpec::linear(double slope, double offset) {
    return {Variant::Linear, slope, offset};
}

double phi_eval(const PhiSpec& phi, double u) {
    switch (phi.variant) {
        case PhiSpec::Variant::Power:
            if (phi.a == 1.0) return std::abs(u);
            if (phi.a == 2.0) return u * u;
            return std::pow(std::abs(u), phi.a);
        case PhiSpec::Variant::ShiftedPositivePart:
            return std::max(u - phi.a, 0.0);
        case PhiSpec::Variant::ShiftedNegativePart:
            return std::max(phi.a - u, 0.0);
        case PhiSpec::Variant::ShiftedAbs:
            return std::abs(u - phi.a);
        case PhiSpec::Variant::GraphLength:
            return std::sqrt(1.0 + u * u);
        case PhiSpec::Variant::Exponential: {
            const double arg = phi.a * phi.b * u;
            // huge slopes signal the divergence regime; keep it explicit
            if (arg > 700.0) return std::numeric_limits<double>::infinity();
            return std::exp(arg);
        }
        case PhiSpec::Variant::Linear:
            return phi.a * u + phi.b;
    }
    throw std::logic_error("phi_eval: unknown variant");
}

std::string PhiSpec::describe() const {
    switch (variant) {
        case Variant::Power: return "power:" + csv::num6(a);
        case Variant::ShiftedPositivePart: return "rhoplus:" + csv::num6(a);
        case Variant::ShiftedNegativePart: return "rhominus:" + csv::num6(a);
        case Variant::ShiftedAbs: return "kappa:" + csv::num6(a);
        case Variant::GraphLength: return "graphlen";
        case Variant::Exponential: return "exp:" + csv::num6(a);
        case Variant::Linear: return "linear:" + csv::num6(a) + "," + csv::num6(b);
    }
    return "?";
}

PhiSpec parse_phi(const std::string& descriptor, double exp_rscale) {
    const auto colon = descriptor.find(':');
    const std::string name = descriptor.substr(0, colon);
    const std::string args =
        colon == std::string::npos ? "" : descriptor.substr(colon + 1);

    auto one_arg = [&]() {
        if (args.empty())
            throw std::invalid_argument("phi descriptor '" + name +
                                        "' needs a numeric argument");
        std::size_t used = 0;
        const double v = std::stod(args, &used);
        if (used != args.size())
            throw std::invalid_argument("phi descriptor: bad number '" + args + "'");
        return v;
    };

    if (name == "power") return PhiSpec::power(one_arg());
    if (name == "rhoplus") return PhiSpec::rho_plus(one_arg());
    if (name == "rhominus") return PhiSpec::rho_minus(one_arg());
    if (name == "kappa") return PhiSpec::kappa(one_arg());
    if (name == "graphlen") {
        if (!args.empty())
            throw std::invalid_argument("phi descriptor 'graphlen' takes no argument");
        return PhiSpec::graph_length();
    }
    if (name == "exp") return PhiSpec::exponential(one_arg(), exp_rscale);
    if (name == "linear") {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("phi descriptor 'linear' needs 'a,b'");
        return PhiSpec::linear(std::stod(args.substr(0, comma)),
                               std::stod(args.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown phi descriptor: " + descriptor);
}

} // namespace taut
