// SPDX-License-Identifier: MIT
#include "taut/piecewise_linear.hpp"

#include "taut/csv.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace taut {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<Knot> knots)
    : knots_(std::move(knots)) {
    if (knots_.size() < 2)
        throw std::invalid_argument("PiecewiseLinearPath: need at least 2 knots");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i].time > knots_[i - 1].time))
            throw std::invalid_argument(
                "PiecewiseLinearPath: knot times must be strictly increasing");
}

double PiecewiseLinearPath::evaluate(double t) const {
    if (t < start_time() || t > end_time())
        throw std::domain_error("PiecewiseLinearPath::evaluate: t outside domain");
    auto it = std::upper_bound(
        knots_.begin(), knots_.end(), t,
        [](double value, const Knot& k) { return value < k.time; });
    if (it == knots_.end()) return knots_.back().value;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    const double w = (t - lo.time) / (hi.time - lo.time);
    return lo.value + w * (hi.value - lo.value);
}

double PiecewiseLinearPath::total_variation() const {
    double tv = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i)
        tv += std::abs(knots_[i].value - knots_[i - 1].value);
    return tv;
}

void write_csv(const PiecewiseLinearPath& pl, std::ostream& out) {
    out << "time,value\n";
    for (const auto& k : pl.knots())
        out << csv::num(k.time) << ',' << csv::num(k.value) << '\n';
}

void write_derivative_csv(const PiecewiseLinearPath& pl, std::ostream& out) {
    out << "segment_start,segment_end,slope\n";
    for (std::size_t i = 0; i < pl.segment_count(); ++i)
        out << csv::num(pl.knots()[i].time) << ',' << csv::num(pl.knots()[i + 1].time)
            << ',' << csv::num(pl.slope(i)) << '\n';
}

PiecewiseLinearPath read_knots_csv(std::istream& in) {
    std::vector<PiecewiseLinearPath::Knot> knots;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("knot CSV: expected 'time,value' rows");
        try {
            const double t = std::stod(line.substr(0, comma));
            const double v = std::stod(line.substr(comma + 1));
            knots.push_back({t, v});
        } catch (const std::exception&) {
            if (knots.empty()) continue; // header row
            throw std::invalid_argument("knot CSV: malformed row: " + line);
        }
    }
    return PiecewiseLinearPath(std::move(knots));
}

} // namespace taut
