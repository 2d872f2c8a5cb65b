// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace taut {

/// Continuous piecewise-linear function given by its knots.
/// Knot times are strictly increasing; at least two knots.
class PiecewiseLinearPath {
public:
    struct Knot {
        double time;
        double value;
    };

    explicit PiecewiseLinearPath(std::vector<Knot> knots);

    const std::vector<Knot>& knots() const { return knots_; }
    std::size_t segment_count() const { return knots_.size() - 1; }

    double start_time() const { return knots_.front().time; }
    double end_time() const { return knots_.back().time; }
    double span() const { return end_time() - start_time(); }
    double start_value() const { return knots_.front().value; }
    double end_value() const { return knots_.back().value; }

    double segment_length(std::size_t i) const {
        return knots_[i + 1].time - knots_[i].time;
    }
    double slope(std::size_t i) const {
        return (knots_[i + 1].value - knots_[i].value) / segment_length(i);
    }

    /// Linear interpolation; throws std::domain_error outside [t0, t1].
    double evaluate(double t) const;

    /// Sum of |knot value differences|.
    double total_variation() const;

private:
    std::vector<Knot> knots_;
};

/// CSV knot list (time,value).
void write_csv(const PiecewiseLinearPath& pl, std::ostream& out);

/// CSV derivative (segment_start,segment_end,slope).
void write_derivative_csv(const PiecewiseLinearPath& pl, std::ostream& out);

/// Reads a knot-list CSV produced by write_csv (header optional).
PiecewiseLinearPath read_knots_csv(std::istream& in);

} // namespace taut
