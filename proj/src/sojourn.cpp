// SPDX-License-Identifier: MIT
#include "taut/sojourn.hpp"

#include "taut/closed_forms.hpp"
#include "taut/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace taut {

SojournMeasure sojourn_measure(const PiecewiseLinearPath& pl) {
    std::vector<SojournMeasure::Atom> atoms;
    atoms.reserve(pl.segment_count());
    for (std::size_t i = 0; i < pl.segment_count(); ++i)
        atoms.push_back({pl.slope(i), pl.segment_length(i)});

    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.slope < b.slope; });

    SojournMeasure m;
    m.total = pl.span();
    for (const auto& atom : atoms) {
        if (!m.atoms.empty() && m.atoms.back().slope == atom.slope)
            m.atoms.back().weight += atom.weight;
        else
            m.atoms.push_back(atom);
    }
    return m;
}

double empirical_tail(const SojournMeasure& m, double v) {
    double mass = 0.0;
    for (auto it = m.atoms.rbegin(); it != m.atoms.rend(); ++it) {
        if (it->slope < v) break;
        mass += it->weight;
    }
    return mass / m.total;
}

double ks_distance(const SojournMeasure& m, double r) {
    // scan atoms from the top; tail_above = empirical tail just right of
    // the atom, tail_at = including it (left-closed convention)
    double worst = 0.0;
    double mass_above = 0.0;
    for (auto it = m.atoms.rbegin(); it != m.atoms.rend(); ++it) {
        const double lim = limit_tail(it->slope, r);
        const double tail_above = mass_above / m.total;
        mass_above += it->weight;
        const double tail_at = mass_above / m.total;
        worst = std::max(worst, std::abs(tail_above - lim));
        worst = std::max(worst, std::abs(tail_at - lim));
    }
    return worst;
}

void write_csv(const SojournMeasure& m, std::ostream& out) {
    out << "slope,weight\n";
    for (const auto& atom : m.atoms)
        out << csv::num(atom.slope) << ',' << csv::num(atom.weight) << '\n';
}

void write_tail_comparison_csv(const SojournMeasure& m, double r,
                               std::ostream& out) {
    out << "v,empirical,limit\n";
    for (const auto& atom : m.atoms)
        out << csv::num(atom.slope) << ',' << csv::num(empirical_tail(m, atom.slope))
            << ',' << csv::num(limit_tail(atom.slope, r)) << '\n';
}

} // namespace taut
