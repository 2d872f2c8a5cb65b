// SPDX-License-Identifier: MIT
#include "taut/truncated_variation.hpp"

#include "taut/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace taut {

namespace {

void check_r(double r) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("truncated variation: r must be >= 0");
}

// Dead-band tracker. The cart holds the set of positions reachable at
// minimal cost so far; each sample forces it into [x_k - r/2, x_k + r/2].
// Forced moves are minimal, which is optimal: moving further now costs
// extra and can save at most that much later (future costs are
// 1-Lipschitz in the position).
double tv_cart(const std::vector<double>& x, double r) {
    const double h = r / 2.0;
    double lo = x[0] - h, hi = x[0] + h;
    double total = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double blo = x[k] - h, bhi = x[k] + h;
        if (blo > hi) {
            total += blo - hi;
            lo = hi = blo;
        } else if (bhi < lo) {
            total += lo - bhi;
            lo = hi = bhi;
        } else {
            lo = std::max(lo, blo);
            hi = std::min(hi, bhi);
        }
    }
    return total;
}

// Same tracker, charging upward moves only. Downward forcing is free, so
// the single position that dominates is the highest admissible one.
double utv_cart(const std::vector<double>& x, double r) {
    const double h = r / 2.0;
    double pos = x[0] + h;
    double total = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double blo = x[k] - h, bhi = x[k] + h;
        if (pos < blo) {
            total += blo - pos;
            pos = blo;
        } else if (pos > bhi) {
            pos = bhi;
        }
    }
    return total;
}

} // namespace

const char* to_string(TruncationKind kind) {
    switch (kind) {
        case TruncationKind::TV: return "tv";
        case TruncationKind::UTV: return "utv";
        case TruncationKind::DTV: return "dtv";
    }
    return "?";
}

TruncationReport tv_trunc(const SampledPath& path, double r) {
    validate(path);
    check_r(r);
    return {tv_cart(path.values, r), r, TruncationKind::TV, {}};
}

TruncationReport utv_trunc(const SampledPath& path, double r) {
    validate(path);
    check_r(r);
    return {utv_cart(path.values, r), r, TruncationKind::UTV, {}};
}

TruncationReport dtv_trunc(const SampledPath& path, double r) {
    validate(path);
    check_r(r);
    std::vector<double> neg(path.values.size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -path.values[k];
    return {utv_cart(neg, r), r, TruncationKind::DTV, {}};
}

TruncationReport tv_trunc_oracle(const SampledPath& path, double r,
                                 TruncationKind kind) {
    validate(path);
    check_r(r);
    const std::vector<double>& x = path.values;
    const std::size_t n = x.size();
    if (n - 1 > 4096)
        throw std::length_error("tv_trunc_oracle: instance too large (n > 4096)");

    auto penalty = [&](double d) {
        switch (kind) {
            case TruncationKind::TV: return std::max(std::abs(d) - r, 0.0);
            case TruncationKind::UTV: return std::max(d - r, 0.0);
            case TruncationKind::DTV: return std::max(-d - r, 0.0);
        }
        return 0.0;
    };

    // best[i]: max penalty sum over increasing subsequences ending at i.
    std::vector<double> best(n, 0.0);
    std::vector<std::ptrdiff_t> prev(n, -1);
    double value = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double cand = best[j] + penalty(x[i] - x[j]);
            if (cand > best[i]) {
                best[i] = cand;
                prev[i] = static_cast<std::ptrdiff_t>(j);
            }
        }
        if (best[i] > value) {
            value = best[i];
            argmax = i;
        }
    }

    TruncationReport report{value, r, kind, {}};
    if (value > 0.0) {
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(argmax); i >= 0;
             i = prev[i]) {
            report.optimal_indices.push_back(static_cast<std::size_t>(i));
            if (prev[i] < 0) break;
        }
        std::reverse(report.optimal_indices.begin(), report.optimal_indices.end());
    }
    return report;
}

void write_csv_row(const TruncationReport& report, const SampledPath& path,
                   std::ostream& out) {
    out << to_string(report.kind) << ',' << csv::num(report.r) << ','
        << csv::num(report.value) << ',' << path.steps() << ','
        << csv::num(path.horizon) << '\n';
}

} // namespace taut
