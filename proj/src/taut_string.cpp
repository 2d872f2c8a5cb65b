// SPDX-License-Identifier: MIT
#include "taut/taut_string.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace taut {

namespace {

struct Pt {
    double t, v;
};

double slope(const Pt& a, const Pt& b) { return (b.v - a.v) / (b.t - a.t); }

// slope(a,b) >= slope(b,c) without divisions; times strictly increase.
bool slope_ge(const Pt& a, const Pt& b, const Pt& c) {
    return (b.v - a.v) * (c.t - b.t) >= (c.v - b.v) * (b.t - a.t);
}
bool slope_le(const Pt& a, const Pt& b, const Pt& c) {
    return (b.v - a.v) * (c.t - b.t) <= (c.v - b.v) * (b.t - a.t);
}
// slope(a,p) < slope(a,q)
bool slope_lt2(const Pt& a, const Pt& p, const Pt& q) {
    return (p.v - a.v) * (q.t - a.t) < (q.v - a.v) * (p.t - a.t);
}

// Vector-backed chain with an O(1) amortized pop_front.
class Chain {
public:
    bool empty() const { return head_ == pts_.size(); }
    const Pt& front() const { return pts_[head_]; }
    std::size_t size() const { return pts_.size() - head_; }
    const Pt& at_back(std::size_t i) const { return pts_[pts_.size() - 1 - i]; }
    void push_back(const Pt& p) { pts_.push_back(p); }
    void pop_back() { pts_.pop_back(); }
    Pt pop_front() { return pts_[head_++]; }
    void reserve(std::size_t n) { pts_.reserve(n); }

private:
    std::vector<Pt> pts_;
    std::size_t head_ = 0;
};

// Funnel state: committed knots, the apex (last committed path point), an
// upper chain (convex minorant of upper barrier points, slopes increasing)
// and a lower chain (concave majorant of lower barrier points, slopes
// decreasing). The straight segment from the apex to any target is
// tube-feasible iff its slope lies between the first edges of the chains.
struct Funnel {
    std::vector<PiecewiseLinearPath::Knot> knots;
    Pt apex;
    Chain upper, lower;

    explicit Funnel(Pt start) : apex(start) {}

    void commit_apex() { knots.push_back({apex.t, apex.v}); }

    void insert_upper(const Pt& p) {
        while (upper.size() >= 2 && slope_ge(upper.at_back(1), upper.at_back(0), p))
            upper.pop_back();
        if (upper.size() == 1 && slope_ge(apex, upper.at_back(0), p))
            upper.pop_back();
        if (upper.empty()) {
            // p may force the string below the lower chain: bend there.
            while (!lower.empty() && slope_lt2(apex, p, lower.front())) {
                commit_apex();
                apex = lower.pop_front();
            }
        }
        upper.push_back(p);
    }

    void insert_lower(const Pt& q) {
        while (lower.size() >= 2 && slope_le(lower.at_back(1), lower.at_back(0), q))
            lower.pop_back();
        if (lower.size() == 1 && slope_le(apex, lower.at_back(0), q))
            lower.pop_back();
        if (lower.empty()) {
            while (!upper.empty() && slope_lt2(apex, upper.front(), q)) {
                commit_apex();
                apex = upper.pop_front();
            }
        }
        lower.push_back(q);
    }
};

// For the free-boundary mode: intersect the barrier intervals until the
// first forced move; the optimal start sits at the boundary being left.
// Returns the start value, or the clamped-to-zero value if nothing ever
// forces the string to move (then a constant is optimal).
struct FreeStart {
    double value;
    bool forced;
};

FreeStart free_start_value(const std::vector<double>& x, double h) {
    double lo = x[0] - h, hi = x[0] + h;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double blo = x[k] - h, bhi = x[k] + h;
        if (blo > hi) return {hi, true};
        if (bhi < lo) return {lo, true};
        lo = std::max(lo, blo);
        hi = std::min(hi, bhi);
    }
    return {std::clamp(0.0, lo, hi), false};
}

} // namespace

PiecewiseLinearPath taut_string(const SampledPath& path, const TubeSpec& tube) {
    validate(path);
    if (!(tube.width > 0.0))
        throw std::invalid_argument("taut_string: tube width must be positive");

    const std::vector<double>& x = path.values;
    const std::size_t n = path.steps();
    const double h = tube.width / 2.0;
    const double horizon = path.horizon;
    const bool pinned = tube.mode == BoundaryMode::PinnedBothEnds;

    double start = 0.0;
    if (!pinned) {
        const FreeStart fs = free_start_value(x, h);
        if (!fs.forced) {
            // constant function fits in the tube
            return PiecewiseLinearPath({{0.0, fs.value}, {horizon, fs.value}});
        }
        start = fs.value;
    }

    Funnel funnel(Pt{0.0, start});
    funnel.upper.reserve(64);
    funnel.lower.reserve(64);

    for (std::size_t k = 1; k <= n; ++k) {
        const double t = path.time_at(k);
        if (pinned && k == n) {
            // pinned endpoint: the barrier interval collapses to W(T)
            funnel.insert_upper(Pt{t, x[k]});
            funnel.insert_lower(Pt{t, x[k]});
        } else {
            funnel.insert_upper(Pt{t, x[k] + h});
            funnel.insert_lower(Pt{t, x[k] - h});
        }
    }

    if (pinned) {
        funnel.commit_apex();
        funnel.knots.push_back({horizon, x[n]});
    } else {
        // Close with the minimal-variation tail: follow the forcing chain
        // while it keeps pushing the string away from a constant, then run
        // flat to the right edge.
        if (!funnel.upper.empty() && slope(funnel.apex, funnel.upper.front()) < 0.0) {
            while (!funnel.upper.empty() &&
                   slope(funnel.apex, funnel.upper.front()) < 0.0) {
                funnel.commit_apex();
                funnel.apex = funnel.upper.pop_front();
            }
        } else if (!funnel.lower.empty() &&
                   slope(funnel.apex, funnel.lower.front()) > 0.0) {
            while (!funnel.lower.empty() &&
                   slope(funnel.apex, funnel.lower.front()) > 0.0) {
                funnel.commit_apex();
                funnel.apex = funnel.lower.pop_front();
            }
        }
        funnel.commit_apex();
        if (funnel.apex.t < horizon)
            funnel.knots.push_back({horizon, funnel.apex.v});
    }

    return PiecewiseLinearPath(std::move(funnel.knots));
}

PiecewiseLinearPath make_pseudostring(const SampledPath& path,
                                      const PiecewiseLinearPath& inner,
                                      double delta) {
    validate(path);
    if (!(path.horizon > 2.0))
        throw std::invalid_argument("make_pseudostring: need T > 2");
    if (!(delta > 0.0))
        throw std::invalid_argument("make_pseudostring: delta must be positive");

    const double horizon = path.horizon;
    const std::size_t n = path.steps();

    // piecewise-linear interpolation of the sampled path
    auto path_at = [&](double t) {
        const double pos = t / path.dt();
        const auto k = static_cast<std::size_t>(
            std::clamp(pos, 0.0, static_cast<double>(n - 1)));
        const double w = pos - static_cast<double>(k);
        return path.values[k] + w * (path.values[k + 1] - path.values[k]);
    };

    const double left_gap = inner.evaluate(1.0) - path_at(1.0);
    const double right_gap = inner.evaluate(horizon - 1.0) - path_at(horizon - 1.0);

    std::vector<PiecewiseLinearPath::Knot> knots;
    knots.push_back({0.0, 0.0});
    // left connector: W(t) + gap * t on grid points of (0, 1)
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = path.time_at(k);
        if (t >= 1.0) break;
        knots.push_back({t, path.values[k] + left_gap * t});
    }
    knots.push_back({1.0, inner.evaluate(1.0)});
    for (const auto& knot : inner.knots())
        if (knot.time > 1.0 && knot.time < horizon - 1.0) knots.push_back(knot);
    knots.push_back({horizon - 1.0, inner.evaluate(horizon - 1.0)});
    // right connector: W(t) + gap * (T - t)
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = path.time_at(k);
        if (t <= horizon - 1.0) continue;
        if (t >= horizon) break;
        knots.push_back({t, path.values[k] + right_gap * (horizon - t)});
    }
    knots.push_back({horizon, path.values[n]});

    return PiecewiseLinearPath(std::move(knots));
}

} // namespace taut
