// SPDX-License-Identifier: MIT
#include "taut/taut_string.hpp"

#include "taut/energy.hpp"
#include "taut/rng.hpp"
#include "taut/truncated_variation.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace taut;

namespace {

const double kEps = 1e-9;

SampledPath linear_path(double slope, double horizon, std::size_t steps) {
    SampledPath p;
    p.horizon = horizon;
    p.values.resize(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) p.values[k] = slope * p.time_at(k);
    return p;
}

bool knot_on_barrier_or_endpoint(const SampledPath& path, double r,
                                 const PiecewiseLinearPath::Knot& knot) {
    if (knot.time == 0.0 || knot.time == path.horizon) return true;
    // knots land on grid times; locate the grid index
    const double pos = knot.time / path.dt();
    const auto k = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(k)) > 1e-6) return false;
    const double gap = std::abs(knot.value - path.values[k]);
    return std::abs(gap - r / 2.0) <= kEps * std::max(1.0, r);
}

} // namespace

TEST_CASE("rejects a non-positive tube width") {
    const SampledPath p = testing::random_path(1, 16);
    CHECK_THROWS_AS(taut_string(p, {0.0, BoundaryMode::PinnedBothEnds}),
                    std::invalid_argument);
    CHECK_THROWS_AS(taut_string(p, {-1.0, BoundaryMode::PinnedBothEnds}),
                    std::invalid_argument);
}

TEST_CASE("a linear path is its own taut string") {
    for (double slope : {0.0, 0.5, -2.0}) {
        const SampledPath p = linear_path(slope, 4.0, 40);
        const auto eta = taut_string(p, {1.0, BoundaryMode::PinnedBothEnds});
        CHECK(eta.knots().size() == 2);
        CHECK(eta.knots().front().time == 0.0);
        CHECK(eta.knots().front().value == 0.0);
        CHECK(eta.knots().back().time == doctest::Approx(4.0));
        CHECK(eta.knots().back().value == doctest::Approx(slope * 4.0));
    }
}

TEST_CASE("a path hugging its chord yields the chord") {
    // wiggle around the chord from (0,0) to (T, 1) with amplitude < r/2
    const std::size_t n = 64;
    SampledPath p;
    p.horizon = 2.0;
    p.values.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = p.time_at(k);
        p.values[k] = 0.5 * t + 0.2 * std::sin(17.0 * t);
    }
    p.values[0] = 0.0;
    const auto eta = taut_string(p, {1.0, BoundaryMode::PinnedBothEnds});
    CHECK(eta.knots().size() == 2);
    CHECK(eta.end_value() == doctest::Approx(p.values[n]));
}

TEST_CASE("containment at grid points, both modes") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const SampledPath p = testing::random_path(700 + s, 400);
        for (double r : {0.4, 1.0, 3.0}) {
            for (auto mode :
                 {BoundaryMode::PinnedBothEnds, BoundaryMode::PinnedLeftFreeRight}) {
                const auto eta = taut_string(p, {r, mode});
                CHECK(testing::max_abs_gap(p, eta) <=
                      r / 2.0 + kEps * std::max(1.0, r));
                if (mode == BoundaryMode::PinnedBothEnds) {
                    CHECK(eta.start_value() == 0.0);
                    CHECK(eta.end_value() == p.values[p.steps()]);
                }
            }
        }
    }
}

TEST_CASE("interior knots touch a barrier") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const SampledPath p = testing::random_path(800 + s, 600);
        for (auto mode :
             {BoundaryMode::PinnedBothEnds, BoundaryMode::PinnedLeftFreeRight}) {
            const auto eta = taut_string(p, {0.8, mode});
            std::size_t interior = 0;
            for (const auto& knot : eta.knots()) {
                CHECK(knot_on_barrier_or_endpoint(p, 0.8, knot));
                if (knot.time != 0.0 && knot.time != p.horizon) ++interior;
            }
            // long random paths in a narrow-ish tube must bend
            CHECK(interior > 0);
        }
    }
}

TEST_CASE("evaluate: knots, midpoints, domain") {
    const PiecewiseLinearPath pl({{0.0, 0.0}, {1.0, 2.0}, {3.0, -2.0}});
    CHECK(pl.evaluate(0.0) == 0.0);
    CHECK(pl.evaluate(1.0) == 2.0);
    CHECK(pl.evaluate(3.0) == -2.0);
    CHECK(pl.evaluate(0.5) == doctest::Approx(1.0));
    CHECK(pl.evaluate(2.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(pl.evaluate(-0.1), std::domain_error);
    CHECK_THROWS_AS(pl.evaluate(3.1), std::domain_error);
}

TEST_CASE("free-end duality: TV0 of the string equals TV^r") {
    // small instance cross-checked against the quadratic oracle
    const SampledPath small = testing::random_path(900, 12);
    const auto eta = taut_string(small, {1.0, BoundaryMode::PinnedLeftFreeRight});
    const auto oracle = tv_trunc_oracle(small, 1.0, TruncationKind::TV);
    CHECK(std::abs(eta.total_variation() - oracle.value) <= 1e-9);

    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t len = 16 + (s * 31) % 240;
        const SampledPath p = testing::random_path(1000 + s, len);
        for (double r : {0.3, 1.0, 2.5}) {
            const auto free_eta = taut_string(p, {r, BoundaryMode::PinnedLeftFreeRight});
            const double tv_r = tv_trunc(p, r).value;
            CHECK(std::abs(free_eta.total_variation() - tv_r) <= 1e-9);
        }
    }
}

TEST_CASE("pinned duality band: TV^r <= TV0(eta) <= TV^r + 2r") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const SampledPath p = testing::random_path(1100 + s, 200);
        for (double r : {0.5, 1.0}) {
            const auto eta = taut_string(p, {r, BoundaryMode::PinnedBothEnds});
            const double tv_r = tv_trunc(p, r).value;
            CHECK(eta.total_variation() >= tv_r - 1e-9);
            CHECK(eta.total_variation() <= tv_r + 2.0 * r + 1e-9);
        }
    }
}

TEST_CASE("universality: no feasible perturbation beats the string") {
    const PhiSpec phis[] = {PhiSpec::power(1.0), PhiSpec::power(2.0),
                            PhiSpec::graph_length()};
    Rng256 rng({31337, 0});
    std::size_t trials = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const SampledPath p = testing::random_path(1200 + s, 250);
        const double r = 1.0;
        const auto eta = taut_string(p, {r, BoundaryMode::PinnedBothEnds});
        double base[3];
        for (int i = 0; i < 3; ++i) base[i] = energy(eta, phis[i]);

        // grid values of the string, to be jittered inside the tube
        std::vector<double> grid(p.steps() + 1);
        for (std::size_t k = 0; k <= p.steps(); ++k)
            grid[k] = eta.evaluate(p.time_at(k));

        for (int j = 0; j < 100; ++j) {
            std::vector<PiecewiseLinearPath::Knot> knots(grid.size());
            for (std::size_t k = 0; k < grid.size(); ++k) {
                double v = grid[k];
                if (k != 0 && k != grid.size() - 1) {
                    v += (rng.next_uniform() - 0.5) * r;
                    v = std::min(v, p.values[k] + r / 2.0);
                    v = std::max(v, p.values[k] - r / 2.0);
                }
                knots[k] = {p.time_at(k), v};
            }
            const PiecewiseLinearPath candidate(std::move(knots));
            for (int i = 0; i < 3; ++i)
                CHECK(energy(candidate, phis[i]) >= base[i] - 1e-9);
            ++trials;
        }
    }
    CHECK(trials == 10000);
}

TEST_CASE("grid refinement stability of the kinetic energy") {
    // doubling the resolution moves (1/T) sum slope^2 dt by less than 1%
    // once the base grid resolves the excursion scale (8000 per unit);
    // paired comparison: the coarse path subsamples the fine one
    const double horizon = 200.0;
    const std::size_t fine_steps = 3200000; // 16000 per unit -> 8000 per unit
    const PhiSpec kinetic = PhiSpec::power(2.0);
    double coarse_avg = 0.0, fine_avg = 0.0;
    const int reps = 4;
    for (int rep = 0; rep < reps; ++rep) {
        const SampledPath fine =
            simulate_wiener(horizon, fine_steps, {424242, static_cast<std::uint64_t>(rep)});
        SampledPath coarse;
        coarse.horizon = horizon;
        coarse.values.resize(fine_steps / 2 + 1);
        for (std::size_t k = 0; k < coarse.values.size(); ++k)
            coarse.values[k] = fine.values[2 * k];
        fine_avg += normalized_energy(
            taut_string(fine, {1.0, BoundaryMode::PinnedBothEnds}), kinetic);
        coarse_avg += normalized_energy(
            taut_string(coarse, {1.0, BoundaryMode::PinnedBothEnds}), kinetic);
    }
    coarse_avg /= reps;
    fine_avg /= reps;
    CHECK(std::abs(fine_avg - coarse_avg) / fine_avg < 0.01);
}

TEST_CASE("runtime scales linearly enough for big instances") {
    // not a benchmark, just exercises the amortized pops on 10^6 points
    const SampledPath p = testing::random_path(1300, 1000000, 2000.0);
    const auto eta = taut_string(p, {1.0, BoundaryMode::PinnedBothEnds});
    CHECK(eta.knots().size() > 100);
    CHECK(testing::max_abs_gap(p, eta) <= 0.5 + kEps);
}

TEST_CASE("pseudostring: validation, agreement, containment") {
    const SampledPath p = testing::random_path(1400, 2000, 40.0);
    const auto inner = taut_string(p, {1.0, BoundaryMode::PinnedLeftFreeRight});

    SUBCASE("rejects T <= 2 and bad delta") {
        const SampledPath tiny = testing::random_path(7, 100, 2.0);
        const auto tiny_inner = taut_string(tiny, {1.0, BoundaryMode::PinnedLeftFreeRight});
        CHECK_THROWS_AS(make_pseudostring(tiny, tiny_inner, 0.01),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_pseudostring(p, inner, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(make_pseudostring(p, inner, -1.0), std::invalid_argument);
    }

    SUBCASE("pinned ends and agreement with inner on [1, T-1]") {
        const auto zeta = make_pseudostring(p, inner, 0.01);
        CHECK(zeta.start_time() == 0.0);
        CHECK(zeta.start_value() == 0.0);
        CHECK(zeta.end_time() == doctest::Approx(p.horizon));
        CHECK(zeta.end_value() == p.values[p.steps()]);
        for (double t : {1.0, 5.0, 17.3, 25.0, 39.0})
            CHECK(zeta.evaluate(t) == doctest::Approx(inner.evaluate(t)).epsilon(1e-12));
    }

    SUBCASE("feasible for the widened tube") {
        const auto zeta = make_pseudostring(p, inner, 0.01);
        CHECK(testing::max_abs_gap(p, zeta) <= (1.0 + 0.01) / 2.0 + kEps);
    }

    SUBCASE("widened pinned string never beats the pseudostring") {
        const auto zeta = make_pseudostring(p, inner, 0.01);
        const auto widened = taut_string(p, {1.01, BoundaryMode::PinnedBothEnds});
        for (const auto& phi :
             {PhiSpec::power(1.0), PhiSpec::power(2.0), PhiSpec::kappa(0.5)})
            CHECK(energy(widened, phi) <= energy(zeta, phi) + 1e-9);
    }

    SUBCASE("connector variation stays within the construction bound") {
        const auto zeta = make_pseudostring(p, inner, 0.01);
        const double inner_tv = inner.total_variation();
        const double zeta_tv = zeta.total_variation();
        // connectors follow the path plus a bounded linear correction
        double connector_tv = 0.0;
        for (std::size_t k = 1; k <= p.steps(); ++k) {
            const double t = p.time_at(k);
            if (t <= 1.0 || t > p.horizon - 1.0)
                connector_tv += std::abs(p.values[k] - p.values[k - 1]);
        }
        connector_tv += 2.0 * (1.0 + 0.01); // linear corrections, both ends
        CHECK(zeta_tv <= inner_tv + connector_tv + 1e-9);
    }
}
