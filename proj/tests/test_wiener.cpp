// SPDX-License-Identifier: MIT
#include "taut/wiener.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace taut;

TEST_CASE("simulate_wiener validates parameters") {
    CHECK_THROWS_AS(simulate_wiener(0.0, 10, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_wiener(-1.0, 10, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_wiener(1.0, 0, {1, 0}), std::invalid_argument);
}

TEST_CASE("simulate_wiener basic shape") {
    const SampledPath p = simulate_wiener(4.0, 4, {123, 0});
    CHECK(p.values.size() == 5);
    CHECK(p.values[0] == 0.0);
    CHECK(p.dt() == doctest::Approx(1.0));
    CHECK(p.time_at(4) == doctest::Approx(4.0));
}

TEST_CASE("repeated calls are byte-identical") {
    const SampledPath a = simulate_wiener(4.0, 4, {42, 7});
    const SampledPath b = simulate_wiener(4.0, 4, {42, 7});
    CHECK(a.values == b.values);
    const SampledPath c = simulate_wiener(4.0, 4, {42, 8});
    CHECK(a.values != c.values);
}

TEST_CASE("terminal value is standard normal: mean over many seeds") {
    const std::size_t n_seeds = 100000;
    double sum = 0.0;
    for (std::size_t s = 0; s < n_seeds; ++s)
        sum += simulate_wiener(1.0, 1, {2024, s}).values[1];
    const double mean = sum / static_cast<double>(n_seeds);
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n_seeds)));
}

TEST_CASE("terminal variance matches the horizon") {
    const std::size_t n_seeds = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t s = 0; s < n_seeds; ++s) {
        const double w = simulate_wiener(2.0, 4, {99, s}).values[4];
        sum += w;
        sum2 += w * w;
    }
    const double n = static_cast<double>(n_seeds);
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(var > 1.96);
    CHECK(var < 2.04);
}

TEST_CASE("increments pass a kurtosis sanity check") {
    const std::size_t n = 1000000;
    const SampledPath p = simulate_wiener(1.0, n, {77, 0});
    const double sd = std::sqrt(p.dt());
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double z = (p.values[k] - p.values[k - 1]) / sd;
        m2 += z * z;
        m4 += z * z * z * z;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    const double kurtosis = m4 / (m2 * m2);
    CHECK(kurtosis > 2.9);
    CHECK(kurtosis < 3.1);
}

TEST_CASE("non-overlapping increments are uncorrelated") {
    const std::size_t n = 200000;
    const SampledPath p = simulate_wiener(1.0, n, {1234, 5});
    std::vector<double> inc(n);
    for (std::size_t k = 0; k < n; ++k) inc[k] = p.values[k + 1] - p.values[k];
    const std::size_t m = n / 2;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        sxy += inc[2 * k] * inc[2 * k + 1];
        sxx += inc[2 * k] * inc[2 * k];
        syy += inc[2 * k + 1] * inc[2 * k + 1];
    }
    const double corr = sxy / std::sqrt(sxx * syy);
    CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("Brownian scaling holds in distribution (two-sample KS)") {
    // c * W(T) vs W(c^2 T) at matching grid indices
    const double c = 2.0;
    const std::size_t n_paths = 4000;
    std::vector<double> a(n_paths), b(n_paths);
    for (std::size_t s = 0; s < n_paths; ++s) {
        a[s] = c * simulate_wiener(1.0, 16, {5150, s}).values[16];
        b[s] = simulate_wiener(c * c * 1.0, 16, {6160, s}).values[16];
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // two-sample KS statistic
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n_paths && j < n_paths) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(n_paths);
        const double fb = static_cast<double>(j) / static_cast<double>(n_paths);
        ks = std::max(ks, std::abs(fa - fb));
    }
    const double n_eff = static_cast<double>(n_paths) / 2.0;
    CHECK(ks < 2.2 / std::sqrt(n_eff));
}

TEST_CASE("add_drift: identity, pure drift, inverse") {
    const SampledPath p = simulate_wiener(2.0, 2, {3, 1});

    const SampledPath same = add_drift(p, 0.0);
    CHECK(same.values == p.values);

    SampledPath zero;
    zero.horizon = 2.0;
    zero.values = {0.0, 0.0, 0.0};
    const SampledPath drifted = add_drift(zero, 1.0);
    CHECK(drifted.values[0] == 0.0);
    CHECK(drifted.values[1] == doctest::Approx(-1.0));
    CHECK(drifted.values[2] == doctest::Approx(-2.0));

    const SampledPath back = add_drift(add_drift(p, 0.7), -0.7);
    for (std::size_t k = 0; k < p.values.size(); ++k)
        CHECK(back.values[k] ==
              doctest::Approx(p.values[k]).epsilon(1e-12).scale(1.0));
}
