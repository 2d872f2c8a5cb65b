// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace taut {

struct ExperimentConfig {
    std::string name = "energy-convergence";
    double r = 1.0;
    std::vector<double> horizons = {250.0, 500.0, 1000.0, 2000.0};
    std::size_t steps_per_unit = 500;
    std::size_t replicates = 50;
    std::uint64_t master_seed = 20250811;
    std::vector<double> mus = {0.0, 0.5, 1.0};
    std::vector<std::string> phis = {"power:2"};
    std::string out_dir; // empty: keep results in memory only
    unsigned threads = 0; // 0 = auto; TAUT_BENCH_THREADS caps either way

    std::size_t steps_for(double horizon) const;
};

/// Parses flat "key = value" lines ('#' comments allowed). Recognized keys:
/// experiment, r, T, steps, replicates, seed, mu, phi, out, threads.
/// Numeric lists are comma-separated; the phi list is ';'-separated.
ExperimentConfig load_config(std::istream& in, ExperimentConfig base = {});

struct ResultRow {
    std::string experiment;
    double horizon = 0.0;
    std::string param;
    double mean = 0.0;
    double std_error = 0.0;
    double target = 0.0;
    double rel_error = 0.0;
    std::size_t replicates = 0;
    std::vector<double> values; // per replicate, ordered by replicate index
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void write_csv(std::ostream& out) const;
    void write_metadata(std::ostream& out) const;
};

/// Normalized taut-string energies (pinned mode) against the closed-form
/// targets, one row per (T, phi). Adds a paired grid-refinement bias
/// estimate at the largest horizon to the metadata.
/// Throws std::invalid_argument if some phi has an infinite target.
ExperimentResult run_energy_convergence(const ExperimentConfig& cfg);

/// TV^r/T and UTV^r/T of drifted paths against m_r(mu) and q_r(mu),
/// rows per (T, mu, kind).
ExperimentResult run_tv_lln(const ExperimentConfig& cfg);

/// Kolmogorov-Smirnov distance between the taut-string sojourn measure
/// and the limit law, one row per T.
ExperimentResult run_sojourn_convergence(const ExperimentConfig& cfg);

struct DivergenceProbeResult {
    ExperimentResult summary;

    struct Event {
        std::size_t replicate;
        double horizon;        // T_n of the window
        double window;         // grid-snapped window length
        double increment;      // path increment over the window
        double probability;    // exact normal-tail value for this window
        double window_energy;  // taut-string energy over the window
        double jensen_bound;   // window * phi((r/2 - eps)/window)
    };
    std::vector<Event> events;
    std::vector<double> running_max; // per replicate, across all horizons
    double expected_events = 0.0;    // sum of window probabilities
    double variance_events = 0.0;    // sum p(1-p)
    double target_integral = 0.0;    // finite integral of phi * p_inf
};

/// Scans integer horizons for end-window increments >= r, checks the
/// convexity lower bound on each observed event, and tracks the running
/// maximum of normalized energy over a geometric horizon grid plus all
/// event horizons. cfg.phis[0] must be an "exp:lambda" descriptor with
/// lambda > 1.
DivergenceProbeResult run_divergence_probe(const ExperimentConfig& cfg);

/// Runs the experiment named in cfg and writes CSV + metadata into
/// cfg.out_dir (if set). Returns the summary result.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

unsigned resolve_threads(unsigned requested);

} // namespace taut
