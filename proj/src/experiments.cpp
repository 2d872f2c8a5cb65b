// SPDX-License-Identifier: MIT
#include "taut/experiments.hpp"

#include "taut/closed_forms.hpp"
#include "taut/csv.hpp"
#include "taut/energy.hpp"
#include "taut/sojourn.hpp"
#include "taut/taut_string.hpp"
#include "taut/truncated_variation.hpp"
#include "taut/wiener.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ctime>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace taut {

namespace {

struct Stats {
    double mean = 0.0;
    double std_error = 0.0;
};

Stats stats_of(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {mean, sd / std::sqrt(n)};
}

ResultRow make_row(std::string experiment, double horizon, std::string param,
                   std::vector<double> values, double target) {
    const Stats s = stats_of(values);
    ResultRow row;
    row.experiment = std::move(experiment);
    row.horizon = horizon;
    row.param = std::move(param);
    row.mean = s.mean;
    row.std_error = s.std_error;
    row.target = target;
    row.rel_error = target != 0.0 ? (s.mean - target) / target : s.mean;
    row.replicates = values.size();
    row.values = std::move(values);
    return row;
}

void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto runner = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(threads, count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> parse_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> parse_string_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        // trim
        const auto begin = item.find_first_not_of(" \t");
        const auto end = item.find_last_not_of(" \t");
        if (begin != std::string::npos) out.push_back(item.substr(begin, end - begin + 1));
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return '"' + s + '"';
}

std::string now_iso() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
    return buf;
}

void echo_config(const ExperimentConfig& cfg, ExperimentResult& result) {
    auto join = [](const auto& list, auto fmt) {
        std::string s;
        for (const auto& x : list) {
            if (!s.empty()) s += ',';
            s += fmt(x);
        }
        return s;
    };
    result.metadata.emplace_back("experiment", cfg.name);
    result.metadata.emplace_back("r", csv::num(cfg.r));
    result.metadata.emplace_back("T", join(cfg.horizons, [](double x) { return csv::num(x); }));
    result.metadata.emplace_back("steps_per_unit", std::to_string(cfg.steps_per_unit));
    result.metadata.emplace_back("replicates", std::to_string(cfg.replicates));
    result.metadata.emplace_back("seed", std::to_string(cfg.master_seed));
    result.metadata.emplace_back("mu", join(cfg.mus, [](double x) { return csv::num(x); }));
    result.metadata.emplace_back("phi", join(cfg.phis, [](const std::string& s) { return s; }));
}

void finish_metadata(ExperimentResult& result,
                     std::chrono::steady_clock::time_point started) {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - started);
    result.metadata.emplace_back("wall_time_seconds", csv::num6(elapsed.count()));
    result.metadata.emplace_back("finished_utc", now_iso());
}

} // namespace

std::size_t ExperimentConfig::steps_for(double horizon) const {
    const double n = horizon * static_cast<double>(steps_per_unit);
    const auto rounded = static_cast<std::size_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(rounded)) > 1e-9)
        throw std::invalid_argument(
            "ExperimentConfig: steps_per_unit * T must be an integer");
    return rounded;
}

ExperimentConfig load_config(std::istream& in, ExperimentConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": expected 'key = value'");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "experiment") base.name = value;
        else if (key == "r") base.r = std::stod(value);
        else if (key == "T") base.horizons = parse_list(value, ',');
        else if (key == "steps") base.steps_per_unit = std::stoull(value);
        else if (key == "replicates") base.replicates = std::stoull(value);
        else if (key == "seed") base.master_seed = std::stoull(value);
        else if (key == "mu") base.mus = parse_list(value, ',');
        else if (key == "phi") base.phis = parse_string_list(value, ';');
        else if (key == "out") base.out_dir = value;
        else if (key == "threads") base.threads = static_cast<unsigned>(std::stoul(value));
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
    if (base.replicates == 0)
        throw std::invalid_argument("config: replicates must be >= 1");
    if (base.horizons.empty())
        throw std::invalid_argument("config: need at least one horizon");
    return base;
}

void ExperimentResult::write_csv(std::ostream& out) const {
    out << "experiment,T,param,mean,std_error,target,rel_error,replicates\n";
    for (const auto& row : rows)
        out << row.experiment << ',' << csv::num(row.horizon) << ','
            << csv_field(row.param) << ',' << csv::num(row.mean) << ','
            << csv::num(row.std_error) << ',' << csv::num(row.target) << ','
            << csv::num(row.rel_error) << ',' << row.replicates << '\n';
}

void ExperimentResult::write_metadata(std::ostream& out) const {
    for (const auto& [key, value] : metadata) out << key << " = " << value << '\n';
}

unsigned resolve_threads(unsigned requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = hw;
    if (const char* env = std::getenv("TAUT_BENCH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
    }
    const unsigned t = requested == 0 ? cap : std::min(requested, cap);
    return std::max(t, 1u);
}

ExperimentResult run_energy_convergence(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(cfg.threads);

    std::vector<PhiSpec> phis;
    std::vector<double> targets;
    for (const auto& desc : cfg.phis) {
        const PhiSpec phi = parse_phi(desc, cfg.r);
        const PhiIntegral target = integrate_against_p_inf(phi, cfg.r);
        if (target.infinite)
            throw std::invalid_argument(
                "energy-convergence: infinite target for phi '" + desc +
                "'; use the divergence probe instead");
        phis.push_back(phi);
        targets.push_back(target.value);
    }

    ExperimentResult result;
    echo_config(cfg, result);

    // values[t][p][rep]
    std::vector<std::vector<std::vector<double>>> values(
        cfg.horizons.size(),
        std::vector<std::vector<double>>(phis.size(),
                                         std::vector<double>(cfg.replicates)));

    for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti) {
        const double horizon = cfg.horizons[ti];
        const std::size_t steps = cfg.steps_for(horizon);
        parallel_for_index(cfg.replicates, threads, [&, ti](std::size_t rep) {
            const SeedSpec seed{cfg.master_seed, ti * cfg.replicates + rep};
            const SampledPath path = simulate_wiener(horizon, steps, seed);
            const PiecewiseLinearPath string =
                taut_string(path, {cfg.r, BoundaryMode::PinnedBothEnds});
            for (std::size_t p = 0; p < phis.size(); ++p)
                values[ti][p][rep] = normalized_energy(string, phis[p]);
        });
    }

    for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti)
        for (std::size_t p = 0; p < phis.size(); ++p)
            result.rows.push_back(make_row(cfg.name, cfg.horizons[ti], cfg.phis[p],
                                           values[ti][p], targets[p]));

    // paired grid-refinement bias at the largest horizon: subsampling a
    // finer simulation keeps the same Brownian skeleton on the coarse grid
    {
        const double horizon = cfg.horizons.back();
        const std::size_t reps = std::min<std::size_t>(cfg.replicates, 8);
        std::vector<std::vector<double>> bias(phis.size(), std::vector<double>(reps));
        parallel_for_index(reps, threads, [&](std::size_t rep) {
            ExperimentConfig fine_cfg = cfg;
            fine_cfg.steps_per_unit = cfg.steps_per_unit * 2;
            const std::size_t fine_steps = fine_cfg.steps_for(horizon);
            const SeedSpec seed{cfg.master_seed, (1ULL << 32) + rep};
            const SampledPath fine = simulate_wiener(horizon, fine_steps, seed);
            SampledPath coarse;
            coarse.horizon = horizon;
            coarse.values.resize(fine_steps / 2 + 1);
            for (std::size_t k = 0; k < coarse.values.size(); ++k)
                coarse.values[k] = fine.values[2 * k];
            const auto fine_string =
                taut_string(fine, {cfg.r, BoundaryMode::PinnedBothEnds});
            const auto coarse_string =
                taut_string(coarse, {cfg.r, BoundaryMode::PinnedBothEnds});
            for (std::size_t p = 0; p < phis.size(); ++p)
                bias[p][rep] = normalized_energy(fine_string, phis[p]) -
                               normalized_energy(coarse_string, phis[p]);
        });
        for (std::size_t p = 0; p < phis.size(); ++p)
            result.metadata.emplace_back("grid_bias[" + cfg.phis[p] + "]",
                                         csv::num(stats_of(bias[p]).mean));
    }

    finish_metadata(result, started);
    return result;
}

ExperimentResult run_tv_lln(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(cfg.threads);

    ExperimentResult result;
    echo_config(cfg, result);

    for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti) {
        const double horizon = cfg.horizons[ti];
        const std::size_t steps = cfg.steps_for(horizon);
        std::vector<std::vector<double>> tv(cfg.mus.size(),
                                            std::vector<double>(cfg.replicates));
        std::vector<std::vector<double>> utv = tv;
        parallel_for_index(cfg.replicates, threads, [&](std::size_t rep) {
            const SeedSpec seed{cfg.master_seed, ti * cfg.replicates + rep};
            const SampledPath base = simulate_wiener(horizon, steps, seed);
            for (std::size_t mi = 0; mi < cfg.mus.size(); ++mi) {
                const SampledPath drifted = add_drift(base, cfg.mus[mi]);
                tv[mi][rep] = tv_trunc(drifted, cfg.r).value / horizon;
                utv[mi][rep] = utv_trunc(drifted, cfg.r).value / horizon;
            }
        });
        for (std::size_t mi = 0; mi < cfg.mus.size(); ++mi) {
            const double mu = cfg.mus[mi];
            result.rows.push_back(make_row(cfg.name, horizon,
                                           "tv mu=" + csv::num6(mu), tv[mi],
                                           m_limit(mu, cfg.r)));
            result.rows.push_back(make_row(cfg.name, horizon,
                                           "utv mu=" + csv::num6(mu), utv[mi],
                                           q_limit(mu, cfg.r)));
        }
    }

    finish_metadata(result, started);
    return result;
}

ExperimentResult run_sojourn_convergence(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(cfg.threads);

    ExperimentResult result;
    echo_config(cfg, result);

    for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti) {
        const double horizon = cfg.horizons[ti];
        const std::size_t steps = cfg.steps_for(horizon);
        std::vector<double> ks(cfg.replicates);
        parallel_for_index(cfg.replicates, threads, [&](std::size_t rep) {
            const SeedSpec seed{cfg.master_seed, ti * cfg.replicates + rep};
            const SampledPath path = simulate_wiener(horizon, steps, seed);
            const auto string = taut_string(path, {cfg.r, BoundaryMode::PinnedBothEnds});
            ks[rep] = ks_distance(sojourn_measure(string), cfg.r);
        });
        result.rows.push_back(make_row(cfg.name, horizon, "ks", ks, 0.0));
    }

    finish_metadata(result, started);
    return result;
}

DivergenceProbeResult run_divergence_probe(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(cfg.threads);

    if (cfg.phis.empty())
        throw std::invalid_argument("divergence-probe: need one exp:lambda phi");
    const PhiSpec phi = parse_phi(cfg.phis.front(), cfg.r);
    if (phi.variant != PhiSpec::Variant::Exponential || !(phi.a > 1.0))
        throw std::invalid_argument(
            "divergence-probe: phi must be exp:lambda with lambda > 1");

    const double r = cfg.r;
    const double a = r * r / 2.0;
    const double t_min = std::max(10.0, cfg.horizons.front());
    const double t_max = cfg.horizons.back();
    if (!(t_max >= t_min))
        throw std::invalid_argument("divergence-probe: bad horizon range");
    const std::size_t total_steps = cfg.steps_for(t_max);
    const double dt = t_max / static_cast<double>(total_steps);
    const double eps = 1e-9 * std::max(1.0, r);

    DivergenceProbeResult probe;
    probe.target_integral = integrate_against_p_inf(phi, r).value;

    // geometric horizon grid for the running maximum
    std::vector<double> grid;
    for (double t = t_min; t < t_max; t *= 2.0) grid.push_back(std::floor(t));
    grid.push_back(t_max);

    // end-window descriptors for every integer horizon
    struct Window {
        std::size_t idx_lo, idx_hi;
        double horizon, length, probability;
    };
    std::vector<Window> windows;
    for (double tn = std::ceil(t_min); tn <= t_max; tn += 1.0) {
        const double w = a / std::log(tn);
        const auto idx_hi = static_cast<std::size_t>(std::llround(tn / dt));
        const auto idx_lo = static_cast<std::size_t>(std::llround((tn - w) / dt));
        if (idx_lo >= idx_hi || idx_hi > total_steps) continue;
        const double snapped = static_cast<double>(idx_hi - idx_lo) * dt;
        const double prob = 0.5 * std::erfc(r / std::sqrt(2.0 * snapped));
        windows.push_back({idx_lo, idx_hi, tn, snapped, prob});
    }
    for (const auto& w : windows) {
        probe.expected_events += w.probability * static_cast<double>(cfg.replicates);
        probe.variance_events += w.probability * (1.0 - w.probability) *
                                 static_cast<double>(cfg.replicates);
    }

    probe.running_max.assign(cfg.replicates, 0.0);
    std::vector<std::vector<DivergenceProbeResult::Event>> events_by_rep(
        cfg.replicates);
    std::vector<std::vector<double>> grid_energy(
        grid.size(), std::vector<double>(cfg.replicates, 0.0));

    parallel_for_index(cfg.replicates, threads, [&](std::size_t rep) {
        const SeedSpec seed{cfg.master_seed, rep};
        const SampledPath path = simulate_wiener(t_max, total_steps, seed);

        auto energy_at_horizon = [&](std::size_t idx_end) {
            SampledPath prefix;
            prefix.horizon = static_cast<double>(idx_end) * dt;
            prefix.values.assign(path.values.begin(),
                                 path.values.begin() +
                                     static_cast<std::ptrdiff_t>(idx_end) + 1);
            return taut_string(prefix, {r, BoundaryMode::PinnedBothEnds});
        };

        double run_max = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto idx = static_cast<std::size_t>(std::llround(grid[g] / dt));
            const auto string = energy_at_horizon(idx);
            const double value = normalized_energy(string, phi);
            run_max = std::max(run_max, value);
            grid_energy[g][rep] = value;
        }

        for (const auto& w : windows) {
            const double increment = path.values[w.idx_hi] - path.values[w.idx_lo];
            if (increment < r) continue;
            const auto string = energy_at_horizon(w.idx_hi);
            const double t_lo = static_cast<double>(w.idx_lo) * dt;
            const double window_energy =
                energy_on_interval(string, phi, t_lo, string.end_time());
            const double bound =
                w.length * phi_eval(phi, (r / 2.0 - eps) / w.length);
            run_max = std::max(run_max, normalized_energy(string, phi));
            events_by_rep[rep].push_back({rep, w.horizon, w.length, increment,
                                          w.probability, window_energy, bound});
        }
        probe.running_max[rep] = run_max;
    });

    for (auto& list : events_by_rep)
        probe.events.insert(probe.events.end(), list.begin(), list.end());

    probe.summary.rows.reserve(grid.size() + 2);
    echo_config(cfg, probe.summary);
    for (std::size_t g = 0; g < grid.size(); ++g)
        probe.summary.rows.push_back(make_row(cfg.name, grid[g], "normalized-energy",
                                              grid_energy[g],
                                              probe.target_integral));
    probe.summary.rows.push_back(make_row(cfg.name, t_max, "running-max",
                                          probe.running_max,
                                          probe.target_integral));
    std::vector<double> counts(cfg.replicates, 0.0);
    for (const auto& ev : probe.events) counts[ev.replicate] += 1.0;
    probe.summary.rows.push_back(
        make_row(cfg.name, t_max, "event-count", counts,
                 probe.expected_events / static_cast<double>(cfg.replicates)));

    probe.summary.metadata.emplace_back("expected_events",
                                        csv::num(probe.expected_events));
    probe.summary.metadata.emplace_back("variance_events",
                                        csv::num(probe.variance_events));
    probe.summary.metadata.emplace_back("target_integral",
                                        csv::num(probe.target_integral));
    finish_metadata(probe.summary, started);
    return probe;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    const DivergenceProbeResult* probe = nullptr;
    DivergenceProbeResult probe_storage;

    if (cfg.name == "energy-convergence") {
        result = run_energy_convergence(cfg);
    } else if (cfg.name == "tv-lln") {
        result = run_tv_lln(cfg);
    } else if (cfg.name == "sojourn-convergence") {
        result = run_sojourn_convergence(cfg);
    } else if (cfg.name == "divergence-probe") {
        probe_storage = run_divergence_probe(cfg);
        result = probe_storage.summary;
        probe = &probe_storage;
    } else {
        throw std::invalid_argument("unknown experiment: " + cfg.name);
    }

    if (!cfg.out_dir.empty()) {
        const std::filesystem::path dir(cfg.out_dir);
        std::filesystem::create_directories(dir);
        {
            std::ofstream out(dir / (cfg.name + ".csv"));
            result.write_csv(out);
        }
        {
            std::ofstream out(dir / (cfg.name + ".meta.txt"));
            result.write_metadata(out);
        }
        if (probe) {
            std::ofstream out(dir / (cfg.name + ".events.csv"));
            out << "replicate,T,window,increment,probability,window_energy,"
                   "jensen_bound\n";
            for (const auto& ev : probe->events)
                out << ev.replicate << ',' << csv::num(ev.horizon) << ','
                    << csv::num(ev.window) << ',' << csv::num(ev.increment) << ','
                    << csv::num(ev.probability) << ',' << csv::num(ev.window_energy)
                    << ',' << csv::num(ev.jensen_bound) << '\n';
        }
    }
    return result;
}

} // namespace taut
