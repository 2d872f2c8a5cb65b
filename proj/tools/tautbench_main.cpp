// SPDX-License-Identifier: MIT
//
// tautbench: simulate Wiener paths, compute taut strings and truncated
// variations, evaluate the closed-form limit laws, and drive the Monte
// Carlo experiment suites.

#include "taut/closed_forms.hpp"
#include "taut/csv.hpp"
#include "taut/energy.hpp"
#include "taut/experiments.hpp"
#include "taut/sojourn.hpp"
#include "taut/taut_string.hpp"
#include "taut/truncated_variation.hpp"
#include "taut/wiener.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>

namespace {

// stdout unless --out was given
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct PathArgs {
    double horizon = 100.0;
    double mu = 0.0;
    std::size_t steps_per_unit = 500;
    std::uint64_t seed = 20250811;
    std::uint64_t replicate = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--T", horizon, "time horizon")->check(CLI::PositiveNumber);
        cmd->add_option("--mu", mu, "drift: simulate W_t - mu*t");
        cmd->add_option("--steps", steps_per_unit, "grid steps per unit time")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--replicate", replicate, "replicate stream index");
    }

    taut::SampledPath make() const {
        const auto n = static_cast<std::size_t>(horizon * static_cast<double>(steps_per_unit) + 0.5);
        taut::SampledPath path = taut::simulate_wiener(horizon, n, {seed, replicate});
        return mu != 0.0 ? taut::add_drift(path, mu) : path;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"taut strings, truncated variations and their limit laws"};
    app.require_subcommand(1);

    // --- simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "write a sampled path as CSV");
    PathArgs sim_args;
    sim_args.attach(simulate);
    std::string sim_out;
    simulate->add_option("--out", sim_out, "output file (default stdout)");
    simulate->callback([&] {
        OutputTarget out(sim_out);
        taut::write_csv(sim_args.make(), out.stream());
    });

    // --- taut -------------------------------------------------------------
    auto* tautc = app.add_subcommand("taut", "taut string knots of a simulated path");
    PathArgs taut_args;
    taut_args.attach(tautc);
    double taut_r = 1.0;
    std::string taut_mode = "pinned";
    std::string taut_out, deriv_out;
    tautc->add_option("--r", taut_r, "tube width")->check(CLI::PositiveNumber);
    tautc->add_option("--mode", taut_mode, "pinned | free")
        ->check(CLI::IsMember({"pinned", "free"}));
    tautc->add_option("--out", taut_out, "knot CSV (default stdout)");
    tautc->add_option("--deriv-out", deriv_out, "slope CSV");
    tautc->callback([&] {
        const taut::SampledPath path = taut_args.make();
        const taut::TubeSpec tube{taut_r, taut_mode == "pinned"
                                              ? taut::BoundaryMode::PinnedBothEnds
                                              : taut::BoundaryMode::PinnedLeftFreeRight};
        const auto string = taut::taut_string(path, tube);
        OutputTarget out(taut_out);
        taut::write_csv(string, out.stream());
        if (!deriv_out.empty()) {
            std::ofstream dout(deriv_out);
            taut::write_derivative_csv(string, dout);
        }
    });

    // --- tv ---------------------------------------------------------------
    auto* tv = app.add_subcommand("tv", "truncated variation of a simulated path");
    PathArgs tv_args;
    tv_args.attach(tv);
    double tv_r = 1.0;
    std::string tv_kind = "all";
    std::string tv_out;
    tv->add_option("--r", tv_r, "truncation level")->check(CLI::NonNegativeNumber);
    tv->add_option("--kind", tv_kind, "tv | utv | dtv | all")
        ->check(CLI::IsMember({"tv", "utv", "dtv", "all"}));
    tv->add_option("--out", tv_out, "CSV output (default stdout)");
    tv->callback([&] {
        const taut::SampledPath path = tv_args.make();
        OutputTarget out(tv_out);
        out.stream() << "kind,r,value,n,T\n";
        if (tv_kind == "tv" || tv_kind == "all")
            taut::write_csv_row(taut::tv_trunc(path, tv_r), path, out.stream());
        if (tv_kind == "utv" || tv_kind == "all")
            taut::write_csv_row(taut::utv_trunc(path, tv_r), path, out.stream());
        if (tv_kind == "dtv" || tv_kind == "all")
            taut::write_csv_row(taut::dtv_trunc(path, tv_r), path, out.stream());
    });

    // --- limits -----------------------------------------------------------
    auto* limits = app.add_subcommand("limits", "closed-form limit table");
    double lim_r = 1.0;
    std::vector<double> lim_mus{0.0};
    limits->add_option("--r", lim_r, "tube width")->check(CLI::PositiveNumber);
    limits->add_option("--mu", lim_mus, "drift values");
    limits->callback([&] {
        std::cout << "mu        m_r(mu)     q_r(mu)     p_inf(mu)\n";
        for (double mu : lim_mus)
            std::cout << taut::csv::num6(mu) << "  " << taut::csv::num6(taut::m_limit(mu, lim_r))
                      << "  " << taut::csv::num6(taut::q_limit(mu, lim_r)) << "  "
                      << taut::csv::num6(taut::p_infinity(mu, lim_r)) << "\n";
    });

    // --- energy -----------------------------------------------------------
    auto* energy = app.add_subcommand("energy", "energy of a knot-list CSV path");
    std::string energy_path, energy_phi = "power:2";
    double energy_r = 1.0;
    energy->add_option("--path", energy_path, "knot CSV file")->required();
    energy->add_option("--phi", energy_phi,
                       "power:p | rhoplus:mu | rhominus:mu | kappa:mu | graphlen"
                       " | exp:lambda | linear:a,b");
    energy->add_option("--r", energy_r, "r-scale for exp phi")
        ->check(CLI::PositiveNumber);
    energy->callback([&] {
        std::ifstream in(energy_path);
        if (!in) throw std::runtime_error("cannot open path file: " + energy_path);
        const auto pl = taut::read_knots_csv(in);
        const auto phi = taut::parse_phi(energy_phi, energy_r);
        std::cout << "energy = " << taut::csv::num(taut::energy(pl, phi)) << "\n"
                  << "normalized = " << taut::csv::num(taut::normalized_energy(pl, phi))
                  << "\n";
    });

    // --- sojourn ------------------------------------------------------------
    auto* sojourn = app.add_subcommand("sojourn",
                                       "sojourn measure of the taut-string slope");
    PathArgs soj_args;
    soj_args.attach(sojourn);
    double soj_r = 1.0;
    std::string soj_out, soj_tails;
    sojourn->add_option("--r", soj_r, "tube width")->check(CLI::PositiveNumber);
    sojourn->add_option("--out", soj_out, "measure CSV (default stdout)");
    sojourn->add_option("--tail-out", soj_tails, "tail comparison CSV");
    sojourn->callback([&] {
        const taut::SampledPath path = soj_args.make();
        const auto string =
            taut::taut_string(path, {soj_r, taut::BoundaryMode::PinnedBothEnds});
        const auto measure = taut::sojourn_measure(string);
        OutputTarget out(soj_out);
        taut::write_csv(measure, out.stream());
        if (!soj_tails.empty()) {
            std::ofstream tout(soj_tails);
            taut::write_tail_comparison_csv(measure, soj_r, tout);
        }
        std::cerr << "ks_distance = " << taut::csv::num6(taut::ks_distance(measure, soj_r))
                  << "\n";
    });

    // --- experiment ---------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo suite");
    std::string exp_name;
    std::string exp_config;
    taut::ExperimentConfig flags;
    experiment
        ->add_option("name", exp_name,
                     "energy-convergence | tv-lln | sojourn-convergence | "
                     "divergence-probe")
        ->required();
    experiment->add_option("--config", exp_config, "flat key=value config file");
    auto* f_r = experiment->add_option("--r", flags.r, "tube width");
    auto* f_T = experiment->add_option("--T", flags.horizons, "horizons");
    auto* f_steps = experiment->add_option("--steps", flags.steps_per_unit,
                                           "grid steps per unit time");
    auto* f_reps = experiment->add_option("--replicates", flags.replicates, "replicates");
    auto* f_seed = experiment->add_option("--seed", flags.master_seed, "master seed");
    auto* f_mu = experiment->add_option("--mu", flags.mus, "drift list");
    auto* f_phi = experiment->add_option("--phi", flags.phis, "phi descriptors");
    auto* f_out = experiment->add_option("--out", flags.out_dir, "output directory");
    auto* f_threads = experiment->add_option("--threads", flags.threads,
                                             "worker cap (0 = auto)");
    experiment->callback([&] {
        taut::ExperimentConfig cfg;
        if (!exp_config.empty()) {
            std::ifstream in(exp_config);
            if (!in) throw std::runtime_error("cannot open config: " + exp_config);
            cfg = taut::load_config(in, cfg);
        }
        cfg.name = exp_name;
        if (f_r->count()) cfg.r = flags.r;
        if (f_T->count()) cfg.horizons = flags.horizons;
        if (f_steps->count()) cfg.steps_per_unit = flags.steps_per_unit;
        if (f_reps->count()) cfg.replicates = flags.replicates;
        if (f_seed->count()) cfg.master_seed = flags.master_seed;
        if (f_mu->count()) cfg.mus = flags.mus;
        if (f_phi->count()) cfg.phis = flags.phis;
        if (f_out->count()) cfg.out_dir = flags.out_dir;
        if (f_threads->count()) cfg.threads = flags.threads;

        const taut::ExperimentResult result = taut::run_experiment(cfg);
        if (cfg.out_dir.empty()) result.write_csv(std::cout);
        else
            std::cerr << "wrote " << cfg.out_dir << "/" << cfg.name << ".csv ("
                      << result.rows.size() << " rows)\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // reports the offending flag on stderr
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
