#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meander/errors.hpp"
#include "meander/experiment.hpp"
#include "meander/increments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact and stochastic laws of random walks killed at the non-positive half-line"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment and write CSV/SVG artifacts");
    std::string config_path, law_arg, n_arg, modes_arg, out_arg, mc_mode_arg;
    double eps_trunc = -1.0;
    std::int64_t paths = -1, budget = -1;
    std::uint64_t seed = 0;
    bool seed_set = false, dump_table = false;
    run->add_option("--config", config_path, "config file (key = value lines)");
    run->add_option("--law", law_arg, "law spec(s): builtin:NAME or file path, comma separated");
    run->add_option("--n", n_arg, "horizons: comma list or dyadic:LO..HI");
    run->add_option("--modes", modes_arg, "comma list of exact|mc|smoothing|audit|rate");
    run->add_option("--out", out_arg, "output directory");
    run->add_option("--eps-trunc", eps_trunc, "meander table edge truncation (<= 1e-9)");
    run->add_option("--seed", seed, "Monte Carlo seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--paths", paths, "Monte Carlo sample count");
    run->add_option("--mc-mode", mc_mode_arg, "rejection | htransform");
    run->add_option("--budget", budget, "Monte Carlo increment-draw budget");
    run->add_flag("--dump-table", dump_table, "also write the sparse b_k(x) table");

    auto* report = app.add_subcommand("report", "summarize artifacts from a previous run");
    std::string report_dir;
    report->add_option("dir", report_dir, "output directory of a previous run")->required();

    auto* laws = app.add_subcommand("laws", "list builtin increment laws");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) {
            meander::ExperimentConfig cfg;
            if (!config_path.empty()) cfg = meander::parse_config_file(config_path);
            if (!law_arg.empty()) meander::apply_config_value(cfg, "law", law_arg);
            if (!n_arg.empty()) meander::apply_config_value(cfg, "n", n_arg);
            if (!modes_arg.empty()) meander::apply_config_value(cfg, "modes", modes_arg);
            if (!out_arg.empty()) meander::apply_config_value(cfg, "out", out_arg);
            if (eps_trunc >= 0.0) cfg.eps_trunc = eps_trunc;
            if (seed_set) cfg.mc.seed = seed;
            if (paths >= 0) cfg.mc.paths = paths;
            if (!mc_mode_arg.empty()) cfg.mc.mode = mc_mode_arg;
            if (budget >= 0) cfg.mc.budget = budget;
            if (dump_table) cfg.dump_table = true;
            meander::run_experiment(cfg);
            std::cout << "artifacts written to " << cfg.out_dir << "\n";
        } else if (app.got_subcommand(report)) {
            meander::report_experiment(report_dir, std::cout);
        } else if (app.got_subcommand(laws)) {
            for (const auto& name : meander::builtin_law_names())
                std::cout << "builtin:" << name << "\n";
        }
    } catch (const meander::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const meander::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
