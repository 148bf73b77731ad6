#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace meander {

struct McSettings {
    std::uint64_t seed = 12345;
    std::int64_t paths = 10000;
    std::string mode = "rejection"; // rejection | htransform
    std::int64_t budget = 1'000'000'000;
};

// Flat key=value experiment description; CLI flags override file values.
struct ExperimentConfig {
    std::vector<std::string> laws = {"builtin:simple"};
    std::vector<int> n_list;
    std::vector<std::string> modes; // exact | mc | smoothing | audit | rate
    std::string out_dir;
    double eps_trunc = 0.0;
    McSettings mc;
    bool dump_table = false;
};

ExperimentConfig parse_config_file(const std::string& path);
// Accepts the same keys as the config file (law, n, modes, out, eps_trunc,
// seed, paths, mc_mode, budget, dump_table).
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void validate_config(const ExperimentConfig& cfg);

// Runs the experiment, writing curves.csv / audit.csv / tau.csv / mc.csv and
// the SVG plots into out_dir. Partial outputs are removed on failure.
void run_experiment(const ExperimentConfig& cfg);

// One-screen summary of a finished run.
void report_experiment(const std::string& out_dir, std::ostream& out);

std::vector<int> parse_n_list(const std::string& text); // "64,128" or "dyadic:64..4096"

} // namespace meander
