#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meander/errors.hpp"
#include "meander/experiment.hpp"

using namespace meander;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("meander_test_" + tag);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("n list parsing") {
    CHECK(parse_n_list("64,128, 256") == std::vector<int>{64, 128, 256});
    CHECK(parse_n_list("dyadic:16..64") == std::vector<int>{16, 32, 64});
    CHECK_THROWS_AS(parse_n_list("dyadic:64"), ConfigError);
    CHECK_THROWS_AS(parse_n_list("8,-2"), ConfigError);
    CHECK_THROWS_AS(parse_n_list("abc"), std::exception);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.out_dir = "/tmp/meander_cfg_check";
    cfg.modes = {"exact"};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError); // empty n list
    cfg.n_list = {16, 8};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError); // unsorted
    cfg.n_list = {8, 16};
    cfg.modes = {"bogus"};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    cfg.modes = {};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    cfg.modes = {"exact"};
    validate_config(cfg);
    CHECK_THROWS_AS(apply_config_value(cfg, "nonsense", "1"), ConfigError);
}

TEST_CASE("config file round trip") {
    fs::path p = fs::temp_directory_path() / "meander_test_config.txt";
    {
        std::ofstream out(p);
        out << "# comment\nlaw = builtin:simple,builtin:lazy\nn = dyadic:8..32\n"
            << "modes = exact,rate\nout = /tmp/meander_out\nseed = 7\npaths = 123\n";
    }
    ExperimentConfig cfg = parse_config_file(p.string());
    CHECK(cfg.laws.size() == 2);
    CHECK(cfg.n_list == std::vector<int>{8, 16, 32});
    CHECK(cfg.modes == std::vector<std::string>{"exact", "rate"});
    CHECK(cfg.mc.seed == 7);
    CHECK(cfg.mc.paths == 123);
    fs::remove(p);
}

TEST_CASE("run writes deterministic artifacts") {
    ExperimentConfig cfg;
    cfg.laws = {"builtin:simple", "builtin:skew3"};
    cfg.n_list = parse_n_list("dyadic:8..64");
    cfg.modes = {"exact", "rate", "mc"};
    cfg.mc.seed = 11;
    cfg.mc.paths = 500;
    fs::path dir = temp_dir("run");
    cfg.out_dir = dir.string();
    run_experiment(cfg);
    CHECK(fs::exists(dir / "tau.csv"));
    CHECK(fs::exists(dir / "curves.csv"));
    CHECK(fs::exists(dir / "mc.csv"));
    CHECK(fs::exists(dir / "delta_vs_n.svg"));
    CHECK(fs::exists(dir / "tau_ratio.svg"));

    std::string curves = slurp(dir / "curves.csv");
    std::string tau = slurp(dir / "tau.csv");
    std::string mc = slurp(dir / "mc.csv");
    run_experiment(cfg); // identical config overwrites byte-identically
    CHECK(slurp(dir / "curves.csv") == curves);
    CHECK(slurp(dir / "tau.csv") == tau);
    CHECK(slurp(dir / "mc.csv") == mc);

    std::ostringstream report;
    report_experiment(cfg.out_dir, report);
    std::string text = report.str();
    CHECK(text.find("law simple") != std::string::npos);
    CHECK(text.find("law skew3") != std::string::npos);
    CHECK(text.find("rate slope") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("missing artifacts") {
    fs::path dir = temp_dir("empty");
    fs::create_directories(dir);
    std::ostringstream out;
    CHECK_THROWS_AS(report_experiment(dir.string(), out), MissingArtifactsError);
    fs::remove_all(dir);
}
