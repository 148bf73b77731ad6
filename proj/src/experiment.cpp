#include "meander/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "meander/errors.hpp"
#include "meander/exact.hpp"
#include "meander/ladder.hpp"
#include "meander/limits.hpp"
#include "meander/montecarlo.hpp"
#include "meander/numeric.hpp"
#include "meander/smoothing.hpp"
#include "meander/svg.hpp"

namespace fs = std::filesystem;

namespace meander {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::vector<std::string> kModes = {"exact", "mc", "smoothing", "audit", "rate"};

} // namespace

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::string t = trim(text);
    if (t.rfind("dyadic:", 0) == 0) {
        auto range = split(t.substr(7), '.');
        if (range.size() != 3 || !range[1].empty())
            throw ConfigError("n: expected dyadic:LO..HI, got " + text);
        long lo = std::stol(range[0]), hi = std::stol(range[2]);
        if (lo < 1 || hi < lo) throw ConfigError("n: bad dyadic range " + text);
        for (long n = lo; n <= hi; n *= 2) out.push_back(int(n));
        return out;
    }
    for (const auto& part : split(t, ',')) {
        std::string p = trim(part);
        if (p.empty()) continue;
        std::size_t pos = 0;
        long v = std::stol(p, &pos);
        if (pos != p.size() || v < 1) throw ConfigError("n: bad entry '" + p + "'");
        out.push_back(int(v));
    }
    return out;
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    std::string v = trim(value);
    try {
        if (key == "law" || key == "laws") {
            cfg.laws.clear();
            for (const auto& l : split(v, ','))
                if (!trim(l).empty()) cfg.laws.push_back(trim(l));
        } else if (key == "n") {
            cfg.n_list = parse_n_list(v);
        } else if (key == "modes" || key == "mode") {
            cfg.modes.clear();
            for (const auto& m : split(v, ','))
                if (!trim(m).empty()) cfg.modes.push_back(trim(m));
        } else if (key == "out") {
            cfg.out_dir = v;
        } else if (key == "eps_trunc") {
            cfg.eps_trunc = std::stod(v);
        } else if (key == "seed") {
            cfg.mc.seed = std::stoull(v);
        } else if (key == "paths") {
            cfg.mc.paths = std::stoll(v);
        } else if (key == "mc_mode") {
            cfg.mc.mode = v;
        } else if (key == "budget") {
            cfg.mc.budget = std::stoll(v);
        } else if (key == "dump_table") {
            cfg.dump_table = (v == "1" || v == "true" || v == "yes");
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": '" + v + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.laws.empty()) throw ConfigError("no laws given");
    if (cfg.n_list.empty()) throw ConfigError("empty n list");
    for (int n : cfg.n_list)
        if (n < 1) throw ConfigError("n values must be positive");
    if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()))
        throw ConfigError("n values must be sorted ascending");
    if (cfg.modes.empty()) throw ConfigError("modes must be non-empty");
    for (const auto& m : cfg.modes)
        if (std::find(kModes.begin(), kModes.end(), m) == kModes.end())
            throw ConfigError("unknown mode: " + m);
    if (cfg.out_dir.empty()) throw ConfigError("output directory not set");
    if (!(cfg.eps_trunc >= 0.0 && cfg.eps_trunc <= 1e-9))
        throw ConfigError("eps_trunc must lie in [0, 1e-9]");
    if (cfg.mc.mode != "rejection" && cfg.mc.mode != "htransform")
        throw ConfigError("mc_mode must be rejection or htransform");
    if (cfg.mc.paths < 1) throw ConfigError("paths must be >= 1");
}

namespace {

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const fs::path& p) : out(p, std::ios::binary) {
        if (!out) throw ComputeError("cannot write " + p.string());
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }
};

std::string fmt_bool(bool b) { return b ? "1" : "0"; }

bool has_mode(const ExperimentConfig& cfg, const std::string& m) {
    return std::find(cfg.modes.begin(), cfg.modes.end(), m) != cfg.modes.end();
}

} // namespace

void run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);

    std::vector<fs::path> written;
    auto cleanup = [&written] {
        for (const auto& p : written) {
            std::error_code rm;
            fs::remove(p, rm);
        }
    };

    try {
        const int n_max = cfg.n_list.back();

        struct LawRun {
            IncrementLaw law;
            MomentSummary summary;
            MeanderTable table;
            TauSummary tau;
        };
        std::vector<LawRun> runs;
        for (const auto& spec : cfg.laws) {
            IncrementLaw law = load_law(spec);
            MomentSummary summary = moments(law);
            MeanderTable table = build_meander(law, n_max, cfg.eps_trunc);
            TauSummary tau = tau_summary(table, law);
            runs.push_back({std::move(law), summary, std::move(table), std::move(tau)});
        }

        if (has_mode(cfg, "exact")) {
            CsvWriter tau_csv(dir / "tau.csv");
            written.push_back(dir / "tau.csv");
            tau_csv.row({"law", "k", "survival", "p_tau", "m1", "m2"});
            for (const auto& r : runs)
                for (int k = 1; k <= r.table.n_max(); ++k)
                    tau_csv.row({r.law.id(), std::to_string(k), format_g17(r.table.survival(k)),
                                 format_g17(r.tau.p_tau[std::size_t(k - 1)]),
                                 format_g17(r.tau.m1[std::size_t(k - 1)]),
                                 format_g17(r.tau.m2[std::size_t(k - 1)])});

            std::vector<SvgSeries> series;
            for (const auto& r : runs) {
                LadderData ladder = ladder_data(r.law, 64);
                const double es_hat = ladder.es_tau_abs / r.summary.sigma();
                SvgSeries s{r.law.id(), {}};
                for (int n : cfg.n_list) {
                    double predicted =
                        std::sqrt(2.0 / std::numbers::pi) * es_hat / std::sqrt(double(n));
                    s.points.emplace_back(double(n), r.table.survival(n) / predicted);
                }
                series.push_back(std::move(s));
            }
            std::ofstream svg(dir / "tau_ratio.svg", std::ios::binary);
            written.push_back(dir / "tau_ratio.svg");
            svg << render_ratio_svg("P(tau&gt;n) over sqrt(2/pi) E|S_tau| n^-1/2", "n", "ratio",
                                    series);

            if (cfg.dump_table) {
                CsvWriter tbl(dir / "table.csv");
                written.push_back(dir / "table.csv");
                tbl.row({"law", "k", "x", "b"});
                for (const auto& r : runs)
                    for (int k = 1; k <= r.table.n_max(); ++k)
                        for (int x = 1; x <= r.table.width(k); ++x)
                            if (r.table.b(k, x) > 0.0)
                                tbl.row({r.law.id(), std::to_string(k), std::to_string(x),
                                         format_g17(r.table.b(k, x))});
            }
        }

        if (has_mode(cfg, "rate")) {
            CsvWriter curves(dir / "curves.csv");
            written.push_back(dir / "curves.csv");
            curves.row({"law", "n", "delta_n", "delta_sqrt_n", "normalized", "slope", "c_hat"});
            std::vector<SvgSeries> series;
            for (const auto& r : runs) {
                ErrorCurve curve = error_curve(r.table, r.summary, cfg.n_list);
                SvgSeries s{r.law.id(), {}};
                for (std::size_t i = 0; i < curve.points.size(); ++i) {
                    auto [n, d] = curve.points[i];
                    curves.row({r.law.id(), std::to_string(n), format_g17(d),
                                format_g17(d * std::sqrt(double(n))),
                                format_g17(curve.normalized[i]), format_g17(curve.slope),
                                format_g17(curve.c_hat)});
                    s.points.emplace_back(double(n), d);
                }
                series.push_back(std::move(s));
            }
            std::ofstream svg(dir / "delta_vs_n.svg", std::ios::binary);
            written.push_back(dir / "delta_vs_n.svg");
            svg << render_loglog_svg("Conditioned Berry-Esseen error", "n", "Delta_n", series,
                                     true);
        }

        if (has_mode(cfg, "audit") || has_mode(cfg, "smoothing")) {
            CsvWriter audit(dir / "audit.csv");
            written.push_back(dir / "audit.csv");
            audit.row({"law", "check_id", "range", "margin", "pass", "fitted_c", "cv"});
            for (const auto& r : runs) {
                AuditReport report;
                if (has_mode(cfg, "audit")) {
                    LadderData ladder = ladder_data(r.law, std::max(64, 4 * int(std::sqrt(n_max))));
                    AuditReport lim =
                        audit_inequalities(r.law, r.table, r.tau, ladder, cfg.n_list);
                    report.insert(report.end(), lim.begin(), lim.end());
                }
                std::vector<int> smooth_ns;
                for (int n : cfg.n_list)
                    if (n >= 4 && n <= 512) smooth_ns.push_back(n);
                if (smooth_ns.empty()) {
                    // Quadrature sweeps get slow past n ~ 512; fall back to a
                    // fixed ladder when the configured horizons are all larger.
                    for (int n : {16, 64, 256})
                        if (n <= n_max) smooth_ns.push_back(n);
                }
                if (!smooth_ns.empty()) {
                    AuditReport sm = smoothing_audits(r.law, r.summary, r.table, smooth_ns);
                    report.insert(report.end(), sm.begin(), sm.end());
                }
                for (const auto& c : report)
                    audit.row({r.law.id(), c.id, c.range, format_g17(c.margin), fmt_bool(c.pass),
                               std::isnan(c.fitted_c) ? "" : format_g17(c.fitted_c),
                               std::isnan(c.cv) ? "" : format_g17(c.cv)});
            }
        }

        if (has_mode(cfg, "mc")) {
            CsvWriter mc(dir / "mc.csv");
            written.push_back(dir / "mc.csv");
            mc.out << "# seed = " << cfg.mc.seed << "\n# paths = " << cfg.mc.paths
                   << "\n# mode = " << cfg.mc.mode << "\n# n = " << n_max << "\n";
            mc.row({"law", "endpoint"});
            for (const auto& r : runs) {
                McConfig mcfg;
                mcfg.seed = cfg.mc.seed;
                mcfg.n = n_max;
                mcfg.paths = cfg.mc.paths;
                mcfg.law_id = r.law.id();
                mcfg.draw_budget = cfg.mc.budget;
                McResult res;
                if (cfg.mc.mode == "rejection") {
                    mcfg.mode = McConfig::Mode::rejection;
                    res = sample_conditioned(mcfg, r.law);
                } else {
                    mcfg.mode = McConfig::Mode::htransform;
                    int x_max = std::max(256, int(12.0 * r.summary.sigma() * std::sqrt(double(n_max))));
                    LadderData ladder = ladder_data(r.law, x_max);
                    res = sample_htransform(mcfg, r.law, ladder);
                }
                for (double v : res.ecdf) mc.row({r.law.id(), format_g17(v)});
            }
        }
    } catch (const Error&) {
        cleanup();
        throw;
    } catch (const std::exception& e) {
        cleanup();
        throw ComputeError(e.what());
    }
}

void report_experiment(const std::string& out_dir, std::ostream& out) {
    fs::path dir(out_dir);
    const fs::path curves_path = dir / "curves.csv";
    const fs::path audit_path = dir / "audit.csv";
    if (!fs::exists(curves_path) && !fs::exists(audit_path))
        throw MissingArtifactsError("no artifacts in " + out_dir);

    struct LawSummary {
        double slope = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> normalized;
        int audit_pass = 0, audit_total = 0;
        std::vector<std::string> failing;
    };
    std::map<std::string, LawSummary> laws;

    auto read_csv = [](const fs::path& p) {
        std::vector<std::vector<std::string>> rows;
        std::ifstream in(p);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (header) {
                header = false;
                continue;
            }
            rows.push_back(split(line, ','));
        }
        return rows;
    };

    if (fs::exists(curves_path)) {
        for (const auto& r : read_csv(curves_path)) {
            if (r.size() < 7) continue;
            auto& s = laws[r[0]];
            s.slope = std::stod(r[5]);
            s.normalized.push_back(std::stod(r[4]));
        }
    }
    if (fs::exists(audit_path)) {
        for (const auto& r : read_csv(audit_path)) {
            if (r.size() < 5) continue;
            auto& s = laws[r[0]];
            ++s.audit_total;
            if (r[4] == "1") ++s.audit_pass;
            else s.failing.push_back(r[1]);
        }
    }

    for (const auto& [id, s] : laws) {
        out << "law " << id << "\n";
        if (!std::isnan(s.slope)) out << "  rate slope: " << format_g17(s.slope) << "\n";
        if (!s.normalized.empty()) {
            auto [mn, mx] = std::minmax_element(s.normalized.begin(), s.normalized.end());
            out << "  normalized constant range: [" << format_g17(*mn) << ", " << format_g17(*mx)
                << "]\n";
        }
        if (s.audit_total > 0) {
            out << "  audits: " << s.audit_pass << "/" << s.audit_total << " passed";
            if (!s.failing.empty()) {
                out << " (failing:";
                for (const auto& f : s.failing) out << " " << f;
                out << ")";
            }
            out << "\n";
        }
    }
}

} // namespace meander
