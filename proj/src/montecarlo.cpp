#include "meander/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

namespace {

struct Sampler {
    std::vector<int> offsets;
    std::vector<double> cum; // cumulative probabilities
    explicit Sampler(const IncrementLaw& law) {
        double acc = 0.0;
        for (auto [x, p] : law.atoms()) {
            offsets.push_back(x);
            acc += p;
            cum.push_back(acc);
        }
        cum.back() = 1.0;
    }
    int draw(SplitMix64& rng) const {
        double u = rng.next_double();
        for (std::size_t i = 0; i < cum.size(); ++i)
            if (u < cum[i]) return offsets[i];
        return offsets.back();
    }
};

void validate(const McConfig& config) {
    if (config.paths < 1) throw std::invalid_argument("mc: paths must be >= 1");
    if (config.n < 1) throw std::invalid_argument("mc: n must be >= 1");
}

} // namespace

double dkw_epsilon(std::int64_t paths, double confidence) {
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * double(paths)));
}

McResult sample_conditioned(const McConfig& config, const IncrementLaw& law) {
    validate(config);
    const Sampler sampler(law);
    const double scale = moments(law).sigma() * std::sqrt(double(config.n));

    McResult result;
    result.config = config;
    result.dkw_epsilon = dkw_epsilon(config.paths);
    result.ecdf.reserve(std::size_t(config.paths));

    struct Outcome {
        bool accepted;
        std::int64_t steps;
        long long endpoint;
    };
    // Trials are processed in deterministic chunks: the draw budget and the
    // set of accepted paths depend only on (seed, trial index), never on the
    // thread count.
    const std::int64_t chunk = std::max<std::int64_t>(1024, config.paths);
    std::int64_t trial_base = 0;
    std::int64_t accepted = 0;
    std::int64_t draws = 0;
    while (accepted < config.paths) {
        std::vector<Outcome> outcomes;
        outcomes.resize(std::size_t(chunk));
        parallel_for(std::size_t(chunk), [&](std::size_t i) {
            SplitMix64 rng(SplitMix64::mix(config.seed, std::uint64_t(trial_base + (std::int64_t)i)));
            long long s = 0;
            std::int64_t steps = 0;
            bool alive = true;
            for (int k = 0; k < config.n; ++k) {
                s += sampler.draw(rng);
                ++steps;
                if (s <= 0) {
                    alive = false;
                    break;
                }
            }
            outcomes[i] = {alive, steps, s};
        });
        for (const auto& o : outcomes) {
            draws += o.steps;
            if (draws > config.draw_budget)
                throw BudgetExceededError("sample_conditioned: draw budget exhausted after " +
                                          std::to_string(trial_base) + " trials");
            ++trial_base;
            if (o.accepted) {
                result.ecdf.push_back(double(o.endpoint) / scale);
                if (++accepted == config.paths) break;
            }
        }
    }
    result.trials = trial_base;
    result.acceptance_rate = double(config.paths) / double(result.trials);
    std::sort(result.ecdf.begin(), result.ecdf.end());
    return result;
}

std::vector<double> htransform_step_probs(const IncrementLaw& law, const LadderData& ladder,
                                          long long x) {
    const auto pts = law.atoms();
    auto v_at = [&ladder](long long y) -> double {
        if (y <= 0) return 0.0;
        if (y <= ladder.x_max) return ladder.V[std::size_t(y)];
        // Linear continuation with the slope over the last decade of the grid.
        long long lo = std::max<long long>(1, ladder.x_max - ladder.x_max / 10);
        double slope = (ladder.V[std::size_t(ladder.x_max)] - ladder.V[std::size_t(lo)]) /
                       double(ladder.x_max - lo);
        return ladder.V[std::size_t(ladder.x_max)] + slope * double(y - ladder.x_max);
    };
    const double vx = v_at(x);
    if (!(vx > 0.0)) throw GridInsufficientError("htransform: V(x) not positive at state " +
                                                 std::to_string(x));
    std::vector<double> w(pts.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [j, p] = pts[i];
        if (x + j > 0) w[i] = p * v_at(x + j) / vx;
        total += w[i];
    }
    if (x + law.max_support() <= ladder.x_max && std::abs(total - 1.0) > 1e-8)
        throw GridInsufficientError("htransform: kernel row off by " + format_g17(total - 1.0) +
                                    " at state " + std::to_string(x));
    for (double& v : w) v /= total; // redistribute the residual proportionally
    return w;
}

McResult sample_htransform(const McConfig& config, const IncrementLaw& law,
                           const LadderData& ladder) {
    validate(config);
    const auto pts = law.atoms();
    const double scale = moments(law).sigma() * std::sqrt(double(config.n));

    McResult result;
    result.config = config;
    result.dkw_epsilon = dkw_epsilon(config.paths);
    result.ecdf.assign(std::size_t(config.paths), 0.0);
    result.trials = config.paths;

    // Transition rows depend only on the current state; cache them for the
    // states inside the grid and fall back to the linear continuation beyond.
    const long long cached = ladder.x_max;
    std::vector<std::vector<double>> rows(std::size_t(cached) + 1);
    for (long long x = 1; x <= cached - law.max_support(); ++x)
        rows[std::size_t(x)] = htransform_step_probs(law, ladder, x);

    std::atomic<bool> extended{false};
    parallel_for(std::size_t(config.paths), [&](std::size_t i) {
        SplitMix64 rng(SplitMix64::mix(config.seed, std::uint64_t(i)));
        long long x = 1; // smallest positive lattice point
        for (int k = 0; k < config.n; ++k) {
            const std::vector<double>* row;
            std::vector<double> local;
            if (x <= cached - law.max_support() && x >= 1) {
                row = &rows[std::size_t(x)];
            } else {
                local = htransform_step_probs(law, ladder, x);
                extended = true;
                row = &local;
            }
            double u = rng.next_double();
            double acc = 0.0;
            int j = pts.back().first;
            for (std::size_t a = 0; a < row->size(); ++a) {
                acc += (*row)[a];
                if (u < acc) {
                    j = pts[a].first;
                    break;
                }
            }
            x += j;
        }
        result.ecdf[i] = double(x) / scale;
    });
    result.grid_extended = extended;
    std::sort(result.ecdf.begin(), result.ecdf.end());
    return result;
}

double ecdf_sup_distance(const std::vector<double>& ecdf,
                         const std::function<double(double)>& cdf) {
    const double m = double(ecdf.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < ecdf.size(); ++i) {
        double f = cdf(ecdf[i]);
        sup = std::max(sup, std::abs(double(i + 1) / m - f));
        sup = std::max(sup, std::abs(double(i) / m - f));
    }
    return sup;
}

double ecdf_sup_distance_discrete(const std::vector<double>& ecdf,
                                  const std::vector<double>& atom_x,
                                  const std::vector<double>& atom_cdf) {
    const double m = double(ecdf.size());
    double sup = 0.0;
    double prev_f = 0.0;
    for (std::size_t a = 0; a < atom_x.size(); ++a) {
        // Empirical CDF just below and at the atom.
        std::size_t below = std::size_t(std::lower_bound(ecdf.begin(), ecdf.end(),
                                                         atom_x[a] - 1e-12) -
                                        ecdf.begin());
        std::size_t at = std::size_t(std::upper_bound(ecdf.begin(), ecdf.end(),
                                                      atom_x[a] + 1e-12) -
                                     ecdf.begin());
        sup = std::max(sup, std::abs(double(below) / m - prev_f));
        sup = std::max(sup, std::abs(double(at) / m - atom_cdf[a]));
        prev_f = atom_cdf[a];
    }
    return sup;
}

} // namespace meander
