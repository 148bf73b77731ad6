#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meander/increments.hpp"
#include "meander/ladder.hpp"

namespace meander {

// SplitMix64. Each path gets its own substream derived from (seed, path
// index), so results are independent of scheduling and merge order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double next_double() { return double(next() >> 11) * 0x1.0p-53; } // [0, 1)
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
        g.next();
        return g.next();
    }

private:
    std::uint64_t state_;
};

struct McConfig {
    std::uint64_t seed = 0;
    int n = 1;
    std::int64_t paths = 1;
    enum class Mode { rejection, htransform } mode = Mode::rejection;
    std::string law_id;
    std::int64_t draw_budget = 1'000'000'000; // total increment draws (rejection mode)
};

struct McResult {
    std::vector<double> ecdf; // sorted endpoints S_n / (sigma sqrt n)
    double acceptance_rate = 1.0;
    double dkw_epsilon = 0.0; // 99% DKW band
    std::int64_t trials = 0;
    bool grid_extended = false; // h-transform stepped past the V grid
    McConfig config;
};

double dkw_epsilon(std::int64_t paths, double confidence = 0.99);

// Rejection sampler on {tau > n}: i.i.d. paths, kept iff min_k S_k > 0.
McResult sample_conditioned(const McConfig& config, const IncrementLaw& law);

// Markov chain with kernel P(x -> x+j) proportional to p(j) V(x+j) 1{x+j > 0},
// started at the smallest positive lattice point. Beyond the V grid the
// renewal function is continued linearly (flagged in the result).
McResult sample_htransform(const McConfig& config, const IncrementLaw& law,
                           const LadderData& ladder);

// Transition probabilities of the h-transform chain at state x, indexed like
// law.atoms(). Exposed for inspection and tests.
std::vector<double> htransform_step_probs(const IncrementLaw& law, const LadderData& ladder,
                                          long long x);

// sup_x |F_hat(x) - F(x)| against a continuous CDF.
double ecdf_sup_distance(const std::vector<double>& ecdf,
                         const std::function<double(double)>& cdf);

// Same statistic against a discrete CDF given by atoms and their cumulative
// probabilities; both one-sided limits at every atom are inspected.
double ecdf_sup_distance_discrete(const std::vector<double>& ecdf,
                                  const std::vector<double>& atom_x,
                                  const std::vector<double>& atom_cdf);

} // namespace meander
