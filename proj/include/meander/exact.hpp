#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meander/increments.hpp"

namespace meander {

struct MeanderOptions {
    int max_horizon = 8192;                    // HorizonTooLarge beyond this
    std::size_t memory_cap_bytes = std::size_t(2) << 30;
};

// Dense table of b_k(x) = P(S_k = x, tau > k) for x >= 1, where
// tau = inf{n >= 1 : S_n <= 0}. Rows start at x = 1; the upper edge is
// trimmed once entries fall below eps_trunc, with the dropped mass accounted
// in trunc_mass. Immutable after build.
class MeanderTable {
public:
    int n_max() const { return int(rows_.size()); }
    double sigma() const { return sigma_; }
    const IncrementLaw& law() const { return law_; }

    // b_k(x); zero outside the stored window.
    double b(int k, int x) const {
        const auto& r = rows_[std::size_t(k - 1)];
        return (x >= 1 && x <= int(r.size())) ? r[std::size_t(x - 1)] : 0.0;
    }
    int width(int k) const { return int(rows_[std::size_t(k - 1)].size()); }
    std::span<const double> row(int k) const { return rows_[std::size_t(k - 1)]; }

    double survival(int k) const { return survival_[std::size_t(k)]; } // P(tau > k), k in [0, n_max]
    double trunc_mass() const { return trunc_total_; }
    double trunc_mass_upto(int k) const { return trunc_cum_[std::size_t(k)]; }

    // P(S_k >= x, tau > k).
    double tail(int k, int x) const;

private:
    friend MeanderTable build_meander(const IncrementLaw&, int, double, const MeanderOptions&);
    IncrementLaw law_;
    double sigma_ = 0.0;
    double eps_trunc_ = 0.0;
    std::vector<std::vector<double>> rows_; // rows_[k-1][x-1] = b_k(x)
    std::vector<double> survival_;          // index k = 0..n_max
    std::vector<double> trunc_cum_;         // dropped mass up to and including step k
    double trunc_total_ = 0.0;
};

MeanderTable build_meander(const IncrementLaw& law, int n_max, double eps_trunc = 0.0,
                           const MeanderOptions& opts = {});

// Closed form for the +-1 walk: P(S_n >= x, tau > n) = P(S_{n-1} in {x-1, x}) / 2.
// x = 0 is treated as x = 1 (on {tau > n} the walk sits at integers >= 1).
double simple_walk_tail(std::int64_t n, std::int64_t x);

// First-passage law of tau with per-step deficit distributions.
struct TauSummary {
    std::vector<double> p_tau; // P(tau = k), k = 1..n_max at index k-1
    std::vector<double> m1;    // E[-S_tau; tau = k]
    std::vector<double> m2;    // E[S_tau^2; tau = k]
    // deficits[k-1][d] = P(tau = k, S_tau = -d), d = 0..max_deficit
    std::vector<std::vector<double>> deficits;
    int max_deficit = 0;

    // E|S_tau| bracket: the true value lies in [es_tau_abs, es_tau_abs + es_tau_tail].
    // The tail width comes from the k^{-3/2} decay of E[-S_tau; tau = k].
    double es_tau_abs = 0.0;
    double es_tau_tail = 0.0;
    bool tail_flagged = false; // sum p_tau < 1 - 1e-9 at n_max
    double es_tau_sq = 0.0;
    double es_tau_sq_tail = 0.0;

    int n_max() const { return int(p_tau.size()); }
    double survival(int n) const; // P(tau > n) = 1 - sum_{k<=n} p_tau(k)
};

TauSummary tau_summary(const MeanderTable& table, const IncrementLaw& law);

// Unconditioned law of S_m for m = 0..n_max, by plain convolution.
class WalkPmf {
public:
    WalkPmf(const IncrementLaw& law, int n_max);
    int n_max() const { return int(rows_.size()) - 1; }
    double pmf(int m, long long x) const {
        const auto& r = rows_[std::size_t(m)];
        long long i = x - offsets_[std::size_t(m)];
        return (i >= 0 && i < (long long)r.size()) ? r[std::size_t(i)] : 0.0;
    }
    // P(S_m <= x)
    double cdf(int m, long long x) const;
    // P(S_m in [a, b)) on the lattice
    double interval(int m, long long a, long long b) const;
    double mean_positive_part(int m) const; // E[S_m^+]
    long long offset(int m) const { return offsets_[std::size_t(m)]; }
    std::span<const double> row(int m) const { return rows_[std::size_t(m)]; }

private:
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<double>> cdfs_; // prefix sums per row
    std::vector<long long> offsets_;
};

// Max residual of the reflection representation for symmetric laws:
// P(S_n >= x, tau > n) =
//   sum_{k<n} sum_y P(S_k = -y, tau = k) P(S_{n-k} in [x-y, x+y)) + P(S_n <= -x, tau = n).
double verify_representation(const MeanderTable& table, const TauSummary& tau,
                             const IncrementLaw& law, int n);

// P(S_n / (sigma sqrt n) >= x | tau > n) for real x.
double conditioned_tail(const MeanderTable& table, int n, double x);

} // namespace meander
