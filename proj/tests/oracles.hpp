#pragma once

// Test-only oracles, kept independent of the library's computation paths.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "meander/increments.hpp"
#include "meander/numeric.hpp"

namespace oracles {

// Full path enumeration of the killed walk: visits every prefix of every
// path of length n once and accumulates P(S_k = x, tau > k) for all k <= n.
struct BruteTable {
    // level k (1-based) -> position x -> probability
    std::vector<std::map<long long, double>> b;
    double survival(int k) const {
        double s = 0.0;
        for (auto& [x, p] : b[std::size_t(k - 1)]) s += p;
        return s;
    }
};

inline void brute_recurse(const std::vector<std::pair<int, double>>& atoms, int depth, int n,
                          long long s, double prob, BruteTable& out) {
    if (depth == n) return;
    for (auto [x, p] : atoms) {
        long long s2 = s + x;
        double pr = prob * p;
        if (s2 >= 1) {
            out.b[std::size_t(depth)][s2] += pr;
            brute_recurse(atoms, depth + 1, n, s2, pr, out);
        }
    }
}

inline BruteTable brute_meander(const meander::IncrementLaw& law, int n) {
    BruteTable out;
    out.b.resize(std::size_t(n));
    brute_recurse(law.atoms(), 0, n, 0, 1.0, out);
    return out;
}

// Direct first-passage enumeration: records the killing event (k, -S_tau) of
// every path, independently of the meander-table route.
struct BruteTau {
    std::vector<std::map<long long, double>> deficit; // level k -> (-S_tau) -> prob
    double p_tau(int k) const {
        double s = 0.0;
        for (auto& [d, p] : deficit[std::size_t(k - 1)]) s += p;
        return s;
    }
    double m1(int k) const {
        double s = 0.0;
        for (auto& [d, p] : deficit[std::size_t(k - 1)]) s += double(d) * p;
        return s;
    }
};

inline void brute_tau_recurse(const std::vector<std::pair<int, double>>& atoms, int depth, int n,
                              long long s, double prob, BruteTau& out) {
    if (depth == n) return;
    for (auto [x, p] : atoms) {
        long long s2 = s + x;
        double pr = prob * p;
        if (s2 <= 0) out.deficit[std::size_t(depth)][-s2] += pr;
        else brute_tau_recurse(atoms, depth + 1, n, s2, pr, out);
    }
}

inline BruteTau brute_tau(const meander::IncrementLaw& law, int n) {
    BruteTau out;
    out.deficit.resize(std::size_t(n));
    brute_tau_recurse(law.atoms(), 0, n, 0, 1.0, out);
    return out;
}

// Unconditioned law of S_m by enumeration.
inline std::map<long long, double> brute_free_walk(const meander::IncrementLaw& law, int m) {
    std::map<long long, double> cur{{0, 1.0}};
    for (int step = 0; step < m; ++step) {
        std::map<long long, double> next;
        for (auto& [x, p] : cur)
            for (auto [j, q] : law.atoms()) next[x + j] += p * q;
        cur = std::move(next);
    }
    return cur;
}

// Numerical self-convolution of the triangular characteristic function
// (1 - |t|/A)+, normalized to 1 at t = 0.
inline double triangle_self_convolution(double A, double t) {
    auto tri = [A](double s) { return std::max(0.0, 1.0 - std::abs(s) / A); };
    auto f = [&](double s) { return tri(s) * tri(t - s); };
    // The integrand is piecewise quadratic with kinks at these points; panels
    // aligned to the kinks make the quadrature exact.
    std::vector<double> cuts = {-A, 0.0, A, t - A, t, t + A};
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = std::max(cuts[i], -A), hi = std::min(cuts[i + 1], A);
        if (hi > lo) acc += meander::integrate_panels(f, lo, hi, 2);
    }
    return acc / (2.0 * A / 3.0);
}

// Quadrature route for the h-transform limit CDF.
inline double h_target_quadrature(double x) {
    auto dens = [](double y) {
        return std::sqrt(2.0 / 3.141592653589793) * y * y * std::exp(-0.5 * y * y);
    };
    return meander::integrate_adaptive(dens, 0.0, x, 1e-12, 8, 12).value;
}

} // namespace oracles
