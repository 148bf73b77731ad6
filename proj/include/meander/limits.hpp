#pragma once

#include <utility>
#include <vector>

#include "meander/audit.hpp"
#include "meander/exact.hpp"
#include "meander/ladder.hpp"

namespace meander {

// Limiting conditional tail: e^{-x^2/2}.
double rayleigh_tail(double x);

// sup_x |P(S_n/(sigma sqrt n) >= x | tau > n) - e^{-x^2/2}|. The exact tail is
// a step function, so the supremum is attained at a lattice jump; both sides
// of every jump are inspected.
double be_error(const MeanderTable& table, int n);

// |P(tau > n) / (sqrt(2/pi) es n^{-1/2}) - 1|, es = E|S_tau| of the
// sigma-normalized walk.
double tau_tail_error(const TauSummary& tau, double es_tau_abs, int n);

struct RateFit {
    double slope = 0.0;
    double c_hat = 0.0;               // Delta_n ~ c_hat * n^slope
    std::vector<double> residuals;    // per-point ln-space residuals
};

// Least squares on (ln n, ln Delta_n). Needs >= 4 points with Delta > 0.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// Classical Berry-Esseen audit: returns bound - sup_x |P(S_n <= sigma x sqrt n) - Phi(x)|
// with the bound 0.4785 * lyapunov / sqrt(n). The sup is exact (full convolution).
double classical_be_check(const IncrementLaw& law, int n);
double classical_be_sup(const WalkPmf& walk, double sigma, int n);

// CDF of the h-transformed limit: int_0^x sqrt(2/pi) y^2 e^{-y^2/2} dy,
// in closed form via Phi.
double h_transform_target(double x);

struct ErrorCurve {
    std::vector<std::pair<int, double>> points; // (n, Delta_n), sorted by n
    double slope = 0.0;
    double c_hat = 0.0;
    std::vector<double> normalized; // Delta_n sqrt(n) sigma^9 / (E|X|^3)^3
    std::vector<double> residuals;
};

ErrorCurve error_curve(const MeanderTable& table, const MomentSummary& summary,
                       const std::vector<int>& ns);

// The named inequality audits that only need exact-engine artifacts:
// eq.tau, eq.tau1, eq.tau2, estau2.C, stau.C1, tau_eq_n.C, conc_tau.C0,
// cont_of_normal, be.classical.
AuditReport audit_inequalities(const IncrementLaw& law, const MeanderTable& table,
                               const TauSummary& tau, const LadderData& ladder,
                               const std::vector<int>& n_set);

} // namespace meander
