#pragma once

#include <complex>
#include <vector>

#include "meander/audit.hpp"
#include "meander/exact.hpp"
#include "meander/increments.hpp"

namespace meander {

// Smoothing variable U with density g_A(x) = (3/(pi A)) ((1-cos(Ax))/(A x^2))^2
// and characteristic function supported on [-2A, 2A] (the normalized
// self-convolution of the triangle (1-|t|/A)+). Everything lives in
// sigma-normalized units; A = 1/(8 E|X|^3) there.
class SmoothingKernel {
public:
    double bandwidth() const { return a_; }
    double eu_abs() const { return eu_; }

    double density(double x) const;  // g_A
    double cf(double t) const;       // ghat_A; exactly zero for |t| > 2A
    double cdf(double x) const;      // P(U <= x)
    double survival(double x) const { return cdf(-x); } // U is symmetric

private:
    friend SmoothingKernel kernel_from(const MomentSummary&);
    double a_ = 0.0;
    double eu_ = 0.0;
    std::vector<double> half_cdf_; // int_0^{i dx} g
    double dx_ = 0.0;
    double x_table_ = 0.0;
    double tail_mass(double x) const; // int_x^inf g, analytic, for x >= x_table_
};

SmoothingKernel kernel_from(const MomentSummary& summary);

// Characteristic function of the sigma-normalized law, with stable polar
// powers phi^n.
class LatticeCf {
public:
    explicit LatticeCf(const IncrementLaw& law);
    std::complex<double> operator()(double t) const;
    std::complex<double> pow_n(double t, int n) const;
    double sigma() const { return sigma_; }

private:
    std::vector<std::pair<double, double>> atoms_; // (x / sigma, p)
    double sigma_ = 0.0;
};

// Density of S_n + U (normalized walk) at z by Fourier inversion over the
// kernel's compact support. Throws QuadratureError when the panel-doubling
// quadrature fails to settle below 1e-10.
double smoothed_density_at(const LatticeCf& cf, const SmoothingKernel& kernel, int n, double z);

// max_z |f_{S_n+U}(z) - e^{-z^2/(2n)}/sqrt(2 pi n)| over the grid.
double smoothed_density_error(const LatticeCf& cf, const SmoothingKernel& kernel, int n,
                              const std::vector<double>& z_grid);

// Q_n(x) = P(S_n + U >= x) - P(S_n + U <= -x) via the inversion formula
// (integrand [phi^n(t) - phi^n(-t)] / (it), removable at t = 0).
class QnEvaluator {
public:
    QnEvaluator(const IncrementLaw& law, const SmoothingKernel& kernel, int n);
    double operator()(double x) const;
    int n() const { return n_; }

private:
    LatticeCf cf_;
    const SmoothingKernel* kernel_;
    int n_;
};

// Same quantity through the direct convolution definition; used as the
// independent route in tests.
double qn_direct(const WalkPmf& walk, double sigma, const SmoothingKernel& kernel, int n,
                 double x);

// |Q_{n+1} - Q_n| <= 109 sqrt(3/pi) E|X|^3 / n^{3/2}, audited over an x-grid.
AuditCheck qn_diff_bound_check(const IncrementLaw& law, const MomentSummary& summary,
                               const SmoothingKernel& kernel, const std::vector<int>& n_set);

// |phi^n(t/sqrt n)| <= e^{-t^2/3} and |phi^n(t/sqrt n) - e^{-t^2/2}| <=
// 16 L_n |t|^3 e^{-t^2/3} for |t| <= 1/(4 L_n), L_n = E|X|^3/sqrt(n).
std::vector<AuditCheck> phi_bounds_check(const IncrementLaw& law, const MomentSummary& summary,
                                         const std::vector<int>& n_set);

// sup_x |P(S_n >= x, tau > n) - P(S_n + U >= x, tau > n)| <=
// 2 gamma1(E|U|)/sqrt(n) P(tau > n/2).
AuditCheck smoothing_loss_bound_check(const MeanderTable& table, const MomentSummary& summary,
                                      const SmoothingKernel& kernel, int n);

// The whole smoothing audit bundle: smooth.dens, qn.diff, phi1, phi2, smooth.loss.
AuditReport smoothing_audits(const IncrementLaw& law, const MomentSummary& summary,
                             const MeanderTable& table, const std::vector<int>& n_set);

} // namespace meander
