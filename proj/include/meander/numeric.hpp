#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace meander {

// Pairwise (tree) summation. Keeps rounding error at O(log n) ulps, which the
// 1e-12 tolerances on long meander rows rely on.
double pairwise_sum(std::span<const double> xs);

// Standard normal distribution function via erfc; relative error <= 1e-15.
double normal_cdf(double x);
double normal_pdf(double x);

// log C(n, k) through lgamma, stable for n up to millions.
double log_binomial(std::int64_t n, std::int64_t k);

// Nodes and weights of an N-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int order);
    static const GaussLegendre& order16();
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }
};

// Integrates f over [a, b] with `panels` equal 16-point panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels);

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = false;
};

// Panel doubling until two successive refinements differ by less than tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int initial_panels = 4, int max_doublings = 10);

// Runs fn(i) for i in [0, count). Parallel when count is large enough; the
// thread count is capped by the MEANDER_THREADS environment variable.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);
int max_threads();

// Fixed-format float rendering (17 significant digits, C locale) used for all
// CSV output so that reruns are byte-identical.
std::string format_g17(double v);

} // namespace meander
