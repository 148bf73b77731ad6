#include "meander/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - cos u) / u^2, stable through u = 0 via 2 sin^2(u/2).
double one_minus_cos_over_u2(double u) {
    if (std::abs(u) < 1e-8) return 0.5 - u * u / 24.0;
    double s = std::sin(0.5 * u);
    return 2.0 * s * s / (u * u);
}

// int_a^inf cos(u) u^{-4} du by repeated integration by parts; the truncated
// remainder is O(a^{-9}), negligible for the a >= 50 this is used with.
double cos_tail_integral_u4(double a) {
    const double s = std::sin(a), c = std::cos(a);
    double i8 = -s / std::pow(a, 8);
    double s7 = c / std::pow(a, 7) - 7.0 * i8;
    double i6 = -s / std::pow(a, 6) + 6.0 * s7;
    double s5 = c / std::pow(a, 5) - 5.0 * i6;
    return -s / std::pow(a, 4) + 4.0 * s5;
}

double tail_J(double a) {
    // int_a^inf (1-cos u)^2 u^{-4} du with (1-cos)^2 = 3/2 - 2 cos u + cos(2u)/2.
    return 0.5 / (a * a * a) - 2.0 * cos_tail_integral_u4(a) + 4.0 * cos_tail_integral_u4(2.0 * a);
}

} // namespace

double SmoothingKernel::density(double x) const {
    double r = one_minus_cos_over_u2(a_ * x);
    return (3.0 * a_ / kPi) * r * r;
}

double SmoothingKernel::cf(double t) const {
    double u = std::abs(t) / a_;
    if (u >= 2.0) return 0.0;
    if (u <= 1.0) return 1.0 - 1.5 * u * u + 0.75 * u * u * u;
    double w = 2.0 - u;
    return 0.25 * w * w * w;
}

double SmoothingKernel::tail_mass(double x) const { return (3.0 / kPi) * tail_J(a_ * x); }

double SmoothingKernel::cdf(double x) const {
    double ax = std::abs(x);
    double half;
    if (ax >= x_table_) {
        half = 0.5 - tail_mass(ax);
    } else {
        std::size_t idx = std::size_t(ax / dx_);
        if (idx >= half_cdf_.size()) idx = half_cdf_.size() - 1;
        double base = half_cdf_[idx];
        double lo = double(idx) * dx_;
        half = base + GaussLegendre::order16().integrate(
                          [this](double v) { return density(v); }, lo, ax);
    }
    return x >= 0.0 ? 0.5 + half : 0.5 - half;
}

SmoothingKernel kernel_from(const MomentSummary& summary) {
    SmoothingKernel k;
    k.a_ = summary.smoothing_A;
    k.eu_ = summary.eu_abs;
    k.x_table_ = 100.0 / k.a_;
    const int cells = 4096;
    k.dx_ = k.x_table_ / cells;
    k.half_cdf_.assign(cells + 1, 0.0);
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) {
        acc += GaussLegendre::order16().integrate([&k](double v) { return k.density(v); },
                                                  i * k.dx_, (i + 1) * k.dx_);
        k.half_cdf_[std::size_t(i) + 1] = acc;
    }
    return k;
}

LatticeCf::LatticeCf(const IncrementLaw& law) {
    sigma_ = moments(law).sigma();
    for (auto [x, p] : law.atoms()) atoms_.emplace_back(double(x) / sigma_, p);
}

std::complex<double> LatticeCf::operator()(double t) const {
    double re = 0.0, im = 0.0;
    for (auto [x, p] : atoms_) {
        re += p * std::cos(t * x);
        im += p * std::sin(t * x);
    }
    return {re, im};
}

std::complex<double> LatticeCf::pow_n(double t, int n) const {
    std::complex<double> phi = (*this)(t);
    double r = std::abs(phi);
    if (r == 0.0) return {0.0, 0.0};
    double theta = std::arg(phi);
    double rn = std::pow(r, n);
    return {rn * std::cos(n * theta), rn * std::sin(n * theta)};
}

namespace {

double invert_adaptive(const std::function<double(double)>& integrand, double hi, double osc,
                       const char* what) {
    int panels = 8 + int(osc / kPi);
    QuadratureResult q = integrate_adaptive(integrand, 0.0, hi, 1e-11, panels, 9);
    if (!q.converged && q.est_error > 1e-10)
        throw QuadratureError(std::string(what) + ": quadrature error estimate " +
                              format_g17(q.est_error));
    return q.value;
}

} // namespace

double smoothed_density_at(const LatticeCf& cf, const SmoothingKernel& kernel, int n, double z) {
    const double hi = 2.0 * kernel.bandwidth();
    auto integrand = [&](double t) {
        std::complex<double> pn = cf.pow_n(t, n);
        return kernel.cf(t) * (std::cos(t * z) * pn.real() + std::sin(t * z) * pn.imag());
    };
    return invert_adaptive(integrand, hi, hi * std::abs(z), "smoothed_density_at") / kPi;
}

double smoothed_density_error(const LatticeCf& cf, const SmoothingKernel& kernel, int n,
                              const std::vector<double>& z_grid) {
    std::vector<double> devs(z_grid.size());
    parallel_for(z_grid.size(), [&](std::size_t i) {
        double z = z_grid[i];
        double gauss = std::exp(-z * z / (2.0 * n)) / std::sqrt(2.0 * kPi * n);
        devs[i] = std::abs(smoothed_density_at(cf, kernel, n, z) - gauss);
    });
    return *std::max_element(devs.begin(), devs.end());
}

QnEvaluator::QnEvaluator(const IncrementLaw& law, const SmoothingKernel& kernel, int n)
    : cf_(law), kernel_(&kernel), n_(n) {
    if (n < 1) throw std::invalid_argument("QnEvaluator: n must be >= 1");
}

double QnEvaluator::operator()(double x) const {
    const double hi = 2.0 * kernel_->bandwidth();
    auto integrand = [&](double t) {
        // [phi^n(t) - phi^n(-t)] / (i t) = 2 Im(phi^n(t)) / t; the t -> 0
        // limit is 2 n Im phi'(0) = 0 for zero-mean laws.
        double im = cf_.pow_n(t, n_).imag();
        return std::cos(t * x) * kernel_->cf(t) * 2.0 * im / t;
    };
    return invert_adaptive(integrand, hi, hi * std::abs(x), "qn") / kPi;
}

double qn_direct(const WalkPmf& walk, double sigma, const SmoothingKernel& kernel, int n,
                 double x) {
    const auto row = walk.row(n);
    const long long off = walk.offset(n);
    std::vector<double> terms;
    terms.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0.0) continue;
        double zh = double(off + (long long)i) / sigma;
        terms.push_back(row[i] * (kernel.survival(x - zh) - kernel.cdf(-x - zh)));
    }
    return pairwise_sum(terms);
}

AuditCheck qn_diff_bound_check(const IncrementLaw& law, const MomentSummary& summary,
                               const SmoothingKernel& kernel, const std::vector<int>& n_set) {
    AuditCheck c{.id = "qn.diff"};
    c.range = "n=" + std::to_string(n_set.front()) + ".." + std::to_string(n_set.back());
    const LatticeCf cf(law);
    const double hi = 2.0 * kernel.bandwidth();
    double worst = std::numeric_limits<double>::infinity();
    for (int n : n_set) {
        const double bound =
            109.0 * std::sqrt(3.0 / kPi) * summary.lyapunov / std::pow(double(n), 1.5);
        const int grid = 1024;
        const double x_hi = 8.0 * std::sqrt(double(n + 1));
        std::vector<double> devs(grid);
        parallel_for(grid, [&](std::size_t i) {
            double x = x_hi * double(i) / double(grid - 1);
            auto integrand = [&](double t) {
                double im = cf.pow_n(t, n + 1).imag() - cf.pow_n(t, n).imag();
                return std::cos(t * x) * kernel.cf(t) * 2.0 * im / t;
            };
            devs[i] = std::abs(invert_adaptive(integrand, hi, hi * x, "qn_diff") / kPi);
        });
        worst = std::min(worst, bound - *std::max_element(devs.begin(), devs.end()));
    }
    c.margin = worst;
    c.pass = worst >= 0.0;
    return c;
}

std::vector<AuditCheck> phi_bounds_check(const IncrementLaw& law, const MomentSummary& summary,
                                         const std::vector<int>& n_set) {
    const LatticeCf cf(law);
    double worst1 = std::numeric_limits<double>::infinity();
    double worst2 = worst1;
    for (int n : n_set) {
        const double ln = summary.lyapunov / std::sqrt(double(n));
        const double t_hi = 1.0 / (4.0 * ln);
        const int grid = 10000;
        for (int i = 1; i <= grid; ++i) {
            double t = t_hi * double(i) / double(grid);
            std::complex<double> pn = cf.pow_n(t / std::sqrt(double(n)), n);
            double mod = std::abs(pn);
            double env = std::exp(-t * t / 3.0);
            worst1 = std::min(worst1, env - mod);
            double diff = std::abs(pn - std::complex<double>(std::exp(-t * t / 2.0), 0.0));
            worst2 = std::min(worst2, 16.0 * ln * t * t * t * env - diff);
        }
    }
    std::string range = "n=" + std::to_string(n_set.front()) + ".." + std::to_string(n_set.back()) +
                        " t-grid 1e4";
    AuditCheck c1{.id = "phi1", .range = range, .margin = worst1, .pass = worst1 >= 0.0};
    AuditCheck c2{.id = "phi2", .range = range, .margin = worst2, .pass = worst2 >= 0.0};
    return {c1, c2};
}

AuditCheck smoothing_loss_bound_check(const MeanderTable& table, const MomentSummary& summary,
                                      const SmoothingKernel& kernel, int n) {
    AuditCheck c{.id = "smooth.loss", .range = "n=" + std::to_string(n)};
    const double sigma = table.sigma();
    const auto row = table.row(n);
    const int W = int(row.size());

    std::vector<double> tail(std::size_t(W) + 2, 0.0);
    for (int z = W; z >= 1; --z)
        tail[std::size_t(z)] = tail[std::size_t(z) + 1] + row[std::size_t(z - 1)];

    // P(S_n + U >= x, tau > n) at normalized x, by convolving the exact row
    // with the kernel's survival function.
    auto smoothed = [&](double x) {
        std::vector<double> terms;
        terms.reserve(row.size());
        for (int z = 1; z <= W; ++z)
            if (row[std::size_t(z - 1)] != 0.0)
                terms.push_back(row[std::size_t(z - 1)] * kernel.survival(x - double(z) / sigma));
        return pairwise_sum(terms);
    };

    // Between atoms the exact side is flat and the smoothed side monotone, so
    // the supremum over x >= 0 is attained at an atom, approached from either side.
    double dev = std::abs(tail[1] - smoothed(0.0));
    for (int z = 1; z <= W; ++z) {
        double sm = smoothed(double(z) / sigma);
        dev = std::max(dev, std::abs(tail[std::size_t(z)] - sm));
        dev = std::max(dev, std::abs(tail[std::size_t(z) + 1] - sm));
    }

    double bound = 2.0 * gamma1(kernel.eu_abs(), summary) / std::sqrt(double(n)) *
                   table.survival(n / 2);
    c.margin = bound - dev;
    c.pass = c.margin >= 0.0;
    return c;
}

AuditReport smoothing_audits(const IncrementLaw& law, const MomentSummary& summary,
                             const MeanderTable& table, const std::vector<int>& n_set) {
    AuditReport report;
    SmoothingKernel kernel = kernel_from(summary);
    LatticeCf cf(law);

    std::vector<int> big;
    for (int n : n_set)
        if (n >= 16) big.push_back(n);
    if (!big.empty()) {
        AuditCheck c{.id = "smooth.dens"};
        double worst = std::numeric_limits<double>::infinity();
        const double c2 = 72.0 / kPi +
                          (48.0 * std::numbers::ln2 / kPi) / std::sqrt(2.0 * kPi * std::numbers::e);
        for (int n : big) {
            std::vector<double> grid;
            const int pts = 2048;
            for (int i = 0; i < pts; ++i)
                grid.push_back(-8.0 * std::sqrt(double(n)) +
                               16.0 * std::sqrt(double(n)) * double(i) / double(pts - 1));
            double dev = smoothed_density_error(cf, kernel, n, grid);
            worst = std::min(worst, c2 * summary.lyapunov / double(n) - dev);
        }
        c.range = "n=" + std::to_string(big.front()) + ".." + std::to_string(big.back());
        c.margin = worst;
        c.pass = worst >= 0.0;
        report.push_back(c);
    }

    report.push_back(qn_diff_bound_check(law, summary, kernel, n_set));
    for (auto& c : phi_bounds_check(law, summary, n_set)) report.push_back(c);

    for (int n : {4, 64}) {
        if (n <= table.n_max()) report.push_back(smoothing_loss_bound_check(table, summary, kernel, n));
    }
    return report;
}

} // namespace meander
