#include "meander/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

double rayleigh_tail(double x) {
    if (x < 0.0) throw std::invalid_argument("rayleigh_tail: x must be >= 0");
    return std::exp(-0.5 * x * x);
}

double be_error(const MeanderTable& table, int n) {
    if (n < 1 || n > table.n_max()) throw std::invalid_argument("be_error: n out of range");
    const double surv = table.survival(n);
    if (!(surv > 0.0)) throw ZeroSurvivalError("be_error: P(tau > n) = 0");
    const auto row = table.row(n);
    const int W = int(row.size());
    std::vector<double> tail(std::size_t(W) + 2, 0.0);
    for (int x = W; x >= 1; --x)
        tail[std::size_t(x)] = tail[std::size_t(x) + 1] + row[std::size_t(x - 1)];
    const double scale = table.sigma() * std::sqrt(double(n));
    double worst = 0.0;
    for (int z = 0; z <= W; ++z) {
        const double ray = rayleigh_tail(double(z) / scale);
        if (z >= 1) worst = std::max(worst, std::abs(tail[std::size_t(z)] / surv - ray));
        worst = std::max(worst, std::abs(tail[std::size_t(z) + 1] / surv - ray));
    }
    return worst;
}

double tau_tail_error(const TauSummary& tau, double es_tau_abs, int n) {
    if (!(es_tau_abs > 0.0)) throw std::invalid_argument("tau_tail_error: E|S_tau| must be > 0");
    if (n < 1 || n > tau.n_max()) throw std::invalid_argument("tau_tail_error: n out of range");
    double predicted = std::sqrt(2.0 / std::numbers::pi) * es_tau_abs / std::sqrt(double(n));
    return std::abs(tau.survival(n) / predicted - 1.0);
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw std::invalid_argument("fit_rate: need at least 4 points");
    std::vector<double> lx, ly;
    for (auto [n, d] : points) {
        if (!(d > 0.0)) throw std::invalid_argument("fit_rate: Delta values must be positive");
        lx.push_back(std::log(n));
        ly.push_back(std::log(d));
    }
    const double m = double(lx.size());
    double sx = pairwise_sum(lx) / m, sy = pairwise_sum(ly) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - sx) * (lx[i] - sx);
        sxy += (lx[i] - sx) * (ly[i] - sy);
    }
    if (!(sxx > 1e-12)) throw DegenerateFitError("fit_rate: zero variance in ln n");
    RateFit fit;
    fit.slope = sxy / sxx;
    double intercept = sy - fit.slope * sx;
    fit.c_hat = std::exp(intercept);
    fit.residuals.reserve(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i)
        fit.residuals.push_back(ly[i] - (intercept + fit.slope * lx[i]));
    return fit;
}

double classical_be_sup(const WalkPmf& walk, double sigma, int n) {
    const auto row = walk.row(n);
    const long long off = walk.offset(n);
    const double scale = sigma * std::sqrt(double(n));
    double sup = 0.0, cdf = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const double phi = normal_cdf(double(off + (long long)i) / scale);
        sup = std::max(sup, std::abs(cdf - phi)); // left limit at the atom
        cdf += row[i];
        sup = std::max(sup, std::abs(cdf - phi)); // value at the atom
    }
    return sup;
}

double classical_be_check(const IncrementLaw& law, int n) {
    if (n < 1) throw std::invalid_argument("classical_be_check: n must be >= 1");
    const MomentSummary s = moments(law);
    WalkPmf walk(law, n);
    double sup = classical_be_sup(walk, s.sigma(), n);
    return 0.4785 * s.lyapunov / std::sqrt(double(n)) - sup;
}

double h_transform_target(double x) {
    if (x < 0.0) throw std::invalid_argument("h_transform_target: x must be >= 0");
    return 2.0 * normal_cdf(x) - 1.0 -
           std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-0.5 * x * x);
}

ErrorCurve error_curve(const MeanderTable& table, const MomentSummary& summary,
                       const std::vector<int>& ns) {
    std::vector<int> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    ErrorCurve curve;
    curve.points.resize(sorted.size());
    parallel_for(sorted.size(), [&](std::size_t i) {
        curve.points[i] = {sorted[i], be_error(table, sorted[i])};
    });
    const double lyap3 = std::pow(summary.lyapunov, 3);
    std::vector<std::pair<double, double>> pts;
    for (auto [n, d] : curve.points) {
        curve.normalized.push_back(d * std::sqrt(double(n)) / lyap3);
        pts.emplace_back(double(n), d);
    }
    if (pts.size() >= 4) {
        RateFit fit = fit_rate(pts);
        curve.slope = fit.slope;
        curve.c_hat = fit.c_hat;
        curve.residuals = fit.residuals;
    }
    return curve;
}

namespace {

struct FitStats {
    double max = 0.0;
    double cv = 0.0;
};

// Max of the ratios plus the coefficient of variation of dyadic-block maxima,
// as a stability measure across the range.
FitStats fit_constant(const std::vector<std::pair<double, double>>& k_ratio) {
    FitStats st;
    std::vector<double> block_max;
    double cur = 0.0;
    double next_edge = 16.0;
    for (auto [k, r] : k_ratio) {
        st.max = std::max(st.max, r);
        if (k >= next_edge) {
            if (cur > 0.0) block_max.push_back(cur);
            cur = 0.0;
            while (k >= next_edge) next_edge *= 2.0;
        }
        cur = std::max(cur, r);
    }
    if (cur > 0.0) block_max.push_back(cur);
    if (block_max.size() >= 2) {
        double mean = pairwise_sum(block_max) / double(block_max.size());
        double var = 0.0;
        for (double b : block_max) var += (b - mean) * (b - mean);
        var /= double(block_max.size());
        if (mean > 0.0) st.cv = std::sqrt(var) / mean;
    }
    return st;
}

std::string range_label(const std::vector<int>& ns) {
    if (ns.empty()) return "n=-";
    return "n=" + std::to_string(ns.front()) + ".." + std::to_string(ns.back());
}

} // namespace

AuditReport audit_inequalities(const IncrementLaw& law, const MeanderTable& table,
                               const TauSummary& tau, const LadderData& ladder,
                               const std::vector<int>& n_set) {
    AuditReport report;
    std::vector<int> ns;
    for (int n : n_set)
        if (n >= 1 && n <= table.n_max()) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    if (ns.empty()) throw std::invalid_argument("audit_inequalities: empty n set");

    const MomentSummary s = moments(law);
    const double sigma = s.sigma();
    const double beta = s.lyapunov;            // E|X|^3 of the normalized walk
    const double es_hat = ladder.es_tau_abs / sigma;
    const double es_sq_hat = ladder.es_tau_sq / s.sigma2;

    const int conv_n = std::min(std::max(256, ns.back()), table.n_max());
    WalkPmf walk(law, conv_n);

    // eq.tau: P(tau > n) <= |E S_tau| / E[S_n^+], both sides exact.
    {
        AuditCheck c{.id = "eq.tau", .range = range_label(ns)};
        double worst = std::numeric_limits<double>::infinity();
        for (int n : ns) {
            double bound = ladder.es_tau_abs / walk.mean_positive_part(n);
            worst = std::min(worst, bound - table.survival(n));
        }
        c.margin = worst;
        c.pass = worst >= 0.0;
        report.push_back(c);
    }

    // eq.tau1: P(tau > n) <= |E S_tau| / (0.341 sqrt n - 0.4785 E|X|^3),
    // normalized units, audited where the denominator is positive.
    {
        AuditCheck c{.id = "eq.tau1"};
        double worst = std::numeric_limits<double>::infinity();
        int first = 0;
        for (int n : ns) {
            double denom = 0.341 * std::sqrt(double(n)) - 0.4785 * beta;
            if (denom <= 0.0) continue;
            if (first == 0) first = n;
            worst = std::min(worst, es_hat / denom - table.survival(n));
        }
        c.range = "n=" + std::to_string(first) + ".." + std::to_string(ns.back());
        c.margin = worst;
        c.pass = worst >= 0.0;
        report.push_back(c);
    }

    // eq.tau2: P(tau > n) <= 6 |E S_tau| / sqrt(n) for n >= 7.33 (E|X|^3)^2.
    {
        AuditCheck c{.id = "eq.tau2"};
        const double n_min = 7.33 * beta * beta;
        double worst = std::numeric_limits<double>::infinity();
        int first = 0;
        for (int n : ns) {
            if (double(n) < n_min) continue;
            if (first == 0) first = n;
            worst = std::min(worst, 6.0 * es_hat / std::sqrt(double(n)) - table.survival(n));
        }
        c.range = "n=" + std::to_string(first) + ".." + std::to_string(ns.back());
        c.margin = worst;
        c.pass = worst >= 0.0;
        report.push_back(c);
    }

    // estau2.C: E S_tau^2 <= C E|S_tau| E|X|^3 — existence claim, report C.
    {
        AuditCheck c{.id = "estau2.C", .range = "-"};
        c.fitted_c = es_sq_hat / (es_hat * beta);
        c.margin = c.fitted_c;
        c.pass = true;
        report.push_back(c);
    }

    // stau.C1: P(tau = k) <= C1 E|S_tau| (E|X|^3)^2 / k^{3/2}.
    {
        AuditCheck c{.id = "stau.C1", .range = "k=2.." + std::to_string(tau.n_max())};
        std::vector<std::pair<double, double>> ratios;
        for (int k = 2; k <= tau.n_max(); ++k) {
            double denom = es_hat * beta * beta;
            ratios.emplace_back(double(k),
                                tau.p_tau[std::size_t(k - 1)] * std::pow(double(k), 1.5) / denom);
        }
        FitStats st = fit_constant(ratios);
        c.fitted_c = st.max;
        c.cv = st.cv;
        c.margin = st.max;
        c.pass = true;
        report.push_back(c);
    }

    // tau_eq_n.C: P(tau = n) <= C / n^{3/2}.
    {
        AuditCheck c{.id = "tau_eq_n.C", .range = "n=2.." + std::to_string(tau.n_max())};
        std::vector<std::pair<double, double>> ratios;
        for (int k = 2; k <= tau.n_max(); ++k)
            ratios.emplace_back(double(k),
                                tau.p_tau[std::size_t(k - 1)] * std::pow(double(k), 1.5));
        FitStats st = fit_constant(ratios);
        c.fitted_c = st.max;
        c.cv = st.cv;
        c.margin = st.max;
        c.pass = true;
        report.push_back(c);
    }

    // conc_tau.C0: P(S_n in [x, x+1), tau > n) <= C0 E|S_tau|/n^{3/2} (E|X|^3 x + (E|X|^3)^2)
    // in normalized units; windows anchored at the lattice atoms.
    {
        AuditCheck c{.id = "conc_tau.C0"};
        std::vector<std::pair<double, double>> ratios;
        std::vector<int> big;
        for (int n : ns)
            if (n >= 16) big.push_back(n);
        for (int n : big) {
            double worst = 0.0;
            const int W = table.width(n);
            const int win = std::max(1, int(std::ceil(sigma - 1e-12)));
            for (int z = 0; z <= W; ++z) {
                double mass = 0.0;
                for (int w = std::max(1, z); w < z + win + 1 && w <= W; ++w)
                    if (double(w) < double(z) + sigma) mass += table.b(n, w);
                if (mass == 0.0) continue;
                double xh = double(z) / sigma;
                double bound_shape = es_hat * (beta * xh + beta * beta);
                worst = std::max(worst, mass * std::pow(double(n), 1.5) / bound_shape);
            }
            ratios.emplace_back(double(n), worst);
        }
        c.range = range_label(big);
        FitStats st = fit_constant(ratios);
        c.fitted_c = st.max;
        c.cv = st.cv;
        c.margin = st.max;
        c.pass = true;
        report.push_back(c);
    }

    // cont_of_normal: |e^{-z^2/(2(n-k))}/sqrt(n-k) - e^{-z^2/(2n)}/sqrt(n)|
    //                 <= 2^{3/2}/e * k / n^{3/2}, k <= n/2 — analytic, must hold.
    {
        const int n = std::min(256, table.n_max());
        AuditCheck c{.id = "cont_of_normal",
                     .range = "n=" + std::to_string(n) + " k<=n/2 z-grid 1e4"};
        double worst = std::numeric_limits<double>::infinity();
        const double zmax = 10.0 * std::sqrt(double(n));
        const int grid = 10000;
        const double coef = std::pow(2.0, 1.5) / std::numbers::e;
        for (int k = 1; k <= n / 2; ++k) {
            double bound = coef * double(k) / std::pow(double(n), 1.5);
            for (int i = 0; i < grid; ++i) {
                double z = zmax * double(i) / double(grid - 1);
                double lhs = std::abs(
                    std::exp(-z * z / (2.0 * double(n - k))) / std::sqrt(double(n - k)) -
                    std::exp(-z * z / (2.0 * double(n))) / std::sqrt(double(n)));
                worst = std::min(worst, bound - lhs);
            }
        }
        c.margin = worst;
        c.pass = worst >= 0.0;
        report.push_back(c);
    }

    // be.classical with gamma0 = 0.4785 over n = 1..256.
    {
        AuditCheck c{.id = "be.classical", .range = "n=1.." + std::to_string(conv_n >= 256 ? 256 : conv_n)};
        const int top = std::min(256, conv_n);
        std::vector<double> margins(std::size_t(top), 0.0);
        parallel_for(std::size_t(top), [&](std::size_t i) {
            int n = int(i) + 1;
            margins[i] = 0.4785 * beta / std::sqrt(double(n)) - classical_be_sup(walk, sigma, n);
        });
        c.margin = *std::min_element(margins.begin(), margins.end());
        c.pass = c.margin >= 0.0;
        report.push_back(c);
    }

    return report;
}

} // namespace meander
