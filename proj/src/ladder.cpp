#include "meander/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

namespace {

// Solves G(x) = rhs(x) + sum_{y in half-line} G(y) p(x - y) on the states
// anchor, anchor + dir, ..., anchor + dir * M, with the constant-continuation
// closure G(y) = G(far end) beyond the truncation. dir = -1 selects the
// non-positive half-line.
std::vector<double> solve_halfline(const IncrementLaw& law, int anchor, int dir, int M,
                                   const std::function<double(long long)>& rhs) {
    const auto pts = law.atoms();
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M + 1, M + 1);
    Eigen::VectorXd b(M + 1);
    for (int i = 0; i <= M; ++i) {
        long long x = anchor + (long long)dir * i;
        b(i) = rhs(x);
        for (auto [j, p] : pts) {
            long long y = x - j;
            long long k = (long long)dir * (y - anchor);
            if (k < 0) continue; // y outside the half-line: kill / absorb
            A(i, int(std::min<long long>(k, M))) -= p;
        }
    }
    Eigen::VectorXd g = A.partialPivLu().solve(b);
    return std::vector<double>(g.data(), g.data() + g.size());
}

// Renewal function of a non-negative integer increment law given by pmf[d]
// for d = 1..len (strictly positive increments): R(x) = 1 + sum pmf[d] R(x-d).
std::vector<double> renewal_function(const std::vector<double>& pmf, int x_max) {
    std::vector<double> r(std::size_t(x_max) + 1, 0.0);
    for (int x = 0; x <= x_max; ++x) {
        double acc = 1.0;
        for (int d = 1; d <= std::min<int>(int(pmf.size()), x); ++d)
            acc += pmf[std::size_t(d - 1)] * r[std::size_t(x - d)];
        r[std::size_t(x)] = acc;
    }
    return r;
}

} // namespace

LadderData ladder_data(const IncrementLaw& law, int x_max, int horizon) {
    if (x_max < 1) throw std::invalid_argument("ladder_data: x_max must be >= 1");
    if (!law.span_checked()) throw PeriodicLawError("ladder_data: lattice span is not 1");
    const int U = law.max_support();
    const int D = -law.min_support();
    const int M = std::max(horizon, 16 * std::max(U, D));

    LadderData out;
    out.x_max = x_max;

    // Strict ascending side: Green function of the walk killed on entering
    // [1, inf), living on x <= 0.
    auto ga = solve_halfline(law, 0, -1, M, [](long long x) { return x == 0 ? 1.0 : 0.0; });
    out.ladder_pmf.assign(std::size_t(U), 0.0);
    for (int h = 1; h <= U; ++h) {
        double acc = 0.0;
        for (int i = 0; i + h <= U; ++i) acc += ga[std::size_t(i)] * law.prob(h + i);
        out.ladder_pmf[std::size_t(h - 1)] = std::max(acc, 0.0);
    }
    double mass_a = pairwise_sum(out.ladder_pmf);
    double residual = std::abs(1.0 - mass_a);
    for (int h = 1; h <= U; ++h) out.mean_height += double(h) * out.ladder_pmf[std::size_t(h - 1)];

    // Strict descending side (killed on entering (-inf, -1], living on x >= 0).
    auto gs = solve_halfline(law, 0, +1, M, [](long long x) { return x == 0 ? 1.0 : 0.0; });
    out.strict_desc_pmf.assign(std::size_t(D), 0.0);
    for (int d = 1; d <= D; ++d) {
        double acc = 0.0;
        for (int y = 0; y + d <= D; ++y) acc += gs[std::size_t(y)] * law.prob(-d - y);
        out.strict_desc_pmf[std::size_t(d - 1)] = std::max(acc, 0.0);
    }
    residual = std::max(residual, std::abs(1.0 - pairwise_sum(out.strict_desc_pmf)));

    // Weak descending side (killed on entering (-inf, 0], living on x >= 1,
    // started at 0): gives the law of S_tau directly.
    auto gd = solve_halfline(law, 1, +1, M - 1,
                             [&law](long long x) { return law.prob(int(x)); });
    out.stau_pmf.assign(std::size_t(D) + 1, 0.0);
    for (int d = 0; d <= D; ++d) {
        double acc = law.prob(-d);
        for (int y = 1; y + d <= D; ++y) acc += gd[std::size_t(y - 1)] * law.prob(-d - y);
        out.stau_pmf[std::size_t(d)] = std::max(acc, 0.0);
    }
    residual = std::max(residual, std::abs(1.0 - pairwise_sum(out.stau_pmf)));
    for (int d = 0; d <= D; ++d) {
        out.es_tau_abs += double(d) * out.stau_pmf[std::size_t(d)];
        out.es_tau_sq += double(d) * double(d) * out.stau_pmf[std::size_t(d)];
    }

    out.horizon_tail = residual;
    if (!(residual < 1e-9))
        throw HorizonInsufficientError("ladder_data: residual first-passage mass " +
                                       format_g17(residual) + " exceeds 1e-9");

    out.H = renewal_function(out.ladder_pmf, x_max);
    auto us = renewal_function(out.strict_desc_pmf, x_max); // renewal fn of chi-
    out.V.assign(std::size_t(x_max) + 1, 0.0);
    for (int x = 1; x <= x_max; ++x) out.V[std::size_t(x)] = us[std::size_t(x - 1)];

    // Harmonicity audit on the interior of the grid.
    double defect = 0.0;
    for (int x = 1; x + U <= x_max; ++x) {
        double acc = 0.0;
        for (auto [j, p] : law.atoms())
            if (x + j >= 1) acc += p * out.V[std::size_t(x + j)];
        defect = std::max(defect, std::abs(acc - out.V[std::size_t(x)]));
    }
    out.harmonic_defect = defect;
    if (!(defect <= 1e-8))
        throw ComputeError("ladder_data: V failed the harmonicity check, defect " +
                           format_g17(defect));
    return out;
}

} // namespace meander
