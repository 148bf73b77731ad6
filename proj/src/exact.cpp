#include "meander/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

double MeanderTable::tail(int k, int x) const {
    const auto& r = rows_[std::size_t(k - 1)];
    if (x < 1) x = 1;
    if (x > int(r.size())) return 0.0;
    return pairwise_sum(std::span<const double>(r).subspan(std::size_t(x - 1)));
}

MeanderTable build_meander(const IncrementLaw& law, int n_max, double eps_trunc,
                           const MeanderOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("build_meander: n_max must be >= 1");
    if (!(eps_trunc >= 0.0 && eps_trunc <= 1e-9))
        throw std::invalid_argument("build_meander: eps_trunc must lie in [0, 1e-9]");
    if (!law.span_checked()) throw PeriodicLawError("build_meander: lattice span is not 1");
    if (n_max > opts.max_horizon)
        throw HorizonTooLargeError("build_meander: n_max exceeds the horizon cap");

    const int up = law.max_support();
    // Worst-case dense storage; the actual windows are trimmed below.
    std::size_t estimate = std::size_t(n_max) * (std::size_t(n_max) * up / 2 + 1) * sizeof(double);
    if (eps_trunc == 0.0 && estimate > opts.memory_cap_bytes)
        throw HorizonTooLargeError("build_meander: projected table exceeds the memory cap");

    MeanderTable t;
    t.law_ = law;
    t.sigma_ = moments(law).sigma();
    t.eps_trunc_ = eps_trunc;
    t.rows_.reserve(std::size_t(n_max));
    t.survival_.assign(std::size_t(n_max) + 1, 0.0);
    t.trunc_cum_.assign(std::size_t(n_max) + 1, 0.0);
    t.survival_[0] = 1.0;

    const auto pts = law.atoms();

    std::vector<double> row; // b_1
    for (int x = 1; x <= up; ++x) row.push_back(law.prob(x));
    while (!row.empty() && row.back() == 0.0) row.pop_back();

    double trunc = 0.0;
    std::size_t bytes = 0;
    for (int k = 1; k <= n_max; ++k) {
        if (k > 1) {
            const auto& prev = t.rows_.back();
            int w = int(prev.size()) + up;
            row.assign(std::size_t(std::max(w, 1)), 0.0);
            for (std::size_t i = 0; i < prev.size(); ++i) {
                double bv = prev[i];
                if (bv == 0.0) continue;
                int y = int(i) + 1;
                for (auto [j, p] : pts) {
                    int x = y + j;
                    if (x >= 1) row[std::size_t(x - 1)] += bv * p;
                }
            }
            while (!row.empty() && row.back() == 0.0) row.pop_back();
        }
        // Trim the upper edge: keep the per-step dropped mass below eps_trunc
        // so that trunc_mass <= eps_trunc * n_max always holds.
        if (eps_trunc > 0.0) {
            double dropped = 0.0;
            while (!row.empty() && row.back() < eps_trunc &&
                   dropped + row.back() <= eps_trunc) {
                dropped += row.back();
                row.pop_back();
            }
            trunc += dropped;
        }
        t.survival_[std::size_t(k)] = pairwise_sum(row);
        t.trunc_cum_[std::size_t(k)] = trunc;
        bytes += row.size() * sizeof(double);
        if (bytes > opts.memory_cap_bytes)
            throw HorizonTooLargeError("build_meander: table exceeded the memory cap");
        t.rows_.push_back(row);
    }
    t.trunc_total_ = trunc;
    return t;
}

double simple_walk_tail(std::int64_t n, std::int64_t x) {
    if (n < 1) throw std::invalid_argument("simple_walk_tail: n must be >= 1");
    if (x < 0) throw std::invalid_argument("simple_walk_tail: x must be >= 0");
    if (x == 0) x = 1;
    if (x > n) return 0.0;
    // P(S_m = s) for the +-1 walk: C(m, (m+s)/2) 2^{-m} when m+s is even.
    auto pmf = [](std::int64_t m, std::int64_t s) -> double {
        if (m == 0) return s == 0 ? 1.0 : 0.0;
        if (s < -m || s > m || ((m + s) & 1)) return 0.0;
        return std::exp(log_binomial(m, (m + s) / 2) - double(m) * std::numbers::ln2);
    };
    return 0.5 * (pmf(n - 1, x - 1) + pmf(n - 1, x));
}

double TauSummary::survival(int n) const {
    std::span<const double> head(p_tau.data(), std::size_t(n));
    return 1.0 - pairwise_sum(head);
}

TauSummary tau_summary(const MeanderTable& table, const IncrementLaw& law) {
    const int n_max = table.n_max();
    const int D = -law.min_support();
    TauSummary s;
    s.max_deficit = D;
    s.p_tau.assign(std::size_t(n_max), 0.0);
    s.m1.assign(std::size_t(n_max), 0.0);
    s.m2.assign(std::size_t(n_max), 0.0);
    s.deficits.assign(std::size_t(n_max), std::vector<double>(std::size_t(D) + 1, 0.0));

    // k = 1 boundary: P(tau = 1, S_tau = -d) = p(-d), d >= 0, including the
    // atom at zero (tau is weak: S_1 = 0 already kills).
    for (int d = 0; d <= D; ++d) s.deficits[0][std::size_t(d)] = law.prob(-d);

    // k >= 2: P(tau = k, S_tau = -d) = sum_{z >= 1} b_{k-1}(z) p(-d - z).
    for (int k = 2; k <= n_max; ++k) {
        auto& def = s.deficits[std::size_t(k - 1)];
        for (int z = 1; z <= std::min(D, table.width(k - 1)); ++z) {
            double bz = table.b(k - 1, z);
            if (bz == 0.0) continue;
            for (int d = 0; d + z <= D; ++d) def[std::size_t(d)] += bz * law.prob(-d - z);
        }
    }
    for (int k = 1; k <= n_max; ++k) {
        const auto& def = s.deficits[std::size_t(k - 1)];
        double pk = 0.0, a = 0.0, b = 0.0;
        for (int d = 0; d <= D; ++d) {
            pk += def[std::size_t(d)];
            a += double(d) * def[std::size_t(d)];
            b += double(d) * double(d) * def[std::size_t(d)];
        }
        s.p_tau[std::size_t(k - 1)] = pk;
        s.m1[std::size_t(k - 1)] = a;
        s.m2[std::size_t(k - 1)] = b;
    }

    s.es_tau_abs = pairwise_sum(s.m1);
    s.es_tau_sq = pairwise_sum(s.m2);
    double mass = pairwise_sum(s.p_tau);
    s.tail_flagged = mass < 1.0 - 1e-9;
    if (s.tail_flagged) {
        // Shape-based remainder: m1(k) decays like k^{-3/2}, so
        // sum_{k>n} m1(k) <= C * 2 / sqrt(n) with C fitted on the last decade.
        double c = 0.0;
        for (int k = std::max(2, n_max / 2); k <= n_max; ++k)
            c = std::max(c, s.m1[std::size_t(k - 1)] * std::pow(double(k), 1.5));
        s.es_tau_tail = 2.0 * c / std::sqrt(double(n_max));
        s.es_tau_sq_tail = double(D) * s.es_tau_tail;
    }
    return s;
}

WalkPmf::WalkPmf(const IncrementLaw& law, int n_max) {
    if (n_max < 0) throw std::invalid_argument("WalkPmf: n_max must be >= 0");
    rows_.reserve(std::size_t(n_max) + 1);
    offsets_.reserve(std::size_t(n_max) + 1);
    rows_.push_back({1.0});
    offsets_.push_back(0);
    const auto pts = law.atoms();
    const int lo = law.min_support(), hi = law.max_support();
    for (int m = 1; m <= n_max; ++m) {
        const auto& prev = rows_.back();
        long long prev_off = offsets_.back();
        long long off = prev_off + lo;
        std::vector<double> row(prev.size() + std::size_t(hi - lo), 0.0);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            double pv = prev[i];
            if (pv == 0.0) continue;
            for (auto [j, p] : pts)
                row[i + std::size_t(j - lo)] += pv * p;
        }
        rows_.push_back(std::move(row));
        offsets_.push_back(off);
    }
    cdfs_.reserve(rows_.size());
    for (const auto& r : rows_) {
        std::vector<double> c(r.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            acc += r[i];
            c[i] = acc;
        }
        cdfs_.push_back(std::move(c));
    }
}

double WalkPmf::cdf(int m, long long x) const {
    const auto& c = cdfs_[std::size_t(m)];
    long long i = x - offsets_[std::size_t(m)];
    if (i < 0) return 0.0;
    if (i >= (long long)c.size()) return 1.0;
    return c[std::size_t(i)];
}

double WalkPmf::interval(int m, long long a, long long b) const {
    if (b <= a) return 0.0;
    return cdf(m, b - 1) - cdf(m, a - 1);
}

double WalkPmf::mean_positive_part(int m) const {
    const auto& r = rows_[std::size_t(m)];
    long long off = offsets_[std::size_t(m)];
    std::vector<double> terms;
    for (std::size_t i = 0; i < r.size(); ++i) {
        long long x = off + (long long)i;
        if (x > 0 && r[i] > 0.0) terms.push_back(double(x) * r[i]);
    }
    return pairwise_sum(terms);
}

double verify_representation(const MeanderTable& table, const TauSummary& tau,
                             const IncrementLaw& law, int n) {
    if (!law.symmetric()) throw NotSymmetricError("verify_representation: law is not symmetric");
    if (n < 2 || n > table.n_max() || n > tau.n_max())
        throw std::invalid_argument("verify_representation: n out of range");

    WalkPmf walk(law, n - 1);
    const int D = tau.max_deficit;
    const int x_hi = table.width(n) + 1;

    // Suffix sums of the meander row at n.
    std::vector<double> lhs(std::size_t(x_hi) + 2, 0.0);
    for (int x = x_hi; x >= 1; --x) lhs[std::size_t(x)] = lhs[std::size_t(x) + 1] + table.b(n, x);

    double worst = 0.0;
    for (int x = 1; x <= x_hi; ++x) {
        std::vector<double> terms;
        for (int k = 1; k <= n - 1; ++k) {
            const auto& def = tau.deficits[std::size_t(k - 1)];
            for (int d = 1; d <= D; ++d) {
                double w = def[std::size_t(d)];
                if (w == 0.0) continue;
                terms.push_back(w * walk.interval(n - k, x - d, x + d));
            }
        }
        // tau = n with S_n <= -x.
        const auto& defn = tau.deficits[std::size_t(n - 1)];
        for (int d = x; d <= D; ++d) terms.push_back(defn[std::size_t(d)]);
        double rhs = pairwise_sum(terms);
        worst = std::max(worst, std::abs(lhs[std::size_t(x)] - rhs));
    }
    return worst;
}

double conditioned_tail(const MeanderTable& table, int n, double x) {
    if (n < 1 || n > table.n_max())
        throw std::invalid_argument("conditioned_tail: n out of range");
    double surv = table.survival(n);
    if (!(surv > 0.0)) throw ZeroSurvivalError("conditioned_tail: P(tau > n) = 0");
    // Sum over lattice atoms z >= x sigma sqrt(n); cuts within 1e-12 of an
    // atom count as hitting it.
    double cut = x * table.sigma() * std::sqrt(double(n));
    long long z = std::max<long long>(1, (long long)std::ceil(cut - 1e-12));
    return table.tail(n, int(std::min<long long>(z, table.width(n) + 1))) / surv;
}

} // namespace meander
