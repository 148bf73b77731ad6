#include <doctest.h>

#include <cmath>

#include "meander/errors.hpp"
#include "meander/exact.hpp"
#include "meander/numeric.hpp"
#include "oracles.hpp"

using namespace meander;

TEST_CASE("meander table small values") {
    MeanderTable t = build_meander(builtin_law("simple"), 4);
    CHECK(t.b(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.b(2, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(t.survival(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.survival(2) == doctest::Approx(0.25).epsilon(1e-15));
    for (int k = 1; k <= 4; ++k) CHECK(t.survival(k) <= t.survival(k - 1));
}

TEST_CASE("meander table preconditions") {
    CHECK_THROWS_AS(build_meander(make_law({{-2, 0.5}, {2, 0.5}}), 4), PeriodicLawError);
    CHECK_THROWS_AS(build_meander(builtin_law("simple"), 10000), HorizonTooLargeError);
    CHECK_THROWS_AS(build_meander(builtin_law("simple"), 4, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(build_meander(builtin_law("simple"), 0), std::invalid_argument);
}

TEST_CASE("truncation accounting") {
    MeanderTable trimmed = build_meander(builtin_law("sym5"), 512, 1e-12);
    MeanderTable exact = build_meander(builtin_law("sym5"), 512, 0.0);
    CHECK(trimmed.trunc_mass() <= 1e-12 * 512);
    CHECK(trimmed.trunc_mass() > 0.0);
    CHECK(exact.trunc_mass() == 0.0);
    for (int k = 1; k <= 512; ++k) {
        // Dropped mass fully accounts for the survival defect.
        CHECK(std::abs(trimmed.survival(k) - exact.survival(k)) <=
              trimmed.trunc_mass_upto(k) + 1e-13);
        CHECK(trimmed.survival(k) <= trimmed.survival(k - 1) + 1e-15);
    }
}

TEST_CASE("simple walk closed form") {
    CHECK(simple_walk_tail(2, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(simple_walk_tail(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(simple_walk_tail(3, 3) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(simple_walk_tail(3, 0) == simple_walk_tail(3, 1)); // x=0 reads as x=1
    CHECK(simple_walk_tail(5, 7) == 0.0);
}

TEST_CASE("DP tail matches the closed form for n <= 64") {
    MeanderTable t = build_meander(builtin_law("simple"), 64);
    for (int n = 1; n <= 64; ++n)
        for (int x = 1; x <= n + 1; ++x)
            CHECK(std::abs(t.tail(n, x) - simple_walk_tail(n, x)) <= 1e-11);
}

TEST_CASE("DP matches full path enumeration") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        const int n = 8;
        MeanderTable t = build_meander(law, n);
        oracles::BruteTable brute = oracles::brute_meander(law, n);
        for (int k = 1; k <= n; ++k) {
            CHECK(std::abs(t.survival(k) - brute.survival(k)) <= 1e-12);
            for (int x = 1; x <= t.width(k); ++x) {
                auto it = brute.b[std::size_t(k - 1)].find(x);
                double expect = it == brute.b[std::size_t(k - 1)].end() ? 0.0 : it->second;
                CHECK(std::abs(t.b(k, x) - expect) <= 1e-12);
            }
        }
    }
}

TEST_CASE("tau summary on the simple walk") {
    MeanderTable t = build_meander(builtin_law("simple"), 128);
    TauSummary tau = tau_summary(t, builtin_law("simple"));
    CHECK(tau.p_tau[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tau.p_tau[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tau.m1[0] == doctest::Approx(0.5).epsilon(1e-15));
    for (int k = 2; k <= 128; ++k) CHECK(tau.m1[std::size_t(k - 1)] == 0.0); // S_tau = 0 later on
    CHECK(tau.es_tau_abs == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tau.es_tau_sq == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tau.es_tau_tail == 0.0);
}

TEST_CASE("tau summary invariants across the battery") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        MomentSummary s = moments(law);
        MeanderTable t = build_meander(law, 1024, 1e-14);
        TauSummary tau = tau_summary(t, law);
        double mass = 0.0;
        for (int k = 1; k <= 1024; ++k) {
            double pk = tau.p_tau[std::size_t(k - 1)];
            double m1 = tau.m1[std::size_t(k - 1)];
            double m2 = tau.m2[std::size_t(k - 1)];
            CHECK(pk >= 0.0);
            CHECK(m1 >= 0.0);
            CHECK(m2 >= 0.0);
            if (pk > 0.0) CHECK(m2 * pk >= m1 * m1 - 1e-15); // Cauchy-Schwarz
            // Survival-mass identity.
            CHECK(std::abs((t.survival(k - 1) - t.survival(k)) - pk) <= 1e-12);
            mass += pk;
        }
        CHECK(mass <= 1.0 + 1e-12);
        // Mogulskii bound holds for the whole bracket.
        CHECK(tau.es_tau_abs + tau.es_tau_tail <= s.abs3 / s.sigma2);
    }
}

TEST_CASE("tau law matches direct first-passage enumeration") {
    for (const auto& name : {"simple", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        const int n = 8;
        MeanderTable t = build_meander(law, n);
        TauSummary tau = tau_summary(t, law);
        oracles::BruteTau brute = oracles::brute_tau(law, n);
        for (int k = 1; k <= n; ++k) {
            CHECK(std::abs(tau.p_tau[std::size_t(k - 1)] - brute.p_tau(k)) <= 1e-12);
            CHECK(std::abs(tau.m1[std::size_t(k - 1)] - brute.m1(k)) <= 1e-12);
            for (auto& [d, p] : brute.deficit[std::size_t(k - 1)])
                CHECK(std::abs(tau.deficits[std::size_t(k - 1)][std::size_t(d)] - p) <= 1e-12);
        }
    }
}

TEST_CASE("representation identity holds with all-brute inputs") {
    // Assembles the reflection representation entirely from path enumeration,
    // independently of every DP in the library.
    for (const auto& name : {"simple", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        const int n = 6;
        oracles::BruteTable b = oracles::brute_meander(law, n);
        oracles::BruteTau tau = oracles::brute_tau(law, n);
        std::vector<std::map<long long, double>> free_walk;
        for (int m = 0; m <= n; ++m) free_walk.push_back(oracles::brute_free_walk(law, m));
        auto interval = [&](int m, long long lo, long long hi) { // P(S_m in [lo, hi))
            double s = 0.0;
            for (auto& [x, p] : free_walk[std::size_t(m)])
                if (x >= lo && x < hi) s += p;
            return s;
        };
        for (int x = 1; x <= 2 * n; ++x) {
            double lhs = 0.0;
            for (auto& [z, p] : b.b[std::size_t(n - 1)])
                if (z >= x) lhs += p;
            double rhs = 0.0;
            for (int k = 1; k <= n - 1; ++k)
                for (auto& [d, p] : tau.deficit[std::size_t(k - 1)])
                    rhs += p * interval(n - k, x - d, x + d);
            for (auto& [d, p] : tau.deficit[std::size_t(n - 1)])
                if (d >= x) rhs += p;
            CHECK(std::abs(lhs - rhs) <= 1e-13);
        }
    }
}

TEST_CASE("conditioned tail") {
    MeanderTable t = build_meander(builtin_law("simple"), 16);
    CHECK(conditioned_tail(t, 4, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // n=2: the only surviving mass sits at x = 2.
    CHECK(conditioned_tail(t, 2, std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditioned_tail(t, 4, 50.0) == 0.0);
}

TEST_CASE("representation identity for symmetric laws") {
    MeanderTable t = build_meander(builtin_law("simple"), 16);
    TauSummary tau = tau_summary(t, builtin_law("simple"));
    CHECK(verify_representation(t, tau, builtin_law("simple"), 4) <= 1e-12);

    MeanderTable t5 = build_meander(builtin_law("sym5"), 64);
    TauSummary tau5 = tau_summary(t5, builtin_law("sym5"));
    CHECK(verify_representation(t5, tau5, builtin_law("sym5"), 32) <= 1e-10);

    MeanderTable t3 = build_meander(builtin_law("skew3"), 16);
    TauSummary tau3 = tau_summary(t3, builtin_law("skew3"));
    CHECK_THROWS_AS(verify_representation(t3, tau3, builtin_law("skew3"), 8), NotSymmetricError);
}

TEST_CASE("concentration bound realized") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        MomentSummary s = moments(law);
        MeanderTable t = build_meander(law, 256, 1e-14);
        for (int n : {16, 64, 256}) {
            double mx = 0.0;
            for (int x = 1; x <= t.width(n); ++x) mx = std::max(mx, t.b(n, x));
            CHECK(mx <= gamma1(1.0, s) / std::sqrt(double(n)) * t.survival(n / 2));
        }
    }
}

TEST_CASE("conc-tau shape constant is stable across n") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        MeanderTable t = build_meander(law, 1024, 1e-14);
        std::vector<double> cs;
        for (int n : {64, 256, 1024}) {
            double c = 0.0;
            for (int x = 1; x <= t.width(n); ++x)
                c = std::max(c, t.b(n, x) / (double(x) + 1.0));
            cs.push_back(c * std::pow(double(n), 1.5));
        }
        std::vector<double> sorted = cs;
        std::sort(sorted.begin(), sorted.end());
        double median = sorted[1];
        for (double c : cs) CHECK(std::abs(c / median - 1.0) <= 0.20);
    }
}

TEST_CASE("unconditioned walk pmf") {
    WalkPmf walk(builtin_law("simple"), 8);
    CHECK(walk.pmf(2, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(walk.pmf(2, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(walk.cdf(2, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(walk.interval(2, -2, 2) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(walk.mean_positive_part(1) == doctest::Approx(0.5).epsilon(1e-15));
}
