#include <doctest.h>

#include <cmath>

#include "meander/errors.hpp"
#include "meander/exact.hpp"
#include "meander/limits.hpp"
#include "meander/montecarlo.hpp"

using namespace meander;

namespace {

McConfig config(std::uint64_t seed, int n, std::int64_t paths) {
    McConfig c;
    c.seed = seed;
    c.n = n;
    c.paths = paths;
    return c;
}

// Exact conditioned CDF atoms for the sup-distance check.
void exact_cdf(const MeanderTable& t, int n, std::vector<double>& xs, std::vector<double>& fs) {
    const double scale = t.sigma() * std::sqrt(double(n));
    double acc = 0.0;
    for (int z = 1; z <= t.width(n); ++z) {
        acc += t.b(n, z);
        xs.push_back(double(z) / scale);
        fs.push_back(acc / t.survival(n));
    }
}

} // namespace

TEST_CASE("rejection sampler is reproducible") {
    IncrementLaw law = builtin_law("simple");
    McResult a = sample_conditioned(config(99, 16, 2000), law);
    McResult b = sample_conditioned(config(99, 16, 2000), law);
    REQUIRE(a.ecdf.size() == b.ecdf.size());
    CHECK(a.trials == b.trials);
    for (std::size_t i = 0; i < a.ecdf.size(); ++i) CHECK(a.ecdf[i] == b.ecdf[i]);
    McResult c = sample_conditioned(config(100, 16, 2000), law);
    CHECK(c.trials != a.trials);
}

TEST_CASE("acceptance rate concentrates around P(tau > n)") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        MeanderTable t = build_meander(law, 64);
        for (int n : {16, 64}) {
            McResult r = sample_conditioned(config(7, n, 4000), law);
            double p = t.survival(n);
            double sd = std::sqrt(p * (1.0 - p) / double(r.trials));
            CHECK(std::abs(double(r.config.paths) / double(r.trials) - p) <= 3.0 * sd);
        }
    }
    // Two hand-checkable horizons.
    IncrementLaw law = builtin_law("simple");
    McResult r1 = sample_conditioned(config(5, 1, 20000), law);
    CHECK(std::abs(r1.acceptance_rate - 0.5) <= 3.0 * std::sqrt(0.25 / double(r1.trials)));
    McResult r2 = sample_conditioned(config(5, 2, 20000), law);
    CHECK(std::abs(r2.acceptance_rate - 0.25) <= 3.0 * std::sqrt(0.1875 / double(r2.trials)));
}

TEST_CASE("rejection ecdf is DKW-close to the exact conditioned CDF") {
    IncrementLaw law = builtin_law("simple");
    MeanderTable t = build_meander(law, 64);
    McResult r = sample_conditioned(config(31, 64, 10000), law);
    std::vector<double> xs, fs;
    exact_cdf(t, 64, xs, fs);
    CHECK(ecdf_sup_distance_discrete(r.ecdf, xs, fs) <= r.dkw_epsilon);
}

TEST_CASE("budget is enforced") {
    McConfig c = config(1, 64, 100000);
    c.draw_budget = 500;
    CHECK_THROWS_AS(sample_conditioned(c, builtin_law("simple")), BudgetExceededError);
}

TEST_CASE("h-transform kernel for the simple walk") {
    // V(x) = x, so the chain steps up with probability (x+1)/(2x).
    LadderData lad = ladder_data(builtin_law("simple"), 128);
    for (long long x : {1, 2, 3, 10, 50}) {
        auto probs = htransform_step_probs(builtin_law("simple"), lad, x);
        REQUIRE(probs.size() == 2);
        CHECK(probs[0] == doctest::Approx(double(x - 1) / double(2 * x)).epsilon(1e-12));
        CHECK(probs[1] == doctest::Approx(double(x + 1) / double(2 * x)).epsilon(1e-12));
        CHECK(probs[0] + probs[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(htransform_step_probs(builtin_law("simple"), lad, 0),
                    GridInsufficientError);
}

TEST_CASE("h-transform rows are stochastic across the battery") {
    for (const auto& name : {"simple", "lazy", "skew3", "sym5"}) {
        IncrementLaw law = builtin_law(name);
        LadderData lad = ladder_data(law, 256);
        for (long long x = 1; x <= 200; ++x) {
            auto probs = htransform_step_probs(law, lad, x);
            double sum = 0.0;
            for (double p : probs) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("h-transform sampler is reproducible and close to its limit") {
    IncrementLaw law = builtin_law("simple");
    LadderData lad = ladder_data(law, 1024);
    McConfig c = config(17, 1024, 4000);
    c.mode = McConfig::Mode::htransform;
    McResult a = sample_htransform(c, law, lad);
    McResult b = sample_htransform(c, law, lad);
    for (std::size_t i = 0; i < a.ecdf.size(); ++i) CHECK(a.ecdf[i] == b.ecdf[i]);
    double dist = ecdf_sup_distance(
        a.ecdf, [](double x) { return x <= 0.0 ? 0.0 : h_transform_target(x); });
    CHECK(dist <= a.dkw_epsilon + 0.03);
}

TEST_CASE("h-transform grid extension is flagged") {
    IncrementLaw law = builtin_law("simple");
    LadderData lad = ladder_data(law, 16); // far too small for n = 256
    McConfig c = config(3, 256, 200);
    c.mode = McConfig::Mode::htransform;
    McResult r = sample_htransform(c, law, lad);
    CHECK(r.grid_extended);
    // The linear continuation of V(x) = x is exact, so the sample is still fine.
    double dist = ecdf_sup_distance(
        r.ecdf, [](double x) { return x <= 0.0 ? 0.0 : h_transform_target(x); });
    CHECK(dist <= r.dkw_epsilon + 0.1);
}

TEST_CASE("ecdf sup distance helpers") {
    // Against F(x) = x the sup is reached just below the first point (and at
    // the last): |0 - 0.25| = 0.25.
    std::vector<double> sample = {0.25, 0.5, 0.75};
    double d = ecdf_sup_distance(sample, [](double x) { return x; });
    CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(dkw_epsilon(10000) == doctest::Approx(std::sqrt(std::log(200.0) / 20000.0))
                                    .epsilon(1e-12));
}
