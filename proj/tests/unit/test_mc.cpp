#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "doctest.h"
#include "oufpt/errors.hpp"
#include "oufpt/mc_oracle.hpp"
#include "oufpt/quadrature.hpp"
#include "oufpt/rng.hpp"

using namespace oufpt;

namespace {

struct BinAgreement {
    int eligible = 0;
    int within = 0;
};

// Bins whose expected count is at least 50, compared at 3 binomial standard errors.
BinAgreement compare_bins(const MCEstimate& est, const std::function<double(double)>& g) {
    BinAgreement out;
    const double n = static_cast<double>(est.n_paths);
    for (std::size_t i = 0; i < est.counts.size(); ++i) {
        const double a = est.bin_edges[i], b = est.bin_edges[i + 1];
        const double prob = quad::integrate([&](double t) { return t > 0.0 ? g(t) : 0.0; }, a, b).value;
        const double expected = n * prob;
        if (expected < 50.0) continue;
        ++out.eligible;
        const double se = std::sqrt(n * prob * (1.0 - prob));
        if (std::abs(static_cast<double>(est.counts[i]) - expected) <= 3.0 * se) ++out.within;
    }
    return out;
}

}  // namespace

TEST_CASE("xoshiro256++ reference output") {
    Xoshiro256pp a({1, 2, 3, 4});
    CHECK(a() == 41943041ULL);
    Xoshiro256pp b(0);
    Xoshiro256pp c(0);
    for (int i = 0; i < 100; ++i) CHECK(b() == c());
    b.jump();
    c.jump();
    CHECK(b.state() == c.state());
    Xoshiro256pp d(0);
    CHECK(d.state() != b.state());
    for (int i = 0; i < 1000; ++i) {
        const double u = d.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("configuration validation") {
    const OUParams p{1.0, 1.0, 2.0};
    MCConfig cfg;
    CHECK_NOTHROW(cfg.validate(p));
    MCConfig few = cfg;
    few.n_paths = 9999;
    CHECK_THROWS_AS(few.validate(p), DomainError);
    MCConfig coarse = cfg;
    coarse.dt = 0.011;
    CHECK_THROWS_AS(coarse.validate(p), DomainError);
    MCConfig bins = cfg;
    bins.n_bins = 0;
    CHECK_THROWS_AS(bins.validate(p), DomainError);
    MCConfig horizon = cfg;
    horizon.t_max = 0.0;
    CHECK_THROWS_AS(horizon.validate(p), DomainError);
    CHECK_THROWS_AS(simulate_fpt(p, ConstantThreshold{1.0}, 1.0, cfg), DomainError);
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
    const OUParams p{1.0, 1.0, 2.0};
    MCConfig cfg;
    cfg.n_paths = 20000;
    cfg.t_max = 2.0;
    cfg.n_bins = 20;
    cfg.seed = 123;
    cfg.block_size = 1000;
    cfg.threads = 1;
    const auto a = simulate_fpt(p, ConstantThreshold{1.0}, 0.0, cfg);
    const auto b = simulate_fpt(p, ConstantThreshold{1.0}, 0.0, cfg);
    cfg.threads = 3;
    const auto c = simulate_fpt(p, ConstantThreshold{1.0}, 0.0, cfg);
    CHECK(a.counts == b.counts);
    CHECK(a.counts == c.counts);
    CHECK(a.density == c.density);
    CHECK(a.mean_fpt == c.mean_fpt);
    CHECK(a.n_blocks == 20);
    CHECK(!a.generator.empty());
    cfg.seed = 124;
    const auto d = simulate_fpt(p, ConstantThreshold{1.0}, 0.0, cfg);
    CHECK(d.counts != a.counts);
}

TEST_CASE("histogram invariants") {
    const OUParams p{1.0, 0.0, 2.0};
    MCConfig cfg;
    cfg.n_paths = 10000;
    cfg.t_max = 3.0;
    cfg.n_bins = 30;
    cfg.seed = 7;
    for (bool bridge : {true, false}) {
        cfg.bridge = bridge;
        const auto est = simulate_fpt(p, ExpThreshold{1.0, 1.0}, 0.0, cfg);
        REQUIRE(est.bin_edges.size() == 31);
        REQUIRE(est.counts.size() == 30);
        CHECK(est.bin_edges.front() == 0.0);
        CHECK(est.bin_edges.back() == 3.0);
        for (std::size_t i = 0; i + 1 < est.bin_edges.size(); ++i) CHECK(est.bin_edges[i] < est.bin_edges[i + 1]);
        CHECK(std::accumulate(est.counts.begin(), est.counts.end(), std::uint64_t{0}) == est.n_absorbed);
        CHECK(est.n_absorbed <= est.n_paths);
        double mass = 0.0;
        for (std::size_t i = 0; i < est.density.size(); ++i) {
            CHECK(est.density[i] >= 0.0);
            mass += est.density[i] * est.bin_width(i);
        }
        CHECK(mass == doctest::Approx(est.absorbed_fraction()).epsilon(1e-12));
        CHECK(mass <= 1.0);
        CHECK(est.seed == 7);
        CHECK(est.config.bridge == bridge);
    }
}

TEST_CASE("disabling the bridge delays the estimated passage") {
    const OUParams p{1.0, 1.0, 2.0};
    MCConfig cfg;
    cfg.n_paths = 20000;
    cfg.t_max = 4.0;
    cfg.dt = 0.01;
    cfg.seed = 99;
    const auto on = simulate_fpt(p, ConstantThreshold{1.5}, 0.0, cfg);
    cfg.bridge = false;
    const auto off = simulate_fpt(p, ConstantThreshold{1.5}, 0.0, cfg);
    CHECK(off.n_absorbed <= on.n_absorbed);
    CHECK(off.mean_fpt - on.mean_fpt >= 0.0);
}

TEST_CASE("attracting boundary absorbs nearly every path") {
    const OUParams p{1.0, 1.0, 2.0};
    MCConfig cfg;
    cfg.n_paths = 10000;
    cfg.t_max = 15.0;
    cfg.dt = 0.01;
    cfg.seed = 3;
    const auto est = simulate_fpt(p, ConstantThreshold{p.mean_level()}, 0.0, cfg);
    CHECK(est.absorbed_fraction() >= 0.999);
}

TEST_CASE("binned density matches the closed forms statistically") {
    MCConfig cfg;
    cfg.n_paths = 100000;
    cfg.t_max = 3.0;
    cfg.n_bins = 60;
    cfg.seed = 2024;
    {
        const OUParams p{1.0, 1.0, 2.0};
        const auto est = simulate_fpt(p, ConstantThreshold{1.0}, 0.0, cfg);
        const auto r = compare_bins(est, [&](double t) { return fpt_pdf_mean_threshold(p, 0.0, t); });
        CHECK(r.eligible >= 40);
        CHECK(r.within >= 0.95 * r.eligible);
    }
    {
        const OUParams p{1.0, 0.0, 2.0};
        const auto est = simulate_fpt(p, ExpThreshold{1.0, 1.0}, 0.0, cfg);
        const auto r = compare_bins(est, [&](double t) { return fpt_pdf_exp_threshold(p, 1.0, 1.0, 0.0, t); });
        CHECK(r.eligible >= 20);
        CHECK(r.within >= 0.95 * r.eligible);
    }
}

TEST_CASE("thread count from the environment") {
    ::setenv("FPT_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    ::setenv("FPT_THREADS", "zero", 1);
    CHECK(default_thread_count() >= 1);
    ::unsetenv("FPT_THREADS");
    CHECK(default_thread_count() >= 1);
}
