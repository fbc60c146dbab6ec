#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/process.hpp"
#include "oufpt/quadrature.hpp"
#include "reference_values.hpp"

using namespace oufpt;

TEST_CASE("OU parameter validation") {
    CHECK_NOTHROW(OUParams{1.0, 0.0, 2.0}.validate());
    CHECK_THROWS_AS((OUParams{0.0, 0.0, 2.0}.validate()), DomainError);
    CHECK_THROWS_AS((OUParams{1.0, 0.0, -1.0}.validate()), DomainError);
    CHECK_THROWS_AS((OUParams{1.0, std::nan(""), 1.0}.validate()), DomainError);
    CHECK(OUParams{2.0, 1.5, 1.0}.mean_level() == 3.0);
}

TEST_CASE("transition density worked values") {
    const OUParams p{1.0, 0.0, 2.0};
    CHECK(transition_pdf(p, 0.0, 50.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
    const double peak = 1.0 / std::sqrt(2.0 * std::numbers::pi * (1.0 - std::exp(-2.0)));
    CHECK(peak == doctest::Approx(0.42902855).epsilon(1e-7));
    CHECK(transition_pdf(p, std::exp(-1.0), 1.0, 1.0) == doctest::Approx(peak).epsilon(1e-14));
    CHECK(transition_pdf(p, 0.5, 1e-9, 0.0) < 1e-300);
    CHECK_THROWS_AS(transition_pdf(p, 0.5, 0.0, 0.0), DomainError);
}

TEST_CASE("transition density is normalized and satisfies Chapman-Kolmogorov") {
    Gen gen(21);
    for (int i = 0; i < 20; ++i) {
        const OUParams p{gen.uniform(0.3, 3.0), gen.uniform(-1.0, 1.0), gen.uniform(0.2, 3.0)};
        const double x0 = gen.uniform(-2.0, 2.0), s = gen.uniform(0.05, 2.0), t = gen.uniform(0.05, 2.0);
        const double m = p.mean_level();
        const double lo = m - 40.0, hi = m + 40.0;
        const auto mass = quad::integrate([&](double x) { return transition_pdf(p, x, t, x0); }, lo, hi);
        CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-10));
        const double x = gen.uniform(-2.0, 2.0);
        const auto ck = quad::integrate(
            [&](double y) { return transition_pdf(p, x, t, y) * transition_pdf(p, y, s, x0); }, lo, hi);
        CHECK(ck.value == doctest::Approx(transition_pdf(p, x, s + t, x0)).epsilon(1e-9));
    }
}

TEST_CASE("threshold families") {
    const OUParams p1{1.0, 0.0, 1.0};
    CHECK(threshold_value(ConstantThreshold{2.0}, p1, 7.0) == 2.0);
    CHECK(threshold_value(ExpThreshold{1.0, 0.0}, p1, 0.0) == 1.0);
    const OUParams p3{1.0, 3.0, 1.0};
    const double want = std::exp(-3.0) + 2.0 * std::sinh(3.0) + 3.0 * (1.0 - std::exp(-3.0));
    CHECK(want == doctest::Approx(22.936).epsilon(1e-4));
    CHECK(threshold_value(ExpThreshold{1.0, 2.0}, p3, 3.0) == doctest::Approx(want).epsilon(1e-15));
    CHECK(ExpThreshold{1.0, 0.5}.validated());
    CHECK_FALSE(ExpThreshold{1.0, -0.5}.validated());
    // d1 = mu theta, d2 = 0 is the constant level mu theta.
    const OUParams p{2.0, 0.75, 1.0};
    for (double t : {0.0, 0.3, 4.0, 30.0})
        CHECK(threshold_value(ExpThreshold{1.5, 0.0}, p, t) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(threshold_value(ConstantThreshold{1.0}, p, -0.1), DomainError);
    CHECK(is_constant(ConstantThreshold{1.0}));
    CHECK_FALSE(is_constant(ExpThreshold{1.0, 1.0}));
}

TEST_CASE("tabulated thresholds") {
    TabulatedThreshold lin({0.0, 1.0, 2.0, 3.0, 4.0}, {1.0, 1.5, 2.0, 2.5, 3.0});
    const OUParams p{};
    for (double t : {0.0, 0.25, 1.7, 3.99, 4.0}) CHECK(threshold_value(lin, p, t) == doctest::Approx(1.0 + 0.5 * t).epsilon(1e-14));
    CHECK_THROWS_AS(threshold_value(lin, p, 4.5), RangeError);
    CHECK_THROWS_AS(TabulatedThreshold({0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), DomainError);
    CHECK(lin.t_min() == 0.0);
    CHECK(lin.t_max() == 4.0);
    CHECK(!describe(lin).empty());
}

TEST_CASE("exponential-family first-passage density") {
    for (const auto& r : ref::exp_threshold_table) {
        const OUParams p{r.theta, r.mu, r.sigma2};
        INFO("theta=" << r.theta << " t=" << r.t);
        // exp() of the Gaussian exponent amplifies its rounding by |log g|
        CHECK(rel_diff(fpt_pdf_exp_threshold(p, r.d1, r.d2, r.x0, r.t), r.value) < 1e-14 * (1.0 + std::abs(std::log(r.value))));
    }
    const OUParams p{1.0, 0.0, 2.0};
    const double direct = 2.0 / std::sqrt(2.0 * std::numbers::pi) * std::exp(-1.0) *
                          std::pow(1.0 - std::exp(-2.0), -1.5) *
                          std::exp(-std::exp(-2.0) / (2.0 * (1.0 - std::exp(-2.0))));
    CHECK(fpt_pdf_exp_threshold(p, 1.0, 0.0, 0.0, 1.0) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(fpt_pdf_exp_threshold(p, 1.0, 1.0, 0.0, 1e-4) == 0.0);
    CHECK(fpt_pdf_exp_threshold(p, 1.0, 1.0, 0.0, 1e-3) < 1e-100);
    CHECK_THROWS_AS(fpt_pdf_exp_threshold(p, 1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(fpt_pdf_exp_threshold(p, 1.0, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("mean-level first-passage density") {
    const OUParams p{1.0, 1.0, 2.0};
    const double e2 = std::exp(-2.0);
    const double direct = 2.0 / std::sqrt(2.0 * std::numbers::pi) * std::exp(-1.0) * std::pow(1.0 - e2, -1.5) *
                          std::exp(-e2 / (2.0 * (1.0 - e2)));
    CHECK(fpt_pdf_mean_threshold(p, 0.0, 1.0) == doctest::Approx(direct).epsilon(1e-14));
    // unit variance drops the factors of two
    const double unit = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-1.0) * std::pow(1.0 - e2, -1.5) *
                        std::exp(-e2 / (1.0 - e2));
    CHECK(fpt_pdf_mean_threshold(OUParams{1.0, 1.0, 1.0}, 0.0, 1.0) == doctest::Approx(unit).epsilon(1e-14));
    Gen gen(4);
    for (int i = 0; i < 30; ++i) {
        const OUParams q{gen.uniform(0.3, 3.0), gen.uniform(-1.0, 1.0), gen.uniform(0.3, 3.0)};
        const double x0 = q.mean_level() - gen.uniform(0.05, 2.0);
        const double t = gen.uniform(0.01, 5.0);
        CHECK(rel_diff(fpt_pdf_mean_threshold(q, x0, t),
                       fpt_pdf_exp_threshold(q, q.mean_level(), 0.0, x0, t)) < 1e-13);
    }
    // The mean level is reached almost surely.
    const auto br = quad::graded_toward_left(0.0, 60.0, 30);
    const auto mass = quad::integrate_panels([&](double t) { return t > 0 ? fpt_pdf_mean_threshold(p, 0.0, t) : 0.0; },
                                             std::span<const double>(br));
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(fpt_pdf_mean_threshold(p, 1.0, 1.0), DomainError);
}

TEST_CASE("density curve helpers") {
    DensityCurve c;
    c.times = {0.5, 1.0, 1.5, 2.0};
    c.values = {1.0, 0.5, 0.25, 0.0};
    CHECK(c.max_value() == 1.0);
    CHECK(c.mass() == doctest::Approx(0.5 * 0.5 * 1.0 + 0.5 * (0.75 + 0.375 + 0.125)));
    CHECK_NOTHROW(check_nonnegative(c, 1e-8));
    c.values[2] = -1e-3;
    try {
        check_nonnegative(c, 1e-8);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.node() == 2);
    }
    c.values[2] = -1e-9;
    CHECK_NOTHROW(check_nonnegative(c, 1e-8));
    const auto f = interpolate(c);
    CHECK(f(0.0) == 0.0);
    CHECK(f(1.0) == doctest::Approx(0.5));
}
