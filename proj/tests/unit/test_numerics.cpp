#include <cmath>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/interpolation.hpp"
#include "oufpt/quadrature.hpp"

using namespace oufpt;

TEST_CASE("Gauss-Kronrod integrates polynomials and smooth functions") {
    auto cubic = [](double x) { return 4.0 * x * x * x - 3.0 * x + 1.0; };
    CHECK(quad::integrate(cubic, -1.0, 2.0).value == doctest::Approx(15.0 - 4.5 + 3.0).epsilon(1e-14));
    const auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("graded panels resolve endpoint singularities") {
    const auto br = quad::graded_toward_left(0.0, 1.0, 60);
    CHECK(br.front() == 0.0);
    CHECK(br.back() == 1.0);
    for (std::size_t i = 1; i < br.size(); ++i) CHECK(br[i] > br[i - 1]);
    const auto r = quad::integrate_panels([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; },
                                          std::span<const double>(br));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("quadrature reports non-convergence") {
    quad::Options opt;
    opt.max_panels = 3;
    const auto r = quad::integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, opt);
    CHECK_FALSE(r.converged);
}

TEST_CASE("monotone cubic interpolation") {
    Gen gen(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.integer(4, 30);
        std::vector<double> x(n), y(n);
        double xv = gen.uniform(-1.0, 1.0), yv = gen.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i) {
            x[i] = xv;
            y[i] = yv;
            xv += gen.uniform(0.01, 1.0);
            yv += gen.coin() ? gen.uniform(0.0, 2.0) : 0.0;
        }
        MonotoneCubic f(x, y);
        for (int i = 0; i < n; ++i) CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
        double prev = f(x.front());
        for (int k = 1; k <= 400; ++k) {
            const double t = x.front() + (x.back() - x.front()) * k / 400.0;
            const double v = f(std::min(t, x.back()));
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
    MonotoneCubic lin({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
    CHECK(lin(0.5) == doctest::Approx(1.0));
    CHECK(lin(2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lin(3.5), RangeError);
    CHECK_THROWS_AS(MonotoneCubic({0.0, 0.0}, {1.0, 2.0}), DomainError);
}
