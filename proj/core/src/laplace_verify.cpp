#include "oufpt/laplace_verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oufpt/errors.hpp"
#include "oufpt/quadrature.hpp"
#include "oufpt/special_functions.hpp"

namespace oufpt {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)
constexpr double kSqrtPi = 1.7724538509055160273;

double from_log(double log_abs, int sign) {
    if (sign == 0 || log_abs < -745.0) return 0.0;
    return sign * std::exp(log_abs);
}

double one_minus_exp_neg(double a) { return -std::expm1(-a); }

TransformCheck finish(double lambda, double lhs, const quad::Result& r, double tail,
                      bool vanishes) {
    TransformCheck c;
    c.lambda = lambda;
    c.lhs = lhs;
    c.rhs = r.value;
    c.abs_err = std::abs(lhs - r.value);
    c.rel_err = c.abs_err / std::max({std::abs(lhs), std::abs(r.value), 1e-300});
    c.quad_error = r.abs_error + tail;
    c.rhs_vanishes = vanishes;
    return c;
}

template <class F>
quad::Result graded_integral(F& f, double T, const char* who) {
    const auto breaks = quad::graded_toward_left(0.0, T, 100);
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    opt.max_panels = 8000;
    auto r = quad::integrate_panels(f, breaks, opt);
    if (!std::isfinite(r.value)) throw QuadratureError(std::string(who) + ": non-finite quadrature");
    if (!r.converged && r.abs_error > 1e-9 * std::abs(r.value) && r.abs_error > 1e-14)
        throw QuadratureError(std::string(who) + ": quadrature did not converge");
    return r;
}

// int_0^T f(t) dt for f ~ t^{-beta} at the origin (beta < 1). For beta > 0 the
// substitution t = u^k, k = 2 / (1 - beta), leaves a bounded integrand.
template <class F>
quad::Result time_integral(F& f, double T, double beta, const char* who) {
    if (!(beta > 0.0)) return graded_integral(f, T, who);
    const double k = 2.0 / (1.0 - beta);
    auto g = [&](double u) {
        const double t = std::pow(u, k);
        return t > 0.0 ? f(t) * k * std::pow(u, k - 1.0) : 0.0;
    };
    return graded_integral(g, std::pow(T, 1.0 / k), who);
}

// Log of Gamma[a] D_nu1(y) D_nu2(z) and its sign.
LogValue gamma_pcf_pair(double a, double nu1, double y, double nu2, double z) {
    const LogValue d1 = pcf_log(nu1, y);
    const LogValue d2 = pcf_log(nu2, z);
    LogValue out;
    out.sign = d1.sign * d2.sign;
    out.log_abs = log_gamma(a) + d1.log_abs + d2.log_abs;
    return out;
}

struct Rescaled {
    double a;  // mu theta - S
    double b;  // x - mu theta
    double q;
    OUParams p;

    double operator()(double t) const {
        if (!(t > 0.0)) return 0.0;
        const double th = p.theta;
        const double e = std::exp(-t / th);
        const double one_m = one_minus_exp_neg(2.0 * t / th);
        const double var = p.sigma2 * th * one_m;
        // On the boundary a = -b and both combinations carry a factor 1 - e.
        const bool boundary = a == -b;
        const double u = boundary ? a * one_minus_exp_neg(t / th) : a + b * e;
        const double v = boundary ? b * one_minus_exp_neg(t / th) : b + a * e;
        const double arg = std::sqrt(2.0) * v / std::sqrt(var);
        const LogValue d = pcf_log(q, arg);
        const double lg = -std::log(th) - 0.5 * (1.0 + q) * std::log(one_m) - u * u / (2.0 * var) + d.log_abs;
        return from_log(lg, d.sign);
    }
};

void check_transform_domain(const OUParams& p, double S, double x, bool on_boundary, double q) {
    p.validate();
    if (!std::isfinite(S) || !std::isfinite(x) || !std::isfinite(q))
        throw DomainError("transform: non-finite input");
    if (on_boundary) {
        if (q > 1.0) throw DomainError("transform: q must be <= 1 on the boundary");
    } else if (!(x > S)) {
        throw DomainError("transform: a fixed abscissa must lie above the threshold");
    }
}

}  // namespace

bool TransformCheck::passes(double tol) const {
    if (rhs_vanishes) return std::abs(lhs) <= 1e-10;
    return rel_err <= tol;
}

double fpt_laplace(const OUParams& p, double S, double x0, double lambda) {
    p.validate();
    if (!(x0 < S)) throw DomainError("fpt_laplace: start must lie strictly below the threshold");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("fpt_laplace: lambda must be positive");
    const double m = p.mean_level();
    const double scale = std::sqrt(2.0 / (p.sigma2 * p.theta));
    const double nu = -lambda * p.theta;
    const LogValue num = pcf_log(nu, scale * (m - x0));
    const LogValue den = pcf_log(nu, scale * (m - S));
    if (den.sign == 0 || den.log_abs < std::log(1e-300)) {
        std::ostringstream os;
        os << "fpt_laplace: denominator D_" << nu << "(" << scale * (m - S) << ") is below 1e-300";
        throw NumericalError(os.str());
    }
    const double expo = ((x0 - m) * (x0 - m) - (S - m) * (S - m)) / (2.0 * p.sigma2 * p.theta);
    return from_log(expo + num.log_abs - den.log_abs, num.sign * den.sign);
}

TransformCheck verify_ilt_product(double c, double q, double y, double z, double lambda) {
    if (!std::isfinite(c) || !std::isfinite(q) || !std::isfinite(y) || !std::isfinite(z) ||
        !std::isfinite(lambda))
        throw DomainError("verify_ilt_product: non-finite input");
    const double s = lambda + c;
    if (!(s > 0.0)) throw DomainError("verify_ilt_product: lambda + c must be positive");
    const double yz = y + z;
    if (yz < 0.0) throw DomainError("verify_ilt_product: y + z must be non-negative");
    if (yz == 0.0 && c + q > 1.0)
        throw DomainError("verify_ilt_product: y + z = 0 requires c + q <= 1");

    const LogValue prod = gamma_pcf_pair(s, -c - lambda, y, q - lambda, z);
    double lhs = from_log(prod.log_abs, prod.sign);
    if (yz == 0.0 && c + q == 1.0) lhs -= kSqrtHalfPi;

    const double nu = c + q;
    auto f = [&](double t) {
        if (!(t > 0.0)) return 0.0;
        const double one_m = one_minus_exp_neg(2.0 * t);
        const double e = std::exp(-t);
        // With y + z = 0 both combinations carry a factor 1 - e^{-t}.
        const double u = yz == 0.0 ? y * one_minus_exp_neg(t) : y + z * e;
        const double v = yz == 0.0 ? z * one_minus_exp_neg(t) : z + y * e;
        const LogValue d = pcf_log(nu, v / std::sqrt(one_m));
        const double lg = -s * t - 0.5 * (1.0 + nu) * std::log(one_m) - u * u / (4.0 * one_m) + d.log_abs;
        return from_log(lg, d.sign);
    };
    const double T = std::max(20.0, 40.0 / s);
    const double beta = yz == 0.0 ? (nu == 1.0 ? 0.5 : 0.5 * (1.0 + nu)) : 0.0;
    const auto r = time_integral(f, T, beta, "verify_ilt_product");
    const double tail = 2.0 * std::abs(f(T)) / s;
    const bool vanishes = y == 0.0 && z == 0.0 && nu == 1.0;
    return finish(lambda, lhs, r, tail, vanishes);
}

TransformCheck verify_ilt_single(double theta, double z, double lambda) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("verify_ilt_single: theta must be positive");
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("verify_ilt_single: z must be non-negative");
    const double s = lambda + 1.0 / theta;
    if (!(s > 0.0) || !std::isfinite(lambda)) throw DomainError("verify_ilt_single: lambda + 1/theta must be positive");

    const double lt = lambda * theta;
    const LogValue d = pcf_log(-lt, z);
    double lhs = from_log(0.5 * lt * std::log(2.0) + log_gamma(0.5 * (1.0 + lt)) + d.log_abs, d.sign);
    if (z == 0.0) lhs -= kSqrtPi;

    auto f = [&](double t) {
        if (!(t > 0.0) || z == 0.0) return 0.0;
        const double one_m = one_minus_exp_neg(2.0 * t / theta);
        const double e2 = std::exp(-2.0 * t / theta);
        const double lg = -s * t + std::log(std::sqrt(2.0) * z / theta) - 1.5 * std::log(one_m) -
                          z * z * (1.0 + e2) / (4.0 * one_m);
        return from_log(lg, 1);
    };
    const double T = std::max(20.0 * theta, 40.0 / s);
    const auto r = time_integral(f, T, 0.0, "verify_ilt_single");
    const double tail = 2.0 * std::abs(f(T)) / s;
    return finish(lambda, lhs, r, tail, z == 0.0);
}

double rescaled_kernel(const OUParams& p, double S, double x, double q, double t) {
    const double m = p.mean_level();
    return Rescaled{m - S, x - m, q, p}(t);
}

TransformCheck verify_ilt_rescaled(const OUParams& p, double S, double x, bool on_boundary,
                                   double q, double lambda) {
    if (on_boundary) x = S;
    check_transform_domain(p, S, x, on_boundary, q);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("verify_ilt_rescaled: lambda must be positive");
    const double m = p.mean_level();
    const double scale = std::sqrt(2.0 / (p.sigma2 * p.theta));
    const double lt = lambda * p.theta;
    const LogValue prod = gamma_pcf_pair(lt, -lt, scale * (m - S), q - lt, scale * (x - m));
    double lhs = from_log(prod.log_abs, prod.sign);
    const bool jump = on_boundary && q == 1.0;
    if (jump) lhs -= kSqrtHalfPi;

    const Rescaled f2{m - S, x - m, q, p};
    auto f = [&](double t) { return std::exp(-lambda * t) * f2(t); };
    const double T = std::max(20.0 * p.theta, 40.0 / lambda);
    const double beta = on_boundary ? (q == 1.0 ? 0.5 : 0.5 * (1.0 + q)) : 0.0;
    const auto r = time_integral(f, T, beta, "verify_ilt_rescaled");
    const double tail = 2.0 * std::abs(f(T)) / lambda;
    const bool vanishes = on_boundary && S == m && q == 1.0;
    return finish(lambda, lhs, r, tail, vanishes);
}

TransformCheck verify_convolution(const OUParams& p, double S, double x, bool on_boundary,
                                  double x0, double q, double lambda, const DensityFunction& g,
                                  double g_support) {
    if (on_boundary) x = S;
    check_transform_domain(p, S, x, on_boundary, q);
    if (!(x0 < S)) throw DomainError("verify_convolution: start must lie strictly below the threshold");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("verify_convolution: lambda must be positive");
    if (!(g_support > 0.0)) throw DomainError("verify_convolution: g_support must be positive");

    const double m = p.mean_level();
    const double th = p.theta;
    const double scale = std::sqrt(2.0 / (p.sigma2 * th));
    const double lt = lambda * th;
    const bool jump = on_boundary && q == 1.0;

    const double expo = ((x0 - m) * (x0 - m) - (S - m) * (S - m)) / (2.0 * p.sigma2 * th);
    const LogValue prod = gamma_pcf_pair(lt, -lt, scale * (m - x0), q - lt, scale * (x - m));
    double lhs = from_log(expo + prod.log_abs, prod.sign);
    if (jump) lhs -= kSqrtHalfPi * fpt_laplace(p, S, x0, lambda);

    const Rescaled f2{m - S, x - m, q, p};
    const double alpha = on_boundary ? (q >= 1.0 ? 0.5 : (q <= -1.0 ? 0.0 : 0.5 * (1.0 + q))) : 0.0;
    const double power = 2.0 / (1.0 - alpha);
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-12;
    inner_opt.abs_tol = 1e-300;
    inner_opt.max_panels = 2000;
    auto conv = [&](double t) {
        if (!(t > 0.0)) return 0.0;
        const double upper = std::min(t, g_support);
        double sum = 0.0;
        if (upper < t) {
            auto plain = [&](double tau) { return f2(t - tau) * g(tau); };
            sum = quad::integrate(plain, 0.0, upper, inner_opt).value;
        } else {
            const double half = 0.5 * t;
            auto early = [&](double tau) { return f2(t - tau) * g(tau); };
            auto late = [&](double w) {
                const double delta = std::pow(w, power);
                if (!(delta > 0.0)) return 0.0;
                return f2(delta) * g(t - delta) * power * std::pow(w, power - 1.0);
            };
            sum = quad::integrate(early, 0.0, half, inner_opt).value +
                  quad::integrate(late, 0.0, std::pow(half, 1.0 / power), inner_opt).value;
        }
        return std::exp(-lambda * t) * sum;
    };
    const double T = std::max(20.0 * th, 40.0 / lambda);
    std::vector<double> breaks = quad::graded_toward_left(0.0, T, 12);
    if (g_support < T) {
        breaks.push_back(g_support);
        std::sort(breaks.begin(), breaks.end());
    }
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-300;
    opt.max_panels = 400;
    const auto r = quad::integrate_panels(conv, breaks, opt);
    if (!std::isfinite(r.value)) throw QuadratureError("verify_convolution: non-finite quadrature");
    const double tail = 2.0 * std::abs(conv(T)) / lambda;
    return finish(lambda, lhs, r, tail, jump && S == m);
}

TransformCheck verify_convolution(const OUParams& p, double S, double x, bool on_boundary,
                                  double x0, double q, double lambda, const DensityCurve& curve) {
    const auto interp = interpolate(curve);
    return verify_convolution(p, S, x, on_boundary, x0, q, lambda,
                              [&](double t) { return interp(t); }, curve.times.back());
}

std::vector<TransformCase> transform_matrix() {
    std::vector<TransformCase> out;
    struct P { double c, q, y, z, lambda; };
    const P products[] = {
        {0.0, 0.0, 1.0, 1.0, 2.0},    {0.0, -1.0, 0.5, -0.5, 1.0}, {1.0, 0.0, 0.0, 0.0, 1.0},
        {1.0, 0.0, 0.5, -0.5, 1.0},   {0.5, 0.5, 0.3, -0.3, 1.5},  {0.0, 1.0, 0.0, 0.0, 0.7},
        {0.0, 2.0, 1.0, 0.5, 1.0},    {2.0, -3.0, -0.5, 1.5, 0.5}, {0.0, 0.5, 2.0, -1.0, 3.0},
        {0.0, -2.0, 1.0, 1.0, 1.0},   {-0.5, 0.0, 1.0, 1.0, 1.0},  {0.3, 0.2, 0.0, 1.0, 0.2},
        {1.0, -0.5, -1.0, 1.0, 0.25}, {0.0, 0.0, 3.0, 2.0, 5.0},   {0.0, 0.6, 0.0, 0.0, 1.0},
        {0.2, 0.3, 0.4, -0.4, 2.0},
    };
    for (const auto& c : products) {
        std::ostringstream os;
        os << "c=" << c.c << ";q=" << c.q << ";y=" << c.y << ";z=" << c.z << ";lambda=" << c.lambda;
        out.push_back({"product", os.str(), verify_ilt_product(c.c, c.q, c.y, c.z, c.lambda)});
    }
    struct Sg { double theta, z, lambda; };
    const Sg singles[] = {{1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {2.0, 0.5, 0.5}, {0.5, 2.0, 3.0},
                          {1.0, 0.1, 0.05}, {3.0, 1.5, -0.2}};
    for (const auto& c : singles) {
        std::ostringstream os;
        os << "theta=" << c.theta << ";z=" << c.z << ";lambda=" << c.lambda;
        out.push_back({"single", os.str(), verify_ilt_single(c.theta, c.z, c.lambda)});
    }
    struct R { double theta, mu, sigma2, S, x; bool boundary; double q, lambda; };
    const R rescaled[] = {
        {1.0, 0.0, 2.0, 1.0, 1.0, true, 1.0, 1.0},    {2.0, 0.5, 1.0, 0.5, 0.5, true, 0.0, 0.7},
        {1.0, 1.0, 2.0, 1.5, 2.0, false, 0.5, 1.0},   {0.5, 0.0, 1.0, -0.5, -0.5, true, -1.0, 2.0},
        {1.0, 0.0, 2.0, 0.5, 0.5, true, -2.0, 0.3},
    };
    for (const auto& c : rescaled) {
        std::ostringstream os;
        os << "theta=" << c.theta << ";mu=" << c.mu << ";sigma2=" << c.sigma2 << ";S=" << c.S
           << ";x=" << (c.boundary ? std::string("S") : std::to_string(c.x)) << ";q=" << c.q
           << ";lambda=" << c.lambda;
        const OUParams p{c.theta, c.mu, c.sigma2};
        out.push_back({"rescaled", os.str(), verify_ilt_rescaled(p, c.S, c.x, c.boundary, c.q, c.lambda)});
    }
    return out;
}

}  // namespace oufpt
