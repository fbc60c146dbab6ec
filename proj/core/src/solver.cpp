#include "oufpt/solver.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "oufpt/errors.hpp"
#include "oufpt/quadrature.hpp"

namespace oufpt {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::ProductTrapezoid: return "product-trapezoid";
        case Scheme::BlockByBlock: return "block-by-block";
        case Scheme::MidpointFirstKind: return "midpoint-first-kind";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::ProductTrapezoid, Scheme::BlockByBlock, Scheme::MidpointFirstKind})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

void SolverConfig::validate() const {
    if (n_steps < 8) throw DomainError("solver: n_steps must be at least 8");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("solver: t_max must be positive");
    if (!(tol_negative >= 0.0)) throw DomainError("solver: tol_negative must be non-negative");
    if (!(tol_mass >= 0.0)) throw DomainError("solver: tol_mass must be non-negative");
}

namespace detail {

std::pair<double, double> abel_linear_weights(std::size_t k) {
    const double a = static_cast<double>(k) - 1.0;
    const double b = static_cast<double>(k);
    const double ra = std::sqrt(a), rb = std::sqrt(b);
    const double s = ra + rb;
    const double left = (2.0 / 3.0) * (1.0 + ra / s) / s;
    const double right = (2.0 / 3.0) * (1.0 + rb / s) / s;
    return {left, right};
}

}  // namespace detail

namespace {

struct Legendre20 {
    std::array<double, 20> x{}, w{};
    Legendre20() {
        constexpr int n = 20;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const Legendre20& legendre20() {
    static const Legendre20 rule;
    return rule;
}

// Moments int_0^len (c - u)^{-1/2} u^p du, p = 0, 1, 2, with c >= len.
std::array<double, 3> abel_moments(double c, double len) {
    std::array<double, 3> J{};
    const double lo = c - len;
    if (lo < 2.0) {
        const double rc = std::sqrt(c), rl = std::sqrt(lo);
        const double j0 = 2.0 * (rc - rl);
        const double j32 = (2.0 / 3.0) * (c * rc - lo * rl);
        const double j52 = (2.0 / 5.0) * (c * c * rc - lo * lo * rl);
        J[0] = j0;
        J[1] = c * j0 - j32;
        J[2] = c * c * j0 - 2.0 * c * j32 + j52;
        return J;
    }
    const auto& gl = legendre20();
    const double half = 0.5 * len;
    for (int i = 0; i < 20; ++i) {
        const double u = half * (1.0 + gl.x[i]);
        const double f = gl.w[i] * half / std::sqrt(c - u);
        J[0] += f;
        J[1] += f * u;
        J[2] += f * u * u;
    }
    return J;
}

// Weights of the quadratic Lagrange basis on nodes u = 0, 1, 2 against
// (c - u)^{-1/2} over [0, len].
std::array<double, 3> quadratic_weights(double c, double len) {
    const auto J = abel_moments(c, len);
    return {0.5 * (J[2] - 3.0 * J[1] + 2.0 * J[0]), 2.0 * J[1] - J[2], 0.5 * (J[2] - J[1])};
}

DensityCurve make_curve(std::vector<double> times, std::vector<double> values, const OUParams& p,
                        Threshold th, double x0, CurveInfo info) {
    DensityCurve c;
    c.times = std::move(times);
    c.values = std::move(values);
    c.params = p;
    c.threshold = std::move(th);
    c.x0 = x0;
    c.info = std::move(info);
    return c;
}

std::vector<double> product_trapezoid(const std::vector<double>& F, const std::vector<double>& m,
                                      double h) {
    // F[i], m[k] = m(k h) for i, k = 0..n.
    const std::size_t n = F.size() - 1;
    const double rh = std::sqrt(h);
    std::vector<double> c(n + 1);
    auto w1 = detail::abel_linear_weights(1);
    c[0] = rh * w1.second * m[0];
    for (std::size_t k = 1; k < n; ++k) {
        const auto wk = detail::abel_linear_weights(k);
        const auto wk1 = detail::abel_linear_weights(k + 1);
        c[k] = rh * m[k] * (wk.first + wk1.second);
    }
    const double denom = 1.0 + c[0];
    if (!(std::abs(denom) > 1e-12))
        throw IllConditionedError("product trapezoid: singular diagonal", 1);
    std::vector<double> g(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j < i; ++j) acc += c[i - j] * g[j];
        g[i] = (F[i] - acc) / denom;
        if (!std::isfinite(g[i])) throw NumericalError("product trapezoid: non-finite value", i);
    }
    return g;
}

std::vector<double> block_by_block(const std::vector<double>& F, const std::vector<double>& m_ext,
                                   double h) {
    // m_ext[k + 1] = m(k h) for k = -1..n.
    const std::size_t n = F.size() - 1;
    auto m = [&](long k) { return m_ext[static_cast<std::size_t>(k + 1)]; };
    const double rh = std::sqrt(h);
    std::vector<std::array<double, 3>> W(n + 1);
    for (std::size_t c = 2; c <= n; ++c) {
        W[c] = quadratic_weights(static_cast<double>(c), 2.0);
        for (double& w : W[c]) w *= rh;
    }
    auto H = quadratic_weights(1.0, 1.0);
    for (double& w : H) w *= rh;

    std::vector<double> g(n + 1, 0.0);
    auto history = [&](std::size_t i, std::size_t blocks) {
        double acc = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t c = i - 2 * b;
            for (std::size_t r = 0; r < 3; ++r) {
                const std::size_t j = 2 * b + r;
                acc += W[c][r] * m(static_cast<long>(i - j)) * g[j];
            }
        }
        return acc;
    };
    for (std::size_t B = 0; 2 * B + 2 <= n; ++B) {
        const std::size_t i1 = 2 * B + 1, i2 = 2 * B + 2;
        const double known1 = history(i1, B) + H[0] * m(1) * g[2 * B];
        const double known2 = history(i2, B) + W[2][0] * m(2) * g[2 * B];
        const double a11 = 1.0 + H[1] * m(0), a12 = H[2] * m(-1);
        const double a21 = W[2][1] * m(1), a22 = 1.0 + W[2][2] * m(0);
        const double r1 = F[i1] - known1, r2 = F[i2] - known2;
        const double det = a11 * a22 - a12 * a21;
        if (!(std::abs(det) > 1e-12 * std::abs(a11 * a22)))
            throw IllConditionedError("block-by-block: singular block system", i1);
        g[i1] = (r1 * a22 - a12 * r2) / det;
        g[i2] = (a11 * r2 - a21 * r1) / det;
        if (!std::isfinite(g[i1]) || !std::isfinite(g[i2]))
            throw NumericalError("block-by-block: non-finite value", i1);
    }
    return g;
}

}  // namespace

DensityCurve solve_second_kind(const OUParams& p, double S, double x0, const SolverConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!std::isfinite(S) || !std::isfinite(x0)) throw DomainError("solver: non-finite threshold or start");
    if (!(x0 < S)) throw DomainError("solver: start must lie strictly below the threshold");
    if (cfg.scheme == Scheme::MidpointFirstKind)
        throw DomainError("solve_second_kind: midpoint scheme solves the first-kind form");
    if (cfg.scheme == Scheme::BlockByBlock && cfg.n_steps % 2 != 0)
        throw DomainError("block-by-block: n_steps must be even");

    const std::size_t n = cfg.n_steps;
    const double h = cfg.step();
    std::vector<double> F(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i)
        F[i] = second_kind::inhomogeneous(p, S, x0, static_cast<double>(i) * h);

    std::vector<double> g;
    if (cfg.scheme == Scheme::ProductTrapezoid) {
        std::vector<double> m(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            m[k] = second_kind::kernel_regular_part(p, S, static_cast<double>(k) * h);
        g = product_trapezoid(F, m, h);
    } else {
        std::vector<double> m(n + 2);
        for (std::size_t k = 0; k <= n + 1; ++k)
            m[k] = second_kind::kernel_regular_part(p, S, (static_cast<double>(k) - 1.0) * h);
        g = block_by_block(F, m, h);
    }

    std::vector<double> times(n), values(n);
    for (std::size_t i = 1; i <= n; ++i) {
        times[i - 1] = static_cast<double>(i) * h;
        values[i - 1] = g[i];
    }
    CurveInfo info{1.0, true, S, std::string(to_string(cfg.scheme)), n, cfg.t_max};
    auto curve = make_curve(std::move(times), std::move(values), p, ConstantThreshold{S}, x0, info);
    check_nonnegative(curve, cfg.tol_negative);
    check_mass(curve, cfg.tol_mass);
    return curve;
}

DensityCurve solve_first_kind(const KernelSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (spec.is_second_kind())
        throw DomainError("solve_first_kind: q = 1 on the boundary is a second-kind equation");
    if (std::holds_alternative<TabulatedThreshold>(spec.threshold)) {
        const auto& tab = std::get<TabulatedThreshold>(spec.threshold);
        if (tab.t_min() > 0.0 || tab.t_max() < cfg.t_max)
            throw RangeError("solver: tabulated threshold does not cover [0, t_max]");
    }

    const std::size_t n = cfg.n_steps;
    const double h = cfg.step();
    const double alpha = spec.diagonal_exponent();
    const bool toeplitz = is_constant(spec.threshold);

    // Cell integrals of (t_i - tau)^{-alpha} over lag k.
    std::vector<double> mu(n + 1, 0.0), mid_pow(n + 1, 1.0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        if (alpha == 0.0) {
            mu[k] = h;
        } else {
            const double e = 1.0 - alpha;
            mu[k] = std::pow(h, e) * (std::pow(kd, e) - std::pow(kd - 1.0, e)) / e;
            mid_pow[k] = std::pow((kd - 0.5) * h, alpha);
        }
    }
    auto weight = [&](std::size_t i, std::size_t j) {
        const std::size_t k = i - j;
        const double t = static_cast<double>(i) * h;
        return kernel_K_lag(spec, t, (static_cast<double>(k) - 0.5) * h) * mid_pow[k] * mu[k];
    };
    std::vector<double> lag;
    if (toeplitz) {
        lag.resize(n + 1);
        for (std::size_t k = 1; k <= n; ++k) lag[k] = weight(k, 0);
    }

    std::vector<double> g(n, 0.0), row(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            row[j] = toeplitz ? lag[i - j] : weight(i, j);
            row_max = std::max(row_max, std::abs(row[j]));
        }
        const double diag = row[i - 1];
        if (!(std::abs(diag) >= 1e-13 * row_max) || row_max == 0.0) {
            std::ostringstream os;
            os << "midpoint collocation: diagonal weight " << diag << " against row maximum "
               << row_max << " at t = " << static_cast<double>(i) * h;
            throw IllConditionedError(os.str(), i - 1);
        }
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < i; ++j) acc += row[j] * g[j];
        g[i - 1] = (rhs_R(spec, static_cast<double>(i) * h) - acc) / diag;
        if (!std::isfinite(g[i - 1])) throw NumericalError("midpoint collocation: non-finite value", i - 1);
    }

    std::vector<double> times(n);
    for (std::size_t j = 0; j < n; ++j) times[j] = (static_cast<double>(j) + 0.5) * h;
    CurveInfo info{spec.q, spec.abscissa.on_boundary, spec.abscissa.x,
                   std::string(to_string(Scheme::MidpointFirstKind)), n, cfg.t_max};
    auto curve = make_curve(std::move(times), std::move(g), spec.params, spec.threshold, spec.x0, info);
    check_nonnegative(curve, cfg.tol_negative);
    check_mass(curve, cfg.tol_mass);
    return curve;
}

DensityCurve solve(const KernelSpec& spec, const SolverConfig& cfg) {
    if (cfg.scheme == Scheme::MidpointFirstKind) return solve_first_kind(spec, cfg);
    spec.validate();
    if (!spec.is_second_kind())
        throw DomainError("second-kind schemes need q = 1 on the boundary");
    if (!is_constant(spec.threshold))
        throw DomainError("second-kind schemes need a constant threshold");
    return solve_second_kind(spec.params, spec.threshold_at(0.0), spec.x0, cfg);
}

std::vector<ResidualPoint> residual(const KernelSpec& spec, const DensityFunction& g,
                                    const std::vector<double>& times, double rel_tol) {
    spec.validate();
    const double alpha = spec.diagonal_exponent();
    const double power = 2.0 / (1.0 - alpha);
    std::vector<ResidualPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        if (!(t > 0.0)) throw DomainError("residual: times must be positive");
        ResidualPoint r;
        r.t = t;
        r.rhs = rhs_R(spec, t);
        quad::Options opt;
        opt.rel_tol = rel_tol;
        opt.abs_tol = 1e-3 * rel_tol * std::abs(r.rhs);
        opt.max_panels = 2000;
        const double half = 0.5 * t;
        auto early = [&](double tau) { return kernel_K(spec, t, tau) * g(tau); };
        auto late = [&](double w) {
            const double delta = std::pow(w, power);
            if (!(delta > 0.0)) return 0.0;
            const double jac = power * std::pow(w, power - 1.0);
            return kernel_K_lag(spec, t, delta) * g(t - delta) * jac;
        };
        const auto a = quad::integrate(early, 0.0, half, opt);
        const auto b = quad::integrate(late, 0.0, std::pow(half, 1.0 / power), opt);
        r.integral = a.value + b.value;
        r.quad_error = a.abs_error + b.abs_error;
        r.converged = a.converged && b.converged;
        r.jump = spec.jump_coefficient() * g(t);
        r.residual = r.integral - r.rhs + r.jump;
        out.push_back(r);
    }
    return out;
}

std::vector<ResidualPoint> residual(const KernelSpec& spec, const DensityCurve& curve, double rel_tol) {
    const auto interp = interpolate(curve);
    return residual(spec, [&](double t) { return interp(t); }, curve.times, rel_tol);
}

}  // namespace oufpt
