#include "oufpt/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "oufpt/errors.hpp"
#include "oufpt/quadrature.hpp"

namespace oufpt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn2 = std::numbers::ln2;
constexpr double kHalfLn2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
constexpr double kEuler = 0.57721566490153286061;

// zeta(k) - 1 for k = 2, 3, ...
constexpr std::array<double, 40> kZetaMinusOne = {
    0.64493406684822644,     0.20205690315959429,     0.082323233711138192,
    0.036927755143369926,    0.01734306198444914,     0.0083492773819228268,
    0.0040773561979443394,   0.0020083928260822144,   0.00099457512781808534,
    0.00049418860411946456,  0.0002460865533080483,   0.00012271334757848915,
    6.1248135058704829e-5,   3.0588236307020494e-5,   1.5282259408651872e-5,
    7.6371976378997623e-6,   3.8172932649998399e-6,   1.9082127165539389e-6,
    9.5396203387279611e-7,   4.7693298678780646e-7,   2.3845050272773299e-7,
    1.1921992596531107e-7,   5.960818905125948e-8,    2.980350351465228e-8,
    1.4901554828365041e-8,   7.4507117898354295e-9,   3.7253340247884571e-9,
    1.862659723513049e-9,    9.3132743241966818e-10,  4.6566290650337841e-10,
    2.3283118336765055e-10,  1.164155017270052e-10,   5.8207720879027009e-11,
    2.9103850444970997e-11,  1.4551921891041984e-11,  7.275959835057481e-12,
    3.6379795473786512e-12,  1.8189896503070659e-12,  9.0949478402638893e-13,
    4.547473783042154e-13};

// ln Gamma(1 + x) for |x| <= 0.5 via the zeta series
//   ln Gamma(1+x) = -ln(1+x) + x(1 - gamma) + sum_{n>=2} (-1)^n (zeta(n)-1) x^n / n.
double log_gamma_1p(double x) {
    double sum = 0.0;
    double power = x * x;
    for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
        const int n = static_cast<int>(i) + 2;
        const double term = kZetaMinusOne[i] * power / n;
        sum += (n % 2 == 0) ? term : -term;
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
        power *= x;
    }
    return -std::log1p(x) + x * (1.0 - kEuler) + sum;
}

// Stirling series with Bernoulli corrections, accurate to ~1 ulp for x >= 10.
double log_gamma_stirling(double x) {
    constexpr std::array<double, 8> c = {1.0 / 12.0,      -1.0 / 360.0,       1.0 / 1260.0,
                                         -1.0 / 1680.0,   1.0 / 1188.0,       -691.0 / 360360.0,
                                         1.0 / 156.0,     -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + kHalfLn2Pi + series;
}

bool is_integer(double x) { return std::floor(x) == x; }

// Probabilists' Hermite He_n(z) as a LogValue (rescaled recurrence).
LogValue hermite_he_log(int n, double z, double* rel_error) {
    double prev = 1.0;  // He_0
    double cur = z;     // He_1
    double log_scale = 0.0;
    if (n == 0) {
        if (rel_error) *rel_error = 0.0;
        return {0.0, 1};
    }
    double cancel = 1.0;
    for (int k = 1; k < n; ++k) {
        const double a = z * cur;
        const double b = k * prev;
        const double next = a - b;
        const double mag = std::abs(a) + std::abs(b);
        if (next != 0.0) cancel += mag / std::abs(next);
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e200) {
            cur *= 1e-200;
            prev *= 1e-200;
            log_scale += 200.0 * std::numbers::ln10;
        }
    }
    if (rel_error) *rel_error = kEps * cancel;
    if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {std::log(std::abs(cur)) + log_scale, cur > 0 ? 1 : -1};
}

struct LogScaled {
    double log_value;
    double rel_error;
};

// log( e^{z^2/4} D_{-s}(z) ) = log( (1/Gamma(s)) int_0^inf t^{s-1} e^{-zt - t^2/2} dt )
// for s >= 1 and any real z.
LogScaled log_scaled_integral(double s, double z) {
    const double sm1 = s - 1.0;
    auto phi = [sm1, z](double t) {
        const double lead = sm1 == 0.0 ? 0.0 : sm1 * std::log(t);
        return lead - z * t - 0.5 * t * t;
    };

    // Maximiser of phi: t^2 + z t - (s - 1) = 0.
    double tstar;
    if (sm1 == 0.0) {
        tstar = std::max(0.0, -z);
    } else if (z >= 0.0) {
        tstar = 2.0 * sm1 / (z + std::sqrt(z * z + 4.0 * sm1));
    } else {
        tstar = 0.5 * (-z + std::sqrt(z * z + 4.0 * sm1));
    }
    const double phistar = (sm1 == 0.0 && tstar == 0.0) ? 0.0 : phi(tstar);
    double width;
    if (tstar > 0.0) {
        width = 1.0 / std::sqrt(sm1 / (tstar * tstar) + 1.0);
    } else {
        width = 1.0 / (1.0 + std::abs(z));
    }

    constexpr double kDrop = -46.0;  // e^-46 ~ 1e-20 of the peak
    double lo = 0.0;
    if (tstar > 0.0) {
        double d = width;
        while (tstar - d > 0.0 && phi(tstar - d) - phistar > kDrop) d *= 2.0;
        lo = std::max(0.0, tstar - d);
    }
    double d = width;
    while (phi(tstar + d) - phistar > kDrop) d *= 2.0;
    const double hi = tstar + d;

    auto integrand = [&](double t) {
        if (t <= 0.0) return (sm1 == 0.0) ? std::exp(-phistar) : 0.0;
        return std::exp(phi(t) - phistar);
    };

    const bool singular_left = lo == 0.0 && !is_integer(s) && tstar > 0.0;
    std::vector<double> breaks;
    const double main_lo = singular_left ? tstar : lo;
    breaks.push_back(main_lo);
    if (tstar > main_lo) breaks.push_back(tstar);
    for (double m : {1.0, 4.0}) {
        const double b = tstar + m * width;
        if (b > breaks.back() && b < hi) breaks.push_back(b);
    }
    breaks.push_back(hi);

    quad::Options opt;
    opt.rel_tol = 2e-14;
    opt.max_panels = 400;
    auto main_part = quad::integrate_panels(integrand, std::span<const double>(breaks), opt);
    double value = main_part.value;
    double err = main_part.abs_error;

    if (singular_left) {
        // t = u^4 on [0, tstar]: t^{s-1} dt = 4 u^{4s-1} du is at least C^3.
        auto sub = [&](double u) {
            const double u2 = u * u;
            const double t = u2 * u2;
            if (t <= 0.0) return 0.0;
            return 4.0 * u2 * u * std::exp(phi(t) - phistar);
        };
        quad::Options left_opt;
        left_opt.rel_tol = 2e-14;
        left_opt.abs_tol = 1e-16 * value;
        left_opt.max_panels = 400;
        auto left = quad::integrate(sub, 0.0, std::sqrt(std::sqrt(tstar)), left_opt);
        value += left.value;
        err += left.abs_error;
    }
    return {phistar + std::log(value) - log_gamma(s), err / value + 4.0 * kEps};
}

struct ScaledSum {
    double mantissa;
    double log_scale;
    double abs_sum;  // sum of |terms| at the same scale
};

// Kummer M(a, b, x) for x >= 0 by direct summation with dynamic rescaling.
ScaledSum kummer_m(double a, double b, double x) {
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    double log_scale = 0.0;
    const int kmax = static_cast<int>(x + 60.0 * std::sqrt(x + 1.0) + std::abs(a)) + 200;
    for (int k = 0; k < kmax; ++k) {
        term *= (a + k) * x / ((b + k) * (k + 1.0));
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(sum) > 1e250) {
            sum *= 1e-250;
            term *= 1e-250;
            abs_sum *= 1e-250;
            log_scale += 250.0 * std::numbers::ln10;
        }
        if (term == 0.0) break;
        if (k > x && std::abs(term) < 0.1 * kEps * std::abs(sum)) break;
    }
    return {sum, log_scale, abs_sum};
}

// D_nu(z) by the Maclaurin representation
//   D_nu(z) = 2^{nu/2} e^{-z^2/4} [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
//                                  - sqrt(2 pi) z / Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ].
LogValue pcf_maclaurin(double nu, double z, double* rel_error) {
    const double x = 0.5 * z * z;
    const double a = std::sqrt(std::numbers::pi) * reciprocal_gamma(0.5 * (1.0 - nu));
    const double b = std::sqrt(2.0 * std::numbers::pi) * reciprocal_gamma(-0.5 * nu);
    const ScaledSum m1 = kummer_m(-0.5 * nu, 0.5, x);
    const ScaledSum m2 = kummer_m(0.5 * (1.0 - nu), 1.5, x);
    const double common = std::max(m1.log_scale, m2.log_scale);
    const double s1 = std::exp(m1.log_scale - common);
    const double s2 = std::exp(m2.log_scale - common);
    const double t1 = a * m1.mantissa * s1;
    const double t2 = -b * z * m2.mantissa * s2;
    const double v = t1 + t2;
    const double mag = std::abs(a) * m1.abs_sum * s1 + std::abs(b * z) * m2.abs_sum * s2;
    if (rel_error) *rel_error = v != 0.0 ? 8.0 * kEps * mag / std::abs(v) : 1.0;
    if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {0.5 * nu * kLn2 - 0.25 * z * z + common + std::log(std::abs(v)), v > 0 ? 1 : -1};
}

// D_nu(z), z >= 0, nu > -1 (non-integer or in (-1, 0)): integral seeds at
// orders base-1 and base (both <= -1), then forward recurrence
//   E_{m+1} = z E_m - m E_{m-1},  E = e^{z^2/4} D.
LogValue pcf_recurrence(double nu, double z, double* rel_error) {
    const int steps = static_cast<int>(std::floor(nu)) + 2;
    const double base = nu - steps;  // in [-2, -1)
    const LogScaled lower = log_scaled_integral(-(base - 1.0), z);
    const LogScaled upper = log_scaled_integral(-base, z);
    const double ref = std::max(lower.log_value, upper.log_value);
    double prev = std::exp(lower.log_value - ref);
    double cur = std::exp(upper.log_value - ref);
    double log_scale = ref;
    double rel = std::max(lower.rel_error, upper.rel_error);
    double m = base;
    for (int k = 0; k < steps; ++k, m += 1.0) {
        const double t1 = z * cur;
        const double t2 = m * prev;
        const double next = t1 - t2;
        const double mag = std::abs(t1) + std::abs(t2);
        if (next != 0.0) rel = rel * mag / std::abs(next) + kEps;
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e200 || (std::abs(cur) < 1e-200 && cur != 0.0)) {
            const double f = std::log(std::abs(cur));
            prev /= std::abs(cur);
            cur = cur > 0 ? 1.0 : -1.0;
            log_scale += f;
        }
    }
    if (rel_error) *rel_error = rel;
    if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {log_scale + std::log(std::abs(cur)) - 0.25 * z * z, cur > 0 ? 1 : -1};
}

}  // namespace

double LogValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

double sin_pi(double x) {
    if (is_integer(x)) return 0.0;
    double r = std::fmod(x, 2.0);  // (-2, 2)
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r > 0.5) return std::sin(std::numbers::pi * (1.0 - r));
    if (r < -0.5) return -std::sin(std::numbers::pi * (1.0 + r));
    return std::sin(std::numbers::pi * r);
}

double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        if (x == std::numeric_limits<double>::infinity()) return x;
        throw DomainError("log_gamma: argument must be > 0");
    }
    if (x < 0.5) return log_gamma_1p(x) - std::log(x);
    if (x < 1.5) return log_gamma_1p(x - 1.0);
    if (x < 2.5) return std::log1p(x - 2.0) + log_gamma_1p(x - 2.0);
    if (x >= 10.0) return log_gamma_stirling(x);
    // Shift into the Stirling range: Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
    double prod = 1.0;
    double y = x;
    while (y < 10.0) {
        prod *= y;
        y += 1.0;
    }
    return log_gamma_stirling(y) - std::log(prod);
}

double reciprocal_gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("reciprocal_gamma: non-finite argument");
    if (x > 0.0) return std::exp(-log_gamma(x));
    if (is_integer(x)) return 0.0;
    // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
    return sin_pi(x) * std::exp(log_gamma(1.0 - x)) / std::numbers::pi;
}

LogValue pcf_log(double nu, double z, double* rel_error) {
    if (!std::isfinite(nu) || !std::isfinite(z))
        throw DomainError("pcf: order and argument must be finite");

    if (nu >= 0.0 && is_integer(nu) && nu <= 1000.0) {
        LogValue he = hermite_he_log(static_cast<int>(nu), z, rel_error);
        if (he.sign != 0) he.log_abs -= 0.25 * z * z;
        return he;
    }
    if (nu <= -1.0) {
        const LogScaled e = log_scaled_integral(-nu, z);
        if (rel_error) *rel_error = e.rel_error;
        return {e.log_value - 0.25 * z * z, 1};
    }
    if (z >= 0.0) return pcf_recurrence(nu, z, rel_error);
    return pcf_maclaurin(nu, z, rel_error);
}

PcfEval pcf(double nu, double z) {
    double rel = 0.0;
    const LogValue lv = pcf_log(nu, z, &rel);
    const double v = lv.value();
    // rounding floor: a few ulps plus exp() amplifying the error of its exponent
    if (lv.sign != 0) rel += kEps * (2.0 + 0.25 * z * z + std::abs(lv.log_abs));
    return {nu, z, v, std::abs(v) * rel};
}

double pcf_at_zero(double q) {
    if (!std::isfinite(q)) throw DomainError("pcf_at_zero: order must be finite");
    if (q >= 1.0 && is_integer(q) && std::fmod(q, 2.0) == 1.0)
        throw PoleError("pcf_at_zero: Gamma((1-q)/2) has a pole for q = 1, 3, 5, ...");
    return std::exp2(0.5 * q) * std::sqrt(std::numbers::pi) * reciprocal_gamma(0.5 * (1.0 - q));
}

std::optional<double> pcf_reduction(double q, double z) {
    if (!std::isfinite(q) || !std::isfinite(z)) return std::nullopt;
    if (q >= 0.0 && is_integer(q) && q <= 128.0) {
        const auto n = static_cast<unsigned>(q);
        return std::exp2(-0.5 * q) * std::exp(-0.25 * z * z) *
               std::hermite(n, z / std::numbers::sqrt2);
    }
    if (q < 0.0 && is_integer(q) && q >= -60.0) {
        const int n = static_cast<int>(-q) - 1;
        using ld = long double;
        const ld zz = z;
        const ld f0 = std::exp(zz * zz / 2) * std::erfc(zz / std::sqrt(ld{2}));
        if (!std::isfinite(static_cast<double>(f0))) return std::nullopt;
        // F = e^{z^2/2} erfc(z/sqrt2): F' = zF - sqrt(2/pi), F^{(k+1)} = z F^{(k)} + k F^{(k-1)}.
        ld prev = f0;
        ld cur = zz * f0 - std::sqrt(ld{2} / std::numbers::pi_v<ld>);
        if (n == 0) cur = f0;
        for (int k = 1; k < n; ++k) {
            const ld next = zz * cur + k * prev;
            prev = cur;
            cur = next;
        }
        ld fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        const ld sign = (n % 2 == 0) ? 1 : -1;
        const ld v = std::sqrt(std::numbers::pi_v<ld> / 2) * sign / fact *
                     std::exp(-zz * zz / 4) * cur;
        return static_cast<double>(v);
    }
    if (q == -0.5 && z > 0.0) {
        return std::sqrt(z / (2.0 * std::numbers::pi)) * std::cyl_bessel_k(0.25, 0.25 * z * z);
    }
    return std::nullopt;
}

}  // namespace oufpt
