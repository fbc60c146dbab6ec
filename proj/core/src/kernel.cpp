#include "oufpt/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "oufpt/errors.hpp"

namespace oufpt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Shared core of K and R: elapsed time `delta` and offset
// a = (x - mu theta) - (from - mu theta) e^{-delta/theta}.
LogValue pcf_kernel_log(const OUParams& p, double q, double a, double delta) {
    const double u = delta / p.theta;
    const double one_m = detail::one_minus_exp_neg(2.0 * u);
    const double z = std::numbers::sqrt2 * a / std::sqrt(p.sigma2 * p.theta * one_m);
    if (!std::isfinite(z)) return {kNegInf, 0};
    const LogValue d = pcf_log(q, z);
    if (d.sign == 0) return d;
    const double log_abs = -0.5 * (1.0 + q) * std::log(one_m) - 0.25 * z * z + d.log_abs;
    return {log_abs, d.sign};
}

// Offset a for the kernel at (t, t - delta). On the boundary the constant and
// exponential-family thresholds admit forms free of cancellation as delta -> 0:
//   constant:    (S - mu theta)(1 - e^{-delta/theta})
//   exponential: d2 e^{t/theta} (1 - e^{-2 delta/theta}) / 2
double kernel_offset(const KernelSpec& spec, double t, double delta) {
    const OUParams& p = spec.params;
    const double m = p.mean_level();
    const double u = delta / p.theta;
    const double tau = t - delta;
    if (spec.abscissa.on_boundary) {
        if (const auto* c = std::get_if<ConstantThreshold>(&spec.threshold))
            return (c->level - m) * detail::one_minus_exp_neg(u);
        if (const auto* e = std::get_if<ExpThreshold>(&spec.threshold))
            return 0.5 * e->d2 * std::exp(t / p.theta) * detail::one_minus_exp_neg(2.0 * u);
        const double st = spec.threshold_at(t), stau = spec.threshold_at(tau);
        return (st - stau) + (stau - m) * detail::one_minus_exp_neg(u);
    }
    return (spec.abscissa.x - m) - (spec.threshold_at(tau) - m) * std::exp(-u);
}

double log_prefactor_second_kind(const OUParams& p) {
    return std::log(2.0 / (p.sigma() * std::pow(p.theta, 1.5) * std::sqrt(std::numbers::pi)));
}

// (e^{a} - 1)/a style ratios: (1 - e^{-u}) / u, continuous through u = 0.
double ratio_one_minus_exp(double u) {
    if (u == 0.0) return 1.0;
    return -std::expm1(-u) / u;
}

}  // namespace

void KernelSpec::validate() const {
    params.validate();
    if (!std::isfinite(q)) throw DomainError("KernelSpec: q must be finite");
    if (!std::isfinite(x0)) throw DomainError("KernelSpec: x0 must be finite");
    const double s0 = threshold_at(0.0);
    if (!(x0 < s0)) throw DomainError("KernelSpec: requires x0 < S(0)");
    if (abscissa.on_boundary) {
        if (q > 1.0) throw DomainError("KernelSpec: on the boundary the order must satisfy q <= 1");
    } else if (!(abscissa.x >= s0)) {
        throw DomainError("KernelSpec: fixed abscissa must satisfy x >= S(t)");
    }
}

double KernelSpec::x_at(double t) const {
    if (abscissa.on_boundary) return threshold_at(t);
    return abscissa.x;
}

double KernelSpec::jump_coefficient() const {
    return is_second_kind() ? params.theta * std::sqrt(0.5 * std::numbers::pi) : 0.0;
}

double KernelSpec::diagonal_exponent() const {
    if (!abscissa.on_boundary || q <= -1.0) return 0.0;
    // D_1(0) = 0 removes half a power: K ~ h^{-1} * sqrt(h).
    if (q == 1.0) return 0.5;
    return 0.5 * (1.0 + q);
}

LogValue kernel_K_lag_log(const KernelSpec& spec, double t, double delta) {
    if (!(delta > 0.0 && delta <= t)) throw DomainError("kernel_K: requires 0 < t - tau <= t");
    if (!spec.abscissa.on_boundary && spec.abscissa.x < spec.threshold_at(t))
        throw DomainError("kernel_K: fixed abscissa below S(t)");
    return pcf_kernel_log(spec.params, spec.q, kernel_offset(spec, t, delta), delta);
}

double kernel_K_lag(const KernelSpec& spec, double t, double delta) {
    return kernel_K_lag_log(spec, t, delta).value();
}

LogValue kernel_K_log(const KernelSpec& spec, double t, double tau) {
    if (!(tau >= 0.0 && tau < t)) throw DomainError("kernel_K: requires 0 <= tau < t");
    return kernel_K_lag_log(spec, t, t - tau);
}

double kernel_K(const KernelSpec& spec, double t, double tau) {
    return kernel_K_log(spec, t, tau).value();
}

double rhs_R(const KernelSpec& spec, double t) {
    if (!(t > 0.0)) throw DomainError("rhs_R: t must be > 0");
    const double m = spec.params.mean_level();
    const double a = (spec.x_at(t) - m) - (spec.x0 - m) * std::exp(-t / spec.params.theta);
    return pcf_kernel_log(spec.params, spec.q, a, t).value();
}

namespace second_kind {

double inhomogeneous(const OUParams& p, double S, double x0, double t) {
    if (!(t > 0.0)) throw DomainError("second-kind inhomogeneous term: t must be > 0");
    const double m = p.mean_level();
    const double u = t / p.theta;
    const double one_m = detail::one_minus_exp_neg(2.0 * u);
    const double b = (S - m) - (x0 - m) * std::exp(-u);
    if (b == 0.0) return 0.0;
    const double log_abs = log_prefactor_second_kind(p) + std::log(std::abs(b)) -
                           1.5 * std::log(one_m) - b * b / (p.sigma2 * p.theta * one_m);
    if (log_abs < -700.0) return 0.0;
    return (b > 0 ? 1.0 : -1.0) * std::exp(log_abs);
}

double singular_constant(const OUParams& p, double S) {
    return (S - p.mean_level()) / (p.sigma() * p.theta * std::sqrt(2.0 * std::numbers::pi));
}

double kernel_regular_part(const OUParams& p, double S, double delta) {
    const double a = S - p.mean_level();
    const double u = delta / p.theta;
    const double e1 = ratio_one_minus_exp(u);
    const double e2 = ratio_one_minus_exp(2.0 * u);
    return singular_constant(p, S) * e1 / std::pow(e2, 1.5) *
           std::exp(-a * a * std::tanh(0.5 * u) / (p.sigma2 * p.theta));
}

double kernel(const OUParams& p, double S, double delta) {
    if (!(delta > 0.0)) throw DomainError("second-kind kernel: requires tau < t");
    return kernel_regular_part(p, S, delta) / std::sqrt(delta);
}

}  // namespace second_kind

SecondKindTerms second_kind_terms(const KernelSpec& spec, double t, double tau) {
    const auto* c = std::get_if<ConstantThreshold>(&spec.threshold);
    if (!c) throw DomainError("second_kind_terms: requires a constant threshold");
    if (!spec.is_second_kind()) throw DomainError("second_kind_terms: requires x = S and q = 1");
    if (!(spec.x0 < c->level)) throw DomainError("second_kind_terms: requires x0 < S");
    if (!(tau >= 0.0 && tau < t)) throw DomainError("second_kind_terms: requires 0 <= tau < t");
    spec.params.validate();
    return {second_kind::inhomogeneous(spec.params, c->level, spec.x0, t),
            second_kind::kernel(spec.params, c->level, t - tau)};
}

}  // namespace oufpt
