#include "oufpt/process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oufpt/errors.hpp"

namespace oufpt {

namespace {

constexpr double kLogUnderflow = -700.0;

double exp_or_zero(double log_value) {
    if (!(log_value > kLogUnderflow)) return 0.0;
    return std::exp(log_value);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

namespace detail {
double one_minus_exp_neg(double a) { return -std::expm1(-a); }
}  // namespace detail

double OUParams::sigma() const { return std::sqrt(sigma2); }

void OUParams::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(mu) || !std::isfinite(sigma2))
        throw DomainError("OUParams: parameters must be finite");
    if (!(theta > 0.0)) throw DomainError("OUParams: theta must be > 0");
    if (!(sigma2 > 0.0)) throw DomainError("OUParams: sigma2 must be > 0");
}

TabulatedThreshold::TabulatedThreshold(std::vector<double> times, std::vector<double> levels)
    : spline_(std::move(times), std::move(levels)) {}

double TabulatedThreshold::operator()(double t) const {
    if (t < t_min() || t > t_max())
        throw RangeError("TabulatedThreshold: t outside the tabulated domain");
    return spline_(t);
}

bool is_constant(const Threshold& th) { return std::holds_alternative<ConstantThreshold>(th); }

std::string describe(const Threshold& th) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const ConstantThreshold& c) { os << "constant(S=" << c.level << ")"; },
                   [&](const ExpThreshold& e) { os << "exp(d1=" << e.d1 << ", d2=" << e.d2 << ")"; },
                   [&](const TabulatedThreshold& t) {
                       os << "tabulated(" << t.times().size() << " knots on [" << t.t_min()
                          << ", " << t.t_max() << "])";
                   },
               },
               th);
    return os.str();
}

double threshold_value(const Threshold& th, const OUParams& p, double t) {
    if (!(t >= 0.0)) throw DomainError("threshold_value: t must be >= 0");
    return std::visit(overloaded{
                          [](const ConstantThreshold& c) { return c.level; },
                          [&](const ExpThreshold& e) {
                              const double u = t / p.theta;
                              return e.d1 * std::exp(-u) + e.d2 * std::sinh(u) +
                                     p.mean_level() * detail::one_minus_exp_neg(u);
                          },
                          [&](const TabulatedThreshold& tab) { return tab(t); },
                      },
                      th);
}

double transition_pdf(const OUParams& p, double x, double t, double x0) {
    p.validate();
    if (!(t > 0.0)) throw DomainError("transition_pdf: t must be > 0");
    const double m = p.mean_level();
    const double one_m = detail::one_minus_exp_neg(2.0 * t / p.theta);
    const double v = p.sigma2 * p.theta * one_m;  // = 2 * variance
    const double dev = (x - m) - (x0 - m) * std::exp(-t / p.theta);
    return exp_or_zero(-dev * dev / v - 0.5 * std::log(std::numbers::pi * v));
}

double fpt_pdf_exp_threshold(const OUParams& p, double d1, double d2, double x0, double t) {
    p.validate();
    if (!(x0 < d1)) throw DomainError("fpt_pdf_exp_threshold: requires x0 < d1 = S(0)");
    if (!(t > 0.0)) throw DomainError("fpt_pdf_exp_threshold: t must be > 0");
    const double u = t / p.theta;
    const double one_m = detail::one_minus_exp_neg(2.0 * u);
    const double num = (d1 - x0) * std::exp(-u) + d2 * std::sinh(u);
    const double quad = num * num / (p.sigma2 * p.theta * one_m);
    if (!std::isfinite(quad)) return 0.0;
    const double log_g = std::log(2.0 * (d1 - x0)) -
                         std::log(p.sigma() * std::pow(p.theta, 1.5) * std::sqrt(std::numbers::pi)) -
                         u - 1.5 * std::log(one_m) - quad;
    return exp_or_zero(log_g);
}

double fpt_pdf_mean_threshold(const OUParams& p, double x0, double t) {
    p.validate();
    const double m = p.mean_level();
    if (!(x0 < m)) throw DomainError("fpt_pdf_mean_threshold: requires x0 < mu theta");
    if (!(t > 0.0)) throw DomainError("fpt_pdf_mean_threshold: t must be > 0");
    const double u = t / p.theta;
    const double one_m = detail::one_minus_exp_neg(2.0 * u);
    // e^{-2u} / (1 - e^{-2u}) = 1 / (e^{2u} - 1)
    const double quad = (x0 - m) * (x0 - m) / (p.sigma2 * p.theta * std::expm1(2.0 * u));
    const double log_g = std::log(2.0 * (m - x0)) -
                         std::log(p.sigma() * std::pow(p.theta, 1.5) * std::sqrt(std::numbers::pi)) -
                         u - 1.5 * std::log(one_m) - quad;
    return exp_or_zero(log_g);
}

double DensityCurve::max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

double DensityCurve::mass() const {
    double total = 0.0;
    double t_prev = 0.0, g_prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        total += 0.5 * (times[i] - t_prev) * (values[i] + g_prev);
        t_prev = times[i];
        g_prev = values[i];
    }
    return total;
}

MonotoneCubic interpolate(const DensityCurve& curve) {
    std::vector<double> t;
    std::vector<double> g;
    t.reserve(curve.size() + 1);
    g.reserve(curve.size() + 1);
    if (curve.times.empty() || curve.times.front() > 0.0) {
        t.push_back(0.0);
        g.push_back(0.0);
    }
    t.insert(t.end(), curve.times.begin(), curve.times.end());
    g.insert(g.end(), curve.values.begin(), curve.values.end());
    return MonotoneCubic(std::move(t), std::move(g));
}

void check_nonnegative(const DensityCurve& curve, double tol) {
    const double floor = -tol * curve.max_value();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.values[i] < floor) {
            std::ostringstream os;
            os.precision(6);
            os << "negative density " << curve.values[i] << " at node " << i << " (t = "
               << curve.times[i] << ")";
            throw NumericalError(os.str(), i);
        }
    }
}

void check_mass(const DensityCurve& curve, double tol) {
    double mass = 0.0, prev_t = 0.0, prev_g = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        mass += 0.5 * (curve.times[i] - prev_t) * (curve.values[i] + prev_g);
        prev_t = curve.times[i];
        prev_g = curve.values[i];
        if (mass > 1.0 + tol) {
            std::ostringstream os;
            os.precision(6);
            os << "cumulative mass " << mass << " exceeds 1 at node " << i << " (t = " << curve.times[i] << ")";
            throw NumericalError(os.str(), i);
        }
    }
}

}  // namespace oufpt
