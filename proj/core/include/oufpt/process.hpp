#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "oufpt/interpolation.hpp"

namespace oufpt {

// Ornstein-Uhlenbeck process dX = (-X/theta + mu) dt + sigma dW.
struct OUParams {
    double theta = 1.0;   // time constant, > 0
    double mu = 0.0;      // drift level; the process reverts to mu * theta
    double sigma2 = 1.0;  // infinitesimal variance, > 0

    double mean_level() const { return mu * theta; }
    double sigma() const;
    // Throws DomainError unless theta > 0, sigma2 > 0 and all fields finite.
    void validate() const;
};

struct ConstantThreshold {
    double level = 0.0;
};

// S(t) = d1 e^{-t/theta} + d2 sinh(t/theta) + mu theta (1 - e^{-t/theta}).
// Closed-form first-passage densities exist for this family. Only d2 >= 0
// has been validated against Monte Carlo.
struct ExpThreshold {
    double d1 = 0.0;
    double d2 = 0.0;

    bool validated() const { return d2 >= 0.0; }
};

// Boundary known on a grid of knots, interpolated monotone-cubically.
class TabulatedThreshold {
public:
    TabulatedThreshold(std::vector<double> times, std::vector<double> levels);

    double operator()(double t) const;
    double t_min() const { return spline_.front(); }
    double t_max() const { return spline_.back(); }
    std::span<const double> times() const { return spline_.knots(); }
    std::span<const double> levels() const { return spline_.values(); }

private:
    MonotoneCubic spline_;
};

using Threshold = std::variant<ConstantThreshold, ExpThreshold, TabulatedThreshold>;

bool is_constant(const Threshold& th);
std::string describe(const Threshold& th);

/// S(t). Throws RangeError outside a tabulated domain and DomainError for t < 0.
double threshold_value(const Threshold& th, const OUParams& p, double t);

/// Gaussian transition density f(x, t | x0):
/// mean mu theta + (x0 - mu theta) e^{-t/theta}, variance sigma2 theta (1 - e^{-2t/theta}) / 2.
double transition_pdf(const OUParams& p, double x, double t, double x0);

/// Closed-form FPT density through the exponential threshold family.
/// Requires x0 < d1 and t > 0.
double fpt_pdf_exp_threshold(const OUParams& p, double d1, double d2, double x0, double t);

/// Closed-form FPT density through the constant threshold S = mu theta.
/// Requires x0 < mu theta and t > 0.
double fpt_pdf_mean_threshold(const OUParams& p, double x0, double t);

// Solver provenance carried with a density curve for serialization.
struct CurveInfo {
    double q = 1.0;
    bool on_boundary = true;
    double x = 0.0;  // evaluation abscissa when !on_boundary
    std::string scheme;
    std::size_t n_steps = 0;
    double t_max = 0.0;
};

// First-passage-time density sampled on a strictly increasing positive grid.
struct DensityCurve {
    std::vector<double> times;
    std::vector<double> values;
    OUParams params;
    Threshold threshold = ConstantThreshold{};
    double x0 = 0.0;
    CurveInfo info;

    std::size_t size() const { return times.size(); }
    double max_value() const;
    // Trapezoid integral over [0, times.back()] with g(0) = 0.
    double mass() const;
};

/// Monotone-cubic interpolant of a curve, anchored at g(0) = 0.
MonotoneCubic interpolate(const DensityCurve& curve);

/// Throws NumericalError naming the node if any value < -tol * max.
void check_nonnegative(const DensityCurve& curve, double tol);

/// Throws NumericalError naming the node where the cumulative trapezoid
/// integral first exceeds 1 + tol.
void check_mass(const DensityCurve& curve, double tol);

namespace detail {
// 1 - e^{-a} without cancellation for small a.
double one_minus_exp_neg(double a);
}  // namespace detail

}  // namespace oufpt
