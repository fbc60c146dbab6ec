#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oufpt/kernel.hpp"
#include "oufpt/process.hpp"

namespace oufpt {

enum class Scheme {
    ProductTrapezoid,   // second kind; piecewise-linear product integration
    BlockByBlock,       // second kind; piecewise-quadratic product integration, two nodes per block
    MidpointFirstKind,  // first kind; midpoint collocation
};

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

struct SolverConfig {
    std::size_t n_steps = 512;
    double t_max = 5.0;
    Scheme scheme = Scheme::ProductTrapezoid;
    double tol_negative = 1e-8;
    double tol_mass = 5e-3;  // allowed excess of the cumulative mass over 1

    // Throws DomainError unless n_steps >= 8 and t_max > 0.
    void validate() const;
    double step() const { return t_max / static_cast<double>(n_steps); }
};

/// Solve g(t) = F(t) - int_0^t k(t - tau) g(tau) dtau (x = S, q = 1) for a
/// constant threshold S > x0 on t_i = i t_max / n, i = 1..n, with g(0) = 0.
/// The (t - tau)^{-1/2} singularity of k is integrated exactly against the
/// local interpolant. cfg.scheme must be ProductTrapezoid or BlockByBlock
/// (the latter needs an even n_steps).
/// Throws NumericalError if any g_i < -tol_negative * max g or the cumulative
/// mass exceeds 1 + tol_mass. For S < mu theta the kernel tends to a negative
/// constant at large lags and discretization error grows exponentially in t;
/// these checks are what reports it.
DensityCurve solve_second_kind(const OUParams& p, double S, double x0, const SolverConfig& cfg);

/// Solve int_0^t K_q(t, tau) g(tau) dtau = R_q(t) by collocation at t_i with
/// unknowns at the midpoints tau_{j+1/2}; the returned curve lives on the
/// midpoints. Where the kernel is weakly singular (on the boundary with
/// -1 < q < 1) the cell weights integrate the h^{-alpha} factor exactly; in
/// the regular regimes they reduce to h K(t_i, tau_{j+1/2}).
/// Throws IllConditionedError when a diagonal weight falls below 1e-13 of its
/// row maximum, and DomainError for the second-kind combination (boundary, q = 1).
DensityCurve solve_first_kind(const KernelSpec& spec, const SolverConfig& cfg);

/// Dispatch on cfg.scheme: the second-kind schemes require a constant threshold,
/// boundary abscissa and q = 1.
DensityCurve solve(const KernelSpec& spec, const SolverConfig& cfg);

struct ResidualPoint {
    double t = 0.0;
    double integral = 0.0;  // int_0^t K g
    double rhs = 0.0;       // R_q(t)
    double jump = 0.0;      // theta sqrt(pi/2) 1{second kind} g(t)
    double residual = 0.0;  // integral - rhs + jump
    double quad_error = 0.0;
    bool converged = true;
};

using DensityFunction = std::function<double(double)>;

/// Residual of the integral equation at each requested time for a density
/// given as a function of time.
std::vector<ResidualPoint> residual(const KernelSpec& spec, const DensityFunction& g,
                                    const std::vector<double>& times, double rel_tol = 1e-10);

/// Residual at the curve's own grid, with g interpolated monotone-cubically.
std::vector<ResidualPoint> residual(const KernelSpec& spec, const DensityCurve& curve,
                                    double rel_tol = 1e-10);

namespace detail {

// Product-trapezoid weights for the interval whose far end lies k steps from
// the collocation node: {left, right} for unit step (multiply by sqrt(h)).
std::pair<double, double> abel_linear_weights(std::size_t k);

}  // namespace detail

}  // namespace oufpt
