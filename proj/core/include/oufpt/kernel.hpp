#pragma once

#include "oufpt/process.hpp"
#include "oufpt/special_functions.hpp"

namespace oufpt {

// Where the integral equation is imposed. On the boundary the abscissa
// follows the threshold, x(t) = S(t); otherwise it is a fixed level x >= S(t).
// The caller declares the regime explicitly; it is never inferred from
// floating-point equality of x and S(t).
struct Abscissa {
    bool on_boundary = true;
    double x = 0.0;

    static Abscissa boundary() { return {true, 0.0}; }
    static Abscissa fixed(double x) { return {false, x}; }
};

// One instance of the parabolic-cylinder integral equation
//   int_0^t K_q(t, tau) g(tau) dtau = R_q(t) - theta sqrt(pi/2) 1{on boundary, q = 1} g(t).
struct KernelSpec {
    double q = 0.0;
    Abscissa abscissa;
    Threshold threshold = ConstantThreshold{};
    OUParams params;
    double x0 = 0.0;

    // Throws DomainError when q > 1 on the boundary, x0 >= S(0), or a fixed
    // abscissa lies below S(0).
    void validate() const;
    double x_at(double t) const;
    double threshold_at(double t) const { return threshold_value(threshold, params, t); }
    bool is_second_kind() const { return abscissa.on_boundary && q == 1.0; }
    // Coefficient theta sqrt(pi/2) of g(t) outside the integral (0 unless second kind).
    double jump_coefficient() const;
    // alpha such that K(t, t-h) ~ h^{-alpha} as h -> 0 (0 when bounded).
    double diagonal_exponent() const;
};

/// K_q(t, tau) = (1 - e^{-2(t-tau)/theta})^{-(1+q)/2} e^{-z^2/4} D_q(z),
///   z = sqrt2 [(x - mu theta) - (S(tau) - mu theta) e^{-(t-tau)/theta}]
///       / sqrt(sigma2 theta (1 - e^{-2(t-tau)/theta})).
/// Requires 0 <= tau < t.
double kernel_K(const KernelSpec& spec, double t, double tau);
LogValue kernel_K_log(const KernelSpec& spec, double t, double tau);

/// The same kernel addressed by the lag delta = t - tau, 0 < delta <= t. Near
/// the diagonal this avoids the rounding of t - tau.
double kernel_K_lag(const KernelSpec& spec, double t, double delta);
LogValue kernel_K_lag_log(const KernelSpec& spec, double t, double delta);

/// R_q(t): the kernel expression with elapsed time t and x0 in place of S(tau).
double rhs_R(const KernelSpec& spec, double t);

struct SecondKindTerms {
    double inhomogeneous;  // F(t)
    double kernel2;        // k(t - tau)
};

/// The x = S, q = 1 arrangement g(t) = F(t) - int_0^t k(t - tau) g(tau) dtau
/// for a constant threshold S > x0.
SecondKindTerms second_kind_terms(const KernelSpec& spec, double t, double tau);

namespace second_kind {

// F(t) for constant threshold S.
double inhomogeneous(const OUParams& p, double S, double x0, double t);
// k(delta), delta > 0.
double kernel(const OUParams& p, double S, double delta);
// m(delta) = k(delta) sqrt(delta), analytic for every real delta (used by
// product integration, including its evaluation just past the diagonal).
double kernel_regular_part(const OUParams& p, double S, double delta);
// lim_{delta->0} k(delta) sqrt(delta) = (S - mu theta) / (sigma theta sqrt(2 pi)).
double singular_constant(const OUParams& p, double S);

}  // namespace second_kind

}  // namespace oufpt
