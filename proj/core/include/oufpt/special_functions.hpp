#pragma once

#include <optional>

namespace oufpt {

// A signed quantity stored as sign * exp(log_abs). sign == 0 encodes an
// exact zero (log_abs is then -inf).
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;

    double value() const;
};

// One evaluation of the parabolic cylinder function D_nu(z).
struct PcfEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;
    double est_abs_error = 0.0;  // heuristic, >= 0
};

/// Parabolic cylinder function D_nu(z) for real order and argument.
///
/// Regimes:
///  - nu a non-negative integer: e^{-z^2/4} He_n(z) (probabilists' Hermite).
///  - nu <= -1: the Laplace-type integral
///        D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf t^{-nu-1} e^{-zt - t^2/2} dt,
///    valid for every real z and evaluated in log space.
///  - -1 < nu, z >= 0: two integral seeds at orders nu-k-1, nu-k (both <= -1)
///    followed by forward recurrence in the order, which is the stable
///    direction for non-negative arguments.
///  - -1 < nu, z < 0: the Maclaurin (Kummer) series, whose terms share the sign
///    of the dominant solution there.
///
/// Throws DomainError on non-finite input.
PcfEval pcf(double nu, double z);

/// Same as pcf() but returns log|D_nu(z)| and its sign so that products with
/// e^{-z^2/4}-type factors can be formed without underflow. If rel_error is
/// non-null it receives the heuristic relative error estimate.
LogValue pcf_log(double nu, double z, double* rel_error = nullptr);

/// D_q(0) = 2^{q/2} sqrt(pi) / Gamma((1-q)/2).
/// Throws PoleError for q in {1, 3, 5, ...}, where the gamma function in the
/// denominator has a pole.
double pcf_at_zero(double q);

/// Closed-form reductions of D_q(z), used as cross-check oracles:
///  - q = n >= 0 integer: 2^{-n/2} e^{-z^2/4} H_n(z / sqrt 2)
///  - q = -n-1, n >= 0:  sqrt(pi/2) (-1)^n / n! e^{-z^2/4} d^n/dz^n [e^{z^2/2} erfc(z/sqrt 2)]
///  - q = -1/2, z > 0:   sqrt(z / 2pi) K_{1/4}(z^2/4)
/// Returns nullopt when no reduction applies.
std::optional<double> pcf_reduction(double q, double z);

/// ln Gamma(x) for x > 0. Throws DomainError for x <= 0 or NaN.
double log_gamma(double x);

/// 1 / Gamma(x) for any finite real x (zero at the poles of Gamma).
double reciprocal_gamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

}  // namespace oufpt
