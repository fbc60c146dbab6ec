#pragma once

#include <string>
#include <vector>

#include "oufpt/process.hpp"
#include "oufpt/solver.hpp"

namespace oufpt {

// A closed-form transform value checked against quadrature of its
// time-domain side.
struct TransformCheck {
    double lambda = 0.0;
    double lhs = 0.0;         // closed form
    double rhs = 0.0;         // quadrature
    double rel_err = 0.0;     // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
    double abs_err = 0.0;     // |lhs - rhs|
    double quad_error = 0.0;  // quadrature error estimate including the truncated tail
    bool rhs_vanishes = false;  // time-domain integrand is identically zero

    // rel_err <= tol; when the time-domain side vanishes identically the
    // closed form must instead be zero to within 1e-10.
    bool passes(double tol) const;
};

/// Laplace transform of the FPT density through a constant threshold S,
/// evaluated in log space. Throws DomainError unless x0 < S and lambda > 0,
/// and NumericalError when |D_{-lambda theta}(sqrt(2/(sigma2 theta))(mu theta - S))| < 1e-300.
double fpt_laplace(const OUParams& p, double S, double x0, double lambda);

/// Gamma[lambda + c] D_{-c-lambda}(y) D_{q-lambda}(z) - sqrt(pi/2) 1{y + z = 0, c + q = 1}
/// against the quadrature of
///   int_0^inf e^{-(lambda+c)t} (1 - e^{-2t})^{-(1+c+q)/2}
///     exp(-(y + z e^{-t})^2 / (4 (1 - e^{-2t}))) D_{c+q}((z + y e^{-t}) / sqrt(1 - e^{-2t})) dt.
/// Requires lambda + c > 0 and either y + z > 0 or (y + z = 0 and c + q <= 1).
TransformCheck verify_ilt_product(double c, double q, double y, double z, double lambda);

/// 2^{theta lambda/2} Gamma[(1 + lambda theta)/2] D_{-lambda theta}(z) - sqrt(pi) 1{z = 0}
/// against the quadrature of
///   int_0^inf e^{-lambda t} (sqrt2/theta) z e^{-t/theta} (1 - e^{-2t/theta})^{-3/2}
///     exp(-z^2 (1 + e^{-2t/theta}) / (4 (1 - e^{-2t/theta}))) dt.
/// Requires theta > 0, z >= 0 and lambda + 1/theta > 0.
TransformCheck verify_ilt_single(double theta, double z, double lambda);

/// The product transform after time scaling by theta with c = 0,
/// y = sqrt(2/(sigma2 theta))(mu theta - S), z = sqrt(2/(sigma2 theta))(x - mu theta):
///   Gamma[lambda theta] D_{-lambda theta}(y) D_{q - lambda theta}(z) - sqrt(pi/2) 1{x = S, q = 1}
/// against int_0^inf e^{-lambda t} f2(t) dt. `on_boundary` declares x = S.
TransformCheck verify_ilt_rescaled(const OUParams& p, double S, double x, bool on_boundary,
                                   double q, double lambda);

/// The time-domain kernel f2(t) of the rescaled transform (its regular part).
double rescaled_kernel(const OUParams& p, double S, double x, double q, double t);

/// Laplace transform of the convolution of g with the rescaled kernel,
///   Gamma[lambda theta] exp(((x0 - mu theta)^2 - (S - mu theta)^2) / (2 sigma2 theta))
///     D_{-lambda theta}(y_x0) D_{q-lambda theta}(z_x) - sqrt(pi/2) 1{x=S,q=1} g_lambda(S|x0),
/// against the double quadrature
///   int_0^T e^{-lambda t} int_0^t f2(t - tau) g(tau) dtau dt.
/// g is treated as zero beyond g_support (pass infinity for a closed form).
/// At x = S = mu theta with q = 1 the kernel vanishes identically.
TransformCheck verify_convolution(const OUParams& p, double S, double x, bool on_boundary,
                                  double x0, double q, double lambda, const DensityFunction& g,
                                  double g_support);

/// Convolution check with g taken from a solver curve (zero beyond its last node).
TransformCheck verify_convolution(const OUParams& p, double S, double x, bool on_boundary,
                                  double x0, double q, double lambda, const DensityCurve& curve);

struct TransformCase {
    std::string family;  // "product", "single", "rescaled"
    std::string inputs;  // key=value pairs separated by ';'
    TransformCheck check;
};

/// The shipped matrix of product, single-function and rescaled transform pairs.
std::vector<TransformCase> transform_matrix();

}  // namespace oufpt
