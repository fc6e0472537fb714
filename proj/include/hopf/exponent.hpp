#pragma once

#include "hopf/params.hpp"
#include "hopf/quadrature.hpp"

// Semi-explicit Lyapunov exponent of the simplified cylinder model.
//
// The squared projective variable of the simplified model has a stationary
// density on (0,inf) proportional to
//
//   w(zeta, u) = u^{-1/2} exp(-(u^3/6 - u/2)/zeta),
//
// and the top Lyapunov exponent is alpha_hat * normalized_exponent(zeta) with
//
//   normalized_exponent(zeta) = ( E_w[u] - 1 ) / 2.
//
// normalized_exponent is negative for small zeta, positive for large zeta,
// and crosses zero exactly once; chaos_threshold() locates that root.

namespace hopf {

struct ExponentConfig {
    quad::QuadratureConfig quadrature{};  // abs_tol drives the truncation too
};

// Unnormalized stationary weight of the squared projective variable.
double stationary_weight(double zeta, double u);

// Upper truncation point in u beyond which the weight's tail mass is below
// abs_tol/10: max(10, (6 zeta ln(1/abs_tol))^{1/3} + 5).
double upper_truncation(double zeta, double abs_tol);

// Total mass of the weight (the normalizing constant). Overflows for
// zeta < ~0.005; the exponent itself stays finite there because it only
// needs the ratio of two integrals.
double weight_mass(double zeta, const ExponentConfig& cfg = {});

struct ExponentValue {
    double value = 0.0;       // normalized exponent, Lyapunov / alpha_hat
    double err_bound = 0.0;   // propagated quadrature error bound
};

ExponentValue normalized_exponent_checked(double zeta,
                                          const ExponentConfig& cfg = {});

inline double normalized_exponent(double zeta, const ExponentConfig& cfg = {}) {
    return normalized_exponent_checked(zeta, cfg).value;
}

// alpha_hat * normalized_exponent(zeta(params)); scale-invariances of zeta
// make this invariant under (b,s) -> (g b, s/g) and equivariant of degree one
// under (a,b,s) -> (d a, d b, sqrt(d) s).
double simplified_lyapunov(const SimplifiedParams& p,
                           const ExponentConfig& cfg = {});

struct ThresholdResult {
    double value = 0.0;       // the root
    double exponent_at_root = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;  // initial bracket
    int iterations = 0;
};

// Unique zero of the normalized exponent, bracketed in [3, 4] and bisected
// until |normalized_exponent(root)| <= value_tol.
ThresholdResult chaos_threshold_detailed(double value_tol = 1e-8,
                                         const ExponentConfig& cfg = {});

inline double chaos_threshold(double value_tol = 1e-8,
                              const ExponentConfig& cfg = {}) {
    return chaos_threshold_detailed(value_tol, cfg).value;
}

}  // namespace hopf
