#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Parameter sets for the stochastic Hopf normal form
//
//   dZ = F(Z) dt + sigma dW,   F(Z) = [[alpha,-beta],[beta,alpha]] Z
//                                     - |Z|^2 [[a,-b],[b,a]] Z
//
// and for its large-shear / small-noise rescaling b = b'/eps, sigma = eps*sigma'.
// Throughout, alpha > 0 and a > 0 so the deterministic system has an attracting
// limit cycle of radius rhat = sqrt(alpha/a).

namespace hopf {

struct HopfParams {
    double alpha = 1.0;   // linear instability of the focus
    double beta  = 1.0;   // linear rotation speed
    double a     = 1.0;   // cubic radial damping
    double b     = 0.0;   // cubic shear (radius-dependent twist)
    double sigma = 0.0;   // additive noise strength

    double limit_radius() const { return std::sqrt(alpha / a); }

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
        if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
        if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(a) ||
            !std::isfinite(b) || !std::isfinite(sigma))
            throw std::invalid_argument("parameters must be finite");
    }
};

// Rescaled shear/noise pair: the physical parameters are b = b_prime/eps and
// sigma = eps*sigma_prime. eps = 1 recovers the plain parametrization.
struct ShearScaling {
    double b_prime     = 0.0;
    double sigma_prime = 0.0;
    double eps         = 1.0;

    void validate() const {
        if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
        if (!(sigma_prime >= 0.0)) throw std::invalid_argument("sigma_prime must be >= 0");
    }
};

// Core parameters of the rescaled family: (alpha, a) plus the scaling pair.
struct ScaledHopfParams {
    double alpha = 1.0;
    double beta  = 1.0;
    double a     = 1.0;
    ShearScaling scaling;

    double limit_radius() const { return std::sqrt(alpha / a); }

    HopfParams physical() const {
        HopfParams p;
        p.alpha = alpha;
        p.beta  = beta;
        p.a     = a;
        p.b     = scaling.b_prime / scaling.eps;
        p.sigma = scaling.eps * scaling.sigma_prime;
        p.validate();
        return p;
    }

    void validate() const {
        scaling.validate();
        physical();
    }
};

// Parameters of the simplified cylinder model
//
//   ds = -alpha_hat s dt + sigma_hat theta dW,   dtheta = -b_hat s dt.
//
// Its top Lyapunov exponent depends on (alpha_hat, b_hat, sigma_hat) only
// through zeta = b_hat^2 sigma_hat^2 / alpha_hat^3 and an overall factor
// alpha_hat (see psi.hpp).
struct SimplifiedParams {
    double alpha_hat = 1.0;
    double b_hat     = 1.0;
    double sigma_hat = 1.0;

    double zeta() const {
        return b_hat * b_hat * sigma_hat * sigma_hat /
               (alpha_hat * alpha_hat * alpha_hat);
    }

    void validate() const {
        if (!(alpha_hat > 0.0)) throw std::invalid_argument("alpha_hat must be > 0");
        if (!std::isfinite(alpha_hat) || !std::isfinite(b_hat) || !std::isfinite(sigma_hat))
            throw std::invalid_argument("parameters must be finite");
    }
};

// Map from the rescaled Hopf family to the simplified model obtained in the
// eps -> 0 limit when the radius is pinned at rhat:
//   alpha_hat = 2 alpha, b_hat = 2 alpha b'/a, sigma_hat = sigma' sqrt(a/alpha).
inline SimplifiedParams to_hat_params(double alpha, double a, double b_prime,
                                      double sigma_prime) {
    if (!(alpha > 0.0) || !(a > 0.0))
        throw std::invalid_argument("to_hat_params: alpha and a must be > 0");
    SimplifiedParams h;
    h.alpha_hat = 2.0 * alpha;
    h.b_hat     = 2.0 * alpha * b_prime / a;
    h.sigma_hat = sigma_prime * std::sqrt(a / alpha);
    return h;
}

// zeta expressed directly in the rescaled Hopf parameters; algebraically equal
// to to_hat_params(...).zeta().
inline double effective_zeta(double alpha, double a, double b_prime,
                             double sigma_prime) {
    return b_prime * b_prime * sigma_prime * sigma_prime /
           (2.0 * alpha * alpha * a);
}

}  // namespace hopf
