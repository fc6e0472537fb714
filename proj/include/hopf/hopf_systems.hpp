#pragma once

#include "hopf/params.hpp"
#include "hopf/sde.hpp"

#include <cmath>

// Concrete dynamics: the planar Hopf normal form with additive noise, its
// variational (tangent) flow, and the polar / tangent-frame / rescaled
// charts of the same process. All charts are driven by two scalar noises;
// in the polar-derived charts these are the radial and angular projections
// (W_r, W_phi) of the planar pair (W_1, W_2), which are again independent
// Brownian motions.
//
// Region guard: every chart containing 1/r terms declares states with
// r <= r_floor inadmissible; r_floor = 1e-6 * rhat by default. Callers
// decide the recovery policy (Lyapunov runs restart from a stationary
// radial sample, see lyapunov.hpp).

namespace hopf {

inline constexpr double kRadiusFloorFraction = 1e-6;

using Vec2 = sde::Vec<2>;
using Mat2 = sde::Mat<2, 2>;

// F(Z) = [[alpha,-beta],[beta,alpha]] Z - |Z|^2 [[a,-b],[b,a]] Z
inline Vec2 drift_field(const HopfParams& p, const Vec2& z) {
    const double n2 = z[0] * z[0] + z[1] * z[1];
    return {p.alpha * z[0] - p.beta * z[1] - n2 * (p.a * z[0] - p.b * z[1]),
            p.beta * z[0] + p.alpha * z[1] - n2 * (p.b * z[0] + p.a * z[1])};
}

// DF(Z) = [[alpha,-beta],[beta,alpha]] - |Z|^2 [[a,-b],[b,a]]
//         - 2 [[a,-b],[b,a]] Z Z^T
inline Mat2 drift_jacobian(const HopfParams& p, const Vec2& z) {
    const double n2 = z[0] * z[0] + z[1] * z[1];
    const double s1 = p.a * z[0] - p.b * z[1];  // [[a,-b],[b,a]] Z
    const double s2 = p.b * z[0] + p.a * z[1];
    Mat2 m;
    m[0][0] = p.alpha - n2 * p.a - 2.0 * s1 * z[0];
    m[0][1] = -p.beta + n2 * p.b - 2.0 * s1 * z[1];
    m[1][0] = p.beta - n2 * p.b - 2.0 * s2 * z[0];
    m[1][1] = p.alpha - n2 * p.a - 2.0 * s2 * z[1];
    return m;
}

// Planar process coupled with its variational flow: x = (z1, z2, y1, y2).
// Additive noise on Z only, so Ito and Stratonovich coincide; integrate with
// either scheme. Heun is required when |beta - b r^2| dt is not small, since
// Euler inflates the norm of rotating solutions at rate ~ omega^2 dt / 2.
struct CartesianSystem {
    static constexpr int dim = 4;
    static constexpr int noise_dim = 2;
    HopfParams p;

    void drift(const sde::Vec<4>& x, sde::Vec<4>& out) const {
        const Vec2 z{x[0], x[1]};
        const Vec2 f = drift_field(p, z);
        const Mat2 J = drift_jacobian(p, z);
        out[0] = f[0];
        out[1] = f[1];
        out[2] = J[0][0] * x[2] + J[0][1] * x[3];
        out[3] = J[1][0] * x[2] + J[1][1] * x[3];
    }
    void diffusion(const sde::Vec<4>&, sde::Mat<4, 2>& out) const {
        out = {};
        out[0][0] = p.sigma;
        out[1][1] = p.sigma;
    }
    bool admissible(const sde::Vec<4>&) const { return true; }
};

// Polar chart (r, phi), Ito convention, noises (W_r, W_phi):
//   dr   = (alpha r - a r^3 + sigma^2/(2r)) dt + sigma dW_r
//   dphi = (beta - b r^2) dt + (sigma/r) dW_phi
// phi accumulates unwrapped.
struct PolarSystem {
    static constexpr int dim = 2;
    static constexpr int noise_dim = 2;
    HopfParams p;
    double r_floor = 0.0;

    explicit PolarSystem(const HopfParams& params)
        : p(params), r_floor(kRadiusFloorFraction * params.limit_radius()) {}

    void drift(const sde::Vec<2>& x, sde::Vec<2>& out) const {
        const double r = x[0];
        out[0] = p.alpha * r - p.a * r * r * r +
                 0.5 * p.sigma * p.sigma / r;
        out[1] = p.beta - p.b * r * r;
    }
    void diffusion(const sde::Vec<2>& x, sde::Mat<2, 2>& out) const {
        out = {};
        out[0][0] = p.sigma;
        out[1][1] = p.sigma / x[0];
    }
    bool admissible(const sde::Vec<2>& x) const { return x[0] > r_floor; }
};

// Tangent-frame chart (r, s, vartheta), Stratonovich convention: the
// variational vector expressed in the rotating orthonormal frame
// (radial, angular) of the polar chart. beta drops out entirely.
//   dr        = (alpha r - a r^3 + sigma^2/(2r)) dt + sigma dW_r
//   ds        = (alpha - 3 a r^2) s dt + (sigma/r) vartheta o dW_phi
//   dvartheta = (alpha - a r^2) vartheta dt - 2 b r^2 s dt
//               - (sigma/r) s o dW_phi
struct TangentFrameSystem {
    static constexpr int dim = 3;
    static constexpr int noise_dim = 2;
    HopfParams p;
    double r_floor = 0.0;

    explicit TangentFrameSystem(const HopfParams& params)
        : p(params), r_floor(kRadiusFloorFraction * params.limit_radius()) {}

    void drift(const sde::Vec<3>& x, sde::Vec<3>& out) const {
        const double r = x[0], s = x[1], vt = x[2];
        const double r2 = r * r;
        out[0] = p.alpha * r - p.a * r2 * r + 0.5 * p.sigma * p.sigma / r;
        out[1] = (p.alpha - 3.0 * p.a * r2) * s;
        out[2] = (p.alpha - p.a * r2) * vt - 2.0 * p.b * r2 * s;
    }
    void diffusion(const sde::Vec<3>& x, sde::Mat<3, 2>& out) const {
        const double g = p.sigma / x[0];
        out = {};
        out[0][0] = p.sigma;
        out[1][1] = g * x[2];
        out[2][1] = -g * x[1];
    }
    bool admissible(const sde::Vec<3>& x) const { return x[0] > r_floor; }
};

// Rescaled chart (r, s, theta) with theta = eps * vartheta under
// b = b'/eps, sigma = eps sigma'; Stratonovich convention. The noise on r
// carries the factor eps, and the back-rotation on theta the factor eps^2,
// so eps = 0 is the well-defined singular limit (deterministic r, no noise
// feedback on theta).
//   dr     = (alpha r - a r^3 + eps^2 sigma'^2/(2r)) dt + eps sigma' o dW_r
//   ds     = (alpha - 3 a r^2) s dt + (sigma'/r) theta o dW_phi
//   dtheta = (alpha - a r^2) theta dt - 2 b' r^2 s dt
//            - (eps^2 sigma'/r) s o dW_phi
struct RescaledTangentSystem {
    static constexpr int dim = 3;
    static constexpr int noise_dim = 2;
    double alpha, a, b_prime, sigma_prime, eps;
    double r_floor = 0.0;

    RescaledTangentSystem(const ScaledHopfParams& sp)
        : alpha(sp.alpha),
          a(sp.a),
          b_prime(sp.scaling.b_prime),
          sigma_prime(sp.scaling.sigma_prime),
          eps(sp.scaling.eps),
          r_floor(kRadiusFloorFraction * sp.limit_radius()) {}

    RescaledTangentSystem(double alpha_, double a_, double bp, double sp,
                          double eps_)
        : alpha(alpha_), a(a_), b_prime(bp), sigma_prime(sp), eps(eps_),
          r_floor(kRadiusFloorFraction * std::sqrt(alpha_ / a_)) {}

    void drift(const sde::Vec<3>& x, sde::Vec<3>& out) const {
        const double r = x[0], s = x[1], th = x[2];
        const double r2 = r * r;
        out[0] = alpha * r - a * r2 * r +
                 0.5 * eps * eps * sigma_prime * sigma_prime / r;
        out[1] = (alpha - 3.0 * a * r2) * s;
        out[2] = (alpha - a * r2) * th - 2.0 * b_prime * r2 * s;
    }
    void diffusion(const sde::Vec<3>& x, sde::Mat<3, 2>& out) const {
        out = {};
        out[0][0] = eps * sigma_prime;
        out[1][1] = (sigma_prime / x[0]) * x[2];
        out[2][1] = -(eps * eps * sigma_prime / x[0]) * x[1];
    }
    bool admissible(const sde::Vec<3>& x) const { return x[0] > r_floor; }
};

// Simplified cylinder model variational pair (s, theta):
//   ds = -alpha_hat s dt + sigma_hat theta dW,  dtheta = -b_hat s dt.
// The diffusion matrix is nilpotent, so Ito and Stratonovich coincide and
// Euler-Maruyama already has strong order one.
struct SimplifiedSystem {
    static constexpr int dim = 2;
    static constexpr int noise_dim = 1;
    SimplifiedParams p;

    void drift(const sde::Vec<2>& x, sde::Vec<2>& out) const {
        out[0] = -p.alpha_hat * x[0];
        out[1] = -p.b_hat * x[0];
    }
    void diffusion(const sde::Vec<2>& x, sde::Mat<2, 1>& out) const {
        out[0][0] = p.sigma_hat * x[1];
        out[1][0] = 0.0;
    }
    bool admissible(const sde::Vec<2>&) const { return true; }
};

// Chart conversions theta = eps * vartheta (exact bijection for eps > 0).
inline double theta_from_vartheta(double vartheta, double eps) {
    return eps * vartheta;
}
inline double vartheta_from_theta(double theta, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("vartheta chart requires eps > 0");
    return theta / eps;
}

// Pointwise norm bridge between the charts, valid for 0 < eps <= 1:
//   eps * |(s, vartheta)| <= |(s, theta)| <= |(s, vartheta)|.
inline bool norm_bridge_holds(double s, double theta, double eps,
                              double slack = 1e-12) {
    const double vt = vartheta_from_theta(theta, eps);
    const double full = std::hypot(s, vt);
    const double scaled = std::hypot(s, theta);
    return eps * full <= scaled * (1.0 + slack) &&
           scaled <= full * (1.0 + slack);
}

// Type-erased adapters for the generic driver.
sde::SdeSpec make_cartesian_spec(const HopfParams& p);
sde::SdeSpec make_polar_spec(const HopfParams& p);
sde::SdeSpec make_tangent_frame_spec(const HopfParams& p);
sde::SdeSpec make_rescaled_tangent_spec(const ScaledHopfParams& p);
sde::SdeSpec make_simplified_spec(const SimplifiedParams& p);

}  // namespace hopf
