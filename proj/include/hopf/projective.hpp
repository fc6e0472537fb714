#pragma once

#include "hopf/hopf_systems.hpp"
#include "hopf/params.hpp"
#include "hopf/sde.hpp"

#include <cstddef>
#include <vector>

// Projective-bundle coordinates for the tangent flow. A direction
// (cos(psi/2), sin(psi/2)) on RP^1 is tracked through the doubled angle
// psi in [-pi, pi); for a linear field dv = B v the induced rates are
//
//   dpsi          = angle_rate(B, psi) dt,
//   d log |v|^2   = log_sqnorm_rate(B, psi) dt.
//
// Note the norm-side family drives the SQUARED norm: the log-norm rate
// (d Lambda) is half of it. Keeping the doubled form makes the isotropic
// case read log_sqnorm_rate(I, psi) = 2 and keeps the trigonometric
// polynomials free of 1/2 factors; every Lambda evolution downstream
// multiplies by 0.5 exactly once.

namespace hopf {

// wrap to [-pi, pi)
double wrap_angle(double psi);

// doubled angle of a tangent direction, wrapped
double direction_angle(double v1, double v2);

double angle_rate(const Mat2& b, double psi);
double log_sqnorm_rate(const Mat2& b, double psi);
// analytic psi-derivatives of the two rates
double angle_rate_dpsi(const Mat2& b, double psi);
double log_sqnorm_rate_dpsi(const Mat2& b, double psi);

// Drift/noise matrices of the rescaled tangent flow at radius r, plus the
// vartheta-chart (tilde) pair which exists only for eps > 0.
struct FrameMatrices {
    Mat2 drift{};        // [[a-3ar^2,0],[-2b'r^2, a-ar^2]] with a=alpha
    Mat2 noise{};        // [[0, s'/r],[-e^2 s'/r, 0]]
    bool has_tilde = false;
    Mat2 drift_tilde{};  // shear row divided by eps
    Mat2 noise_tilde{};  // antisymmetric: [[0, e s'/r],[-e s'/r, 0]]

    const Mat2& tilde_drift() const;
    const Mat2& tilde_noise() const;
};

FrameMatrices coefficient_matrices(double alpha, double a, double b_prime,
                                   double sigma_prime, double r, double eps);

// Coefficient families obtained by pushing the frame matrices through the
// projective rates. angle_* feed dpsi, norm_* feed d log |v|^2; the _drift
// members are Stratonovich dt-coefficients, _noise the dW_phi ones.
struct ProjectiveRates {
    double angle_drift;  // from the drift matrix
    double angle_noise;  // from the noise matrix
    double norm_drift;
    double norm_noise;
};

struct ProjectiveRatesTilde {
    double angle_drift;
    double angle_noise;
    double norm_drift;  // norm_noise vanishes identically: the tilde noise
                        // matrix is a rotation generator
};

// Ito-corrected drifts: angle += 1/2 g dpsi(g), norm += 1/2 g dpsi(h_noise)
// with g the angle noise coefficient. Derivatives are analytic, not
// differenced.
struct ItoDrifts {
    double angle;
    double norm;
};

ProjectiveRates frame_rates(double alpha, double a, double b_prime,
                            double sigma_prime, double r, double psi,
                            double eps);
ProjectiveRatesTilde frame_rates_tilde(double alpha, double a, double b_prime,
                                       double sigma_prime, double r,
                                       double psi, double eps);
ItoDrifts ito_drifts(double alpha, double a, double b_prime,
                     double sigma_prime, double r, double psi, double eps);

// Same families for the simplified cylinder model (the eps -> 0, r = rhat
// frozen limit of the above under the hat map).
ProjectiveRates hat_rates(const SimplifiedParams& p, double psi);
ItoDrifts hat_ito_drifts(const SimplifiedParams& p, double psi);

// 1D SDE for the hat-system projective angle. Stratonovich pairs
// (angle_drift, angle_noise); the Ito variant uses the corrected drift.
// Both describe the same law.
sde::SdeSpec make_hat_angle_spec(const SimplifiedParams& p,
                                 sde::Convention conv);

// Piecewise-linear radial cutoff: 0 below rhat/3, 1 above 2 rhat/3, affine
// with slope 3/rhat between. Intervals: 1 = (0, rhat/3], 2 = (rhat/3,
// 2rhat/3], 3 = (2rhat/3, 2rhat], 4 = (2rhat, inf).
struct RadialCutoff {
    double r_hat;

    double operator()(double r) const {
        if (r <= r_hat / 3.0) return 0.0;
        if (r <= 2.0 * r_hat / 3.0) return 3.0 / r_hat * r - 1.0;
        return 1.0;
    }
    int interval(double r) const {
        if (r <= r_hat / 3.0) return 1;
        if (r <= 2.0 * r_hat / 3.0) return 2;
        if (r <= 2.0 * r_hat) return 3;
        return 4;
    }
    double slope() const { return 3.0 / r_hat; }
};

// Smallest constants C making the growth bounds
//   |norm_noise|      <= C (1 + eps^-2 r^-1)
//   |ito norm drift|  <= C (1 + r^2 + eps^-4 r^-2)
//   |tilde norm drift| <= C (1 + eps^-1 r^2)
// hold over a sample grid. Non-finite ratios indicate a coefficient bug.
struct BoundsAuditReport {
    double c_norm_noise = 0.0;
    double c_norm_drift = 0.0;
    double c_tilde_norm_drift = 0.0;
    std::size_t samples = 0;
    bool all_finite = true;
};

BoundsAuditReport bounds_audit(double alpha, double a, double b_prime,
                               double sigma_prime,
                               const std::vector<double>& radii,
                               const std::vector<double>& angles,
                               const std::vector<double>& epsilons);

// Five-term decomposition of the blended log-norm
//   Lambda* = (1 - chi(r)) Lambda_tilde + chi(r) Lambda.
// Fed once per step with the pre- and post-step states of the rescaled
// chart (r, s, theta) and the increments between them; the two angles and
// the chart gap Lambda - Lambda_tilde are derived internally (both charts
// share (s, theta) up to the exact scaling theta = eps * vartheta, so the
// gap is scale invariant and renormalization of (s, theta) upstream does
// not disturb it).
//
//   drift_full   += chi * 1/2 * norm_drift_ito(r, psi) dt
//   drift_tilde  += (1 - chi) * 1/2 * tilde_norm_drift(r, psi_tilde) dt
//   cutoff_drift += slope * [r in I2] * gap * (radial drift) dt
//   noise_full   += chi * 1/2 * norm_noise(r, psi) dW_phi
//   cutoff_noise += slope * [r in I2] * gap * eps sigma' dW_r
//
// The dW integrands use the pre-step state (Ito sums must not peek at the
// increment); the dt integrands and the I2 indicator use the post-step
// state. Their sum then tracks Lambda*(T) - Lambda*(0) up to
// discretization error.
class BlendedAccumulator {
  public:
    BlendedAccumulator(double alpha, double a, double b_prime,
                       double sigma_prime, double eps);

    void accumulate(double r_pre, double s_pre, double theta_pre,
                    double r_post, double s_post, double theta_post,
                    double dw_r, double dw_phi, double dt);

    double elapsed() const { return elapsed_; }
    double drift_full() const { return drift_full_; }
    double drift_tilde() const { return drift_tilde_; }
    double cutoff_drift() const { return cutoff_drift_; }
    double noise_full() const { return noise_full_; }
    double cutoff_noise() const { return cutoff_noise_; }
    double sum() const {
        return drift_full_ + drift_tilde_ + cutoff_drift_ + noise_full_ +
               cutoff_noise_;
    }

  private:
    double alpha_, a_, b_prime_, sigma_prime_, eps_;
    RadialCutoff cutoff_;
    double gap_limit_;  // -log(eps) plus slack; exceeding it is fatal
    double elapsed_ = 0.0;
    double drift_full_ = 0.0;
    double drift_tilde_ = 0.0;
    double cutoff_drift_ = 0.0;
    double noise_full_ = 0.0;
    double cutoff_noise_ = 0.0;
};

}  // namespace hopf
