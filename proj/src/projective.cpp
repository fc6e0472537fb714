#include "hopf/projective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hopf {

double wrap_angle(double psi) {
    const double two_pi = 2.0 * M_PI;
    double w = std::fmod(psi + M_PI, two_pi);
    if (w < 0.0) w += two_pi;
    return w - M_PI;
}

double direction_angle(double v1, double v2) {
    return wrap_angle(2.0 * std::atan2(v2, v1));
}

double angle_rate(const Mat2& b, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return b[1][0] * (1.0 + c) - b[0][1] * (1.0 - c) + (b[1][1] - b[0][0]) * s;
}

double log_sqnorm_rate(const Mat2& b, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return b[0][0] * (1.0 + c) + b[1][1] * (1.0 - c) + (b[0][1] + b[1][0]) * s;
}

double angle_rate_dpsi(const Mat2& b, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return -(b[1][0] + b[0][1]) * s + (b[1][1] - b[0][0]) * c;
}

double log_sqnorm_rate_dpsi(const Mat2& b, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return (b[1][1] - b[0][0]) * s + (b[0][1] + b[1][0]) * c;
}

const Mat2& FrameMatrices::tilde_drift() const {
    if (!has_tilde)
        throw std::domain_error("vartheta-chart matrices require eps > 0");
    return drift_tilde;
}

const Mat2& FrameMatrices::tilde_noise() const {
    if (!has_tilde)
        throw std::domain_error("vartheta-chart matrices require eps > 0");
    return noise_tilde;
}

FrameMatrices coefficient_matrices(double alpha, double a, double b_prime,
                                   double sigma_prime, double r, double eps) {
    if (!(r > 0.0)) throw std::domain_error("coefficient matrices need r > 0");
    FrameMatrices m;
    const double r2 = r * r;
    m.drift[0][0] = alpha - 3.0 * a * r2;
    m.drift[0][1] = 0.0;
    m.drift[1][0] = -2.0 * b_prime * r2;
    m.drift[1][1] = alpha - a * r2;

    m.noise[0][0] = 0.0;
    m.noise[0][1] = sigma_prime / r;
    m.noise[1][0] = -eps * eps * sigma_prime / r;
    m.noise[1][1] = 0.0;

    if (eps > 0.0) {
        m.has_tilde = true;
        m.drift_tilde = m.drift;
        m.drift_tilde[1][0] = -2.0 * b_prime * r2 / eps;
        m.noise_tilde[0][0] = 0.0;
        m.noise_tilde[0][1] = eps * sigma_prime / r;
        m.noise_tilde[1][0] = -eps * sigma_prime / r;
        m.noise_tilde[1][1] = 0.0;
    }
    return m;
}

ProjectiveRates frame_rates(double alpha, double a, double b_prime,
                            double sigma_prime, double r, double psi,
                            double eps) {
    const FrameMatrices m =
        coefficient_matrices(alpha, a, b_prime, sigma_prime, r, eps);
    return {angle_rate(m.drift, psi), angle_rate(m.noise, psi),
            log_sqnorm_rate(m.drift, psi), log_sqnorm_rate(m.noise, psi)};
}

ProjectiveRatesTilde frame_rates_tilde(double alpha, double a, double b_prime,
                                       double sigma_prime, double r,
                                       double psi, double eps) {
    const FrameMatrices m =
        coefficient_matrices(alpha, a, b_prime, sigma_prime, r, eps);
    return {angle_rate(m.tilde_drift(), psi),
            angle_rate(m.tilde_noise(), psi),
            log_sqnorm_rate(m.tilde_drift(), psi)};
}

ItoDrifts ito_drifts(double alpha, double a, double b_prime,
                     double sigma_prime, double r, double psi, double eps) {
    const FrameMatrices m =
        coefficient_matrices(alpha, a, b_prime, sigma_prime, r, eps);
    const double g2 = angle_rate(m.noise, psi);
    return {angle_rate(m.drift, psi) +
                0.5 * g2 * angle_rate_dpsi(m.noise, psi),
            log_sqnorm_rate(m.drift, psi) +
                0.5 * g2 * log_sqnorm_rate_dpsi(m.noise, psi)};
}

ProjectiveRates hat_rates(const SimplifiedParams& p, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    return {-p.b_hat * (1.0 + c) + p.alpha_hat * s,
            -p.sigma_hat * (1.0 - c),
            -p.alpha_hat * (1.0 + c) - p.b_hat * s,
            p.sigma_hat * s};
}

ItoDrifts hat_ito_drifts(const SimplifiedParams& p, double psi) {
    const ProjectiveRates r = hat_rates(p, psi);
    const double c = std::cos(psi), s = std::sin(psi);
    // dpsi(angle_noise) = -sigma_hat sin(psi), dpsi(norm_noise) = sigma_hat cos(psi)
    return {r.angle_drift + 0.5 * r.angle_noise * (-p.sigma_hat * s),
            r.norm_drift + 0.5 * r.angle_noise * (p.sigma_hat * c)};
}

sde::SdeSpec make_hat_angle_spec(const SimplifiedParams& p,
                                 sde::Convention conv) {
    sde::SdeSpec spec;
    spec.dim = 1;
    spec.noise_dim = 1;
    spec.convention = conv;
    if (conv == sde::Convention::ito) {
        spec.drift = [p](const double* x, double* out) {
            out[0] = hat_ito_drifts(p, x[0]).angle;
        };
    } else {
        spec.drift = [p](const double* x, double* out) {
            out[0] = hat_rates(p, x[0]).angle_drift;
        };
    }
    spec.diffusion = [p](const double* x, double* out) {
        out[0] = hat_rates(p, x[0]).angle_noise;
    };
    return spec;
}

BoundsAuditReport bounds_audit(double alpha, double a, double b_prime,
                               double sigma_prime,
                               const std::vector<double>& radii,
                               const std::vector<double>& angles,
                               const std::vector<double>& epsilons) {
    BoundsAuditReport rep;
    for (double eps : epsilons) {
        const double e2 = eps * eps;
        for (double r : radii) {
            const double env_noise = 1.0 + 1.0 / (e2 * r);
            const double env_drift = 1.0 + r * r + 1.0 / (e2 * e2 * r * r);
            const double env_tilde = 1.0 + r * r / eps;
            for (double psi : angles) {
                const ItoDrifts d =
                    ito_drifts(alpha, a, b_prime, sigma_prime, r, psi, eps);
                const ProjectiveRates f =
                    frame_rates(alpha, a, b_prime, sigma_prime, r, psi, eps);
                const ProjectiveRatesTilde t = frame_rates_tilde(
                    alpha, a, b_prime, sigma_prime, r, psi, eps);
                const double r1 = std::abs(f.norm_noise) / env_noise;
                const double r2 = std::abs(d.norm) / env_drift;
                const double r3 = std::abs(t.norm_drift) / env_tilde;
                if (!std::isfinite(r1) || !std::isfinite(r2) ||
                    !std::isfinite(r3))
                    rep.all_finite = false;
                rep.c_norm_noise = std::max(rep.c_norm_noise, r1);
                rep.c_norm_drift = std::max(rep.c_norm_drift, r2);
                rep.c_tilde_norm_drift = std::max(rep.c_tilde_norm_drift, r3);
                ++rep.samples;
            }
        }
    }
    return rep;
}

BlendedAccumulator::BlendedAccumulator(double alpha, double a, double b_prime,
                                       double sigma_prime, double eps)
    : alpha_(alpha),
      a_(a),
      b_prime_(b_prime),
      sigma_prime_(sigma_prime),
      eps_(eps),
      cutoff_{std::sqrt(alpha / a)},
      gap_limit_(-std::log(eps) + 1e-9) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::domain_error("blended decomposition needs 0 < eps <= 1");
}

void BlendedAccumulator::accumulate(double r_pre, double s_pre,
                                    double theta_pre, double r_post,
                                    double s_post, double theta_post,
                                    double dw_r, double dw_phi, double dt) {
    const double chi = cutoff_(r_post);
    const bool in_ramp = cutoff_.interval(r_post) == 2;

    const double psi = direction_angle(s_post, theta_post);
    const double psi_tilde = direction_angle(s_post, theta_post / eps_);
    // gap = Lambda - Lambda_tilde, scale invariant in (s, theta)
    auto chart_gap = [this](double s, double th) {
        const double full2 = s * s + th * th;
        const double tilde2 = s * s + (th / eps_) * (th / eps_);
        return 0.5 * std::log(full2 / tilde2);
    };
    const double gap = chart_gap(s_post, theta_post);
    if (!(std::abs(gap) <= gap_limit_))
        throw std::runtime_error("blended charts desynchronized: |gap| > -log eps");

    if (chi > 0.0) {
        const ItoDrifts d = ito_drifts(alpha_, a_, b_prime_, sigma_prime_,
                                       r_post, psi, eps_);
        drift_full_ += chi * 0.5 * d.norm * dt;
    }
    if (chi < 1.0) {
        const ProjectiveRatesTilde t = frame_rates_tilde(
            alpha_, a_, b_prime_, sigma_prime_, r_post, psi_tilde, eps_);
        drift_tilde_ += (1.0 - chi) * 0.5 * t.norm_drift * dt;
    }
    const double chi_pre = cutoff_(r_pre);
    if (chi_pre > 0.0) {
        const double psi_pre = direction_angle(s_pre, theta_pre);
        const ProjectiveRates f = frame_rates(
            alpha_, a_, b_prime_, sigma_prime_, r_pre, psi_pre, eps_);
        noise_full_ += chi_pre * 0.5 * f.norm_noise * dw_phi;
    }
    if (in_ramp) {
        const double radial_drift =
            alpha_ * r_post - a_ * r_post * r_post * r_post +
            0.5 * eps_ * eps_ * sigma_prime_ * sigma_prime_ / r_post;
        cutoff_drift_ += cutoff_.slope() * gap * radial_drift * dt;
        cutoff_noise_ += cutoff_.slope() * chart_gap(s_pre, theta_pre) *
                         eps_ * sigma_prime_ * dw_r;
    }
    elapsed_ += dt;
}

}  // namespace hopf
