#include "hopf/lyapunov.hpp"

#include "hopf/exponent.hpp"
#include "hopf/hopf_systems.hpp"
#include "hopf/projective.hpp"
#include "hopf/rng.hpp"
#include "hopf/sde.hpp"
#include "hopf/stationary.hpp"
#include "hopf/tangent_driver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hopf {

namespace {

struct MeanSe {
    double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe r;
    if (v.empty()) return r;
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() < 2) return r;
    double var = 0.0;
    for (double x : v) var += (x - r.mean) * (x - r.mean);
    var /= static_cast<double>(v.size() - 1);
    r.se = std::sqrt(var / static_cast<double>(v.size()));
    return r;
}

LyapunovEstimate finalize(std::vector<double> per_seed,
                          const EstimatorConfig& cfg, int restarts,
                          double min_radius) {
    LyapunovEstimate est;
    const MeanSe ms = mean_se(per_seed);
    est.value = ms.mean;
    est.std_error = ms.se;
    est.t_end = cfg.t_end;
    est.dt = cfg.dt;
    est.n_seeds = cfg.n_seeds;
    est.renorm_interval = cfg.renorm_interval;
    est.restarts = restarts;
    est.min_radius = min_radius;
    const double path_time =
        std::max(1e-12, (cfg.t_end - cfg.burn_in) * cfg.n_seeds);
    est.flagged = restarts / path_time > 0.01;
    est.per_seed = std::move(per_seed);
    return est;
}

}  // namespace

LyapunovEstimate le_norm_growth_simplified(const SimplifiedParams& p,
                                           const EstimatorConfig& cfg,
                                           double s0, double theta0,
                                           Scheme scheme) {
    if (s0 == 0.0 && theta0 == 0.0)
        throw std::invalid_argument("tangent seed vector must be nonzero");
    const SimplifiedSystem sys{p};
    const double sqrt_dt = std::sqrt(cfg.dt);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long n_burn = std::lround(cfg.burn_in / cfg.dt);
    const long renorm_every =
        std::max(1L, std::lround(cfg.renorm_interval / cfg.dt));

    std::vector<double> per_seed;
    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        rng::GaussianCursor noise(cfg.seed + static_cast<std::uint64_t>(sd),
                                  0);
        sde::Vec<2> x{s0, theta0};
        double offset = 0.0, lambda_start = 0.0;
        for (long k = 0; k < n_steps; ++k) {
            if (k == n_burn)
                lambda_start =
                    offset + 0.5 * std::log(x[0] * x[0] + x[1] * x[1]);
            const sde::Vec<1> dw{sqrt_dt * noise.next()};
            if (scheme == Scheme::heun)
                sde::heun_step(sys, x, cfg.dt, dw);
            else
                sde::em_step(sys, x, cfg.dt, dw);
            if ((k + 1) % renorm_every == 0)
                detail::renormalize(x[0], x[1], offset);
        }
        const double lambda_end =
            offset + 0.5 * std::log(x[0] * x[0] + x[1] * x[1]);
        per_seed.push_back((lambda_end - lambda_start) /
                           ((n_steps - n_burn) * cfg.dt));
    }
    return finalize(std::move(per_seed), cfg, 0,
                    std::numeric_limits<double>::infinity());
}

LyapunovEstimate le_norm_growth_rescaled(double alpha, double a,
                                         double b_prime, double sigma_prime,
                                         double eps,
                                         const EstimatorConfig& cfg,
                                         double r_floor_override) {
    RescaledTangentSystem sys(alpha, a, b_prime, sigma_prime, eps);
    if (r_floor_override > 0.0) sys.r_floor = r_floor_override;
    const RadialStationary xi(alpha, a, sigma_prime, eps);

    std::vector<double> per_seed;
    int restarts = 0;
    double min_radius = std::numeric_limits<double>::infinity();
    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        TangentRunConfig run;
        run.t_end = cfg.t_end;
        run.dt = cfg.dt;
        run.burn_in = cfg.burn_in;
        run.renorm_interval = cfg.renorm_interval;
        run.seed = cfg.seed + static_cast<std::uint64_t>(sd);
        const TangentRunResult res = drive_tangent(
            sys, xi, run,
            [](double, double, double, double, double, double, double,
               double) {});
        per_seed.push_back(res.log_norm_growth / res.measured_time);
        restarts += res.restarts;
        min_radius = std::min(min_radius, res.min_radius);
    }
    return finalize(std::move(per_seed), cfg, restarts, min_radius);
}

LyapunovEstimate le_norm_growth_frame(const HopfParams& p,
                                      const EstimatorConfig& cfg) {
    const TangentFrameSystem sys(p);
    const RadialStationary xi(p.alpha, p.a, p.sigma, 1.0);

    std::vector<double> per_seed;
    int restarts = 0;
    double min_radius = std::numeric_limits<double>::infinity();
    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        TangentRunConfig run;
        run.t_end = cfg.t_end;
        run.dt = cfg.dt;
        run.burn_in = cfg.burn_in;
        run.renorm_interval = cfg.renorm_interval;
        run.seed = cfg.seed + static_cast<std::uint64_t>(sd);
        const TangentRunResult res = drive_tangent(
            sys, xi, run,
            [](double, double, double, double, double, double, double,
               double) {});
        per_seed.push_back(res.log_norm_growth / res.measured_time);
        restarts += res.restarts;
        min_radius = std::min(min_radius, res.min_radius);
    }
    return finalize(std::move(per_seed), cfg, restarts, min_radius);
}

LyapunovEstimate le_norm_growth_cartesian(const HopfParams& p,
                                          const EstimatorConfig& cfg) {
    const CartesianSystem sys{p};
    const RadialStationary xi(p.alpha, p.a, p.sigma, 1.0);
    const double sqrt_dt = std::sqrt(cfg.dt);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long n_burn = std::lround(cfg.burn_in / cfg.dt);
    const long renorm_every =
        std::max(1L, std::lround(cfg.renorm_interval / cfg.dt));

    std::vector<double> per_seed;
    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(sd);
        rng::GaussianCursor noise(seed, 0);
        rng::NoiseStream init(seed, 1);
        const double r0 = xi.quantile(init.uniform(0));
        const double phi0 = 2.0 * M_PI * init.uniform(1);
        sde::Vec<4> x{r0 * std::cos(phi0), r0 * std::sin(phi0), 1.0, 0.0};
        double offset = 0.0, lambda_start = 0.0;
        for (long k = 0; k < n_steps; ++k) {
            if (k == n_burn)
                lambda_start =
                    offset + 0.5 * std::log(x[2] * x[2] + x[3] * x[3]);
            const sde::Vec<2> dw{sqrt_dt * noise.next(),
                                 sqrt_dt * noise.next()};
            sde::heun_step(sys, x, cfg.dt, dw);
            if ((k + 1) % renorm_every == 0)
                detail::renormalize(x[2], x[3], offset);
        }
        const double lambda_end =
            offset + 0.5 * std::log(x[2] * x[2] + x[3] * x[3]);
        per_seed.push_back((lambda_end - lambda_start) /
                           ((n_steps - n_burn) * cfg.dt));
    }
    return finalize(std::move(per_seed), cfg, 0,
                    std::numeric_limits<double>::infinity());
}

LyapunovEstimate le_fk_hat(const SimplifiedParams& p,
                           const EstimatorConfig& cfg) {
    if (p.b_hat == 0.0 || p.sigma_hat == 0.0)
        throw std::invalid_argument(
            "FK average requires a positive shear-noise ratio");
    const double sqrt_dt = std::sqrt(cfg.dt);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long n_burn = std::lround(cfg.burn_in / cfg.dt);

    std::vector<double> per_seed;
    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        rng::GaussianCursor noise(cfg.seed + static_cast<std::uint64_t>(sd),
                                  0);
        double psi = 0.0;  // unwrapped
        double sum = 0.0;
        for (long k = 0; k < n_steps; ++k) {
            // the norm coefficient drives d log |v|^2, hence the 1/2
            if (k >= n_burn) sum += 0.5 * hat_ito_drifts(p, psi).norm * cfg.dt;
            const double dw = sqrt_dt * noise.next();
            psi += hat_ito_drifts(p, psi).angle * cfg.dt +
                   hat_rates(p, psi).angle_noise * dw;
        }
        per_seed.push_back(sum / ((n_steps - n_burn) * cfg.dt));
    }
    return finalize(std::move(per_seed), cfg, 0,
                    std::numeric_limits<double>::infinity());
}

SweepResult epsilon_sweep(double alpha, double beta, double a, double b_prime,
                          double sigma_prime,
                          const std::vector<double>& eps_grid,
                          const EstimatorConfig& cfg) {
    SweepResult out;
    out.alpha = alpha;
    out.beta = beta;
    out.a = a;
    out.b_prime = b_prime;
    out.sigma_prime = sigma_prime;
    out.effective_zeta = effective_zeta(alpha, a, b_prime, sigma_prime);
    out.limit = 2.0 * alpha * normalized_exponent(out.effective_zeta);

    for (double eps : eps_grid) {
        const LyapunovEstimate est = le_norm_growth_rescaled(
            alpha, a, b_prime, sigma_prime, eps, cfg);
        SweepRow row;
        row.eps = eps;
        row.lambda = est.value;
        row.std_error = est.std_error;
        row.gap = std::abs(est.value - out.limit);
        row.restarts = est.restarts;
        row.flagged = est.flagged;
        row.min_radius = est.min_radius;
        row.r_floor =
            kRadiusFloorFraction * std::sqrt(alpha / a);
        row.lambda_coarse_floor = std::numeric_limits<double>::quiet_NaN();
        // only rerun the floor-sensitivity probe if some path actually
        // came near the floor; otherwise the policy provably never acted
        if (est.min_radius < 10.0 * row.r_floor) {
            const LyapunovEstimate coarse = le_norm_growth_rescaled(
                alpha, a, b_prime, sigma_prime, eps, cfg,
                10.0 * row.r_floor);
            row.lambda_coarse_floor = coarse.value;
        }
        out.rows.push_back(row);
    }
    return out;
}

BlendedDecomposition blended_decomposition(double alpha, double a,
                                           double b_prime, double sigma_prime,
                                           double eps,
                                           const EstimatorConfig& cfg) {
    const RescaledTangentSystem sys(alpha, a, b_prime, sigma_prime, eps);
    const RadialStationary xi(alpha, a, sigma_prime, eps);
    const RadialCutoff cutoff{std::sqrt(alpha / a)};

    BlendedDecomposition out;
    out.eps = eps;
    out.t_end = cfg.t_end;
    out.dt = cfg.dt;
    out.n_seeds = cfg.n_seeds;

    std::vector<double> v_i, v_ii, v_iii, v_iv, v_v, v_lambda, v_res;
    const long n_burn = std::max(1L, std::lround(cfg.burn_in / cfg.dt));

    for (int sd = 0; sd < cfg.n_seeds; ++sd) {
        BlendedAccumulator acc(alpha, a, b_prime, sigma_prime, eps);
        long call = 0;
        double lambda_burn = 0.0, lambda_last = 0.0;
        double star_corr_burn = 0.0, star_corr_last = 0.0;
        // previous post-step state = this step's Ito evaluation point;
        // renormalization between calls only rescales (s, theta), which the
        // accumulator's integrands are invariant to
        double r_pre = 0.0, s_pre = 0.0, th_pre = 0.0;

        TangentRunConfig run;
        run.t_end = cfg.t_end;
        run.dt = cfg.dt;
        run.burn_in = 0.0;  // the observer handles the burn-in window
        run.renorm_interval = cfg.renorm_interval;
        run.seed = cfg.seed + static_cast<std::uint64_t>(sd);

        const TangentRunResult res = drive_tangent(
            sys, xi, run,
            [&](double, double r, double s, double th, double dw_r,
                double dw_phi, double h, double lam) {
                // Lambda* = Lambda - (1 - chi) (Lambda - Lambda_tilde)
                const double full2 = s * s + th * th;
                const double tilde2 = s * s + (th / eps) * (th / eps);
                const double gap = 0.5 * std::log(full2 / tilde2);
                const double corr = -(1.0 - cutoff(r)) * gap;
                if (call == n_burn - 1) {
                    lambda_burn = lam;
                    star_corr_burn = corr;
                }
                if (call >= n_burn)
                    acc.accumulate(r_pre, s_pre, th_pre, r, s, th, dw_r,
                                   dw_phi, h);
                r_pre = r;
                s_pre = s;
                th_pre = th;
                lambda_last = lam;
                star_corr_last = corr;
                ++call;
            });

        const double t_meas = acc.elapsed();
        v_i.push_back(acc.drift_full() / t_meas);
        v_ii.push_back(acc.drift_tilde() / t_meas);
        v_iii.push_back(acc.cutoff_drift() / t_meas);
        v_iv.push_back(acc.noise_full() / t_meas);
        v_v.push_back(acc.cutoff_noise() / t_meas);
        v_lambda.push_back((lambda_last - lambda_burn) / t_meas);
        const double star_change = (lambda_last + star_corr_last) -
                                   (lambda_burn + star_corr_burn);
        v_res.push_back((star_change - acc.sum()) / t_meas);
        out.restarts += res.restarts;
    }

    const MeanSe i = mean_se(v_i), ii = mean_se(v_ii), iii = mean_se(v_iii),
                 iv = mean_se(v_iv), v = mean_se(v_v),
                 lam = mean_se(v_lambda), res = mean_se(v_res);
    out.drift_full_mean = i.mean;
    out.drift_full_se = i.se;
    out.drift_tilde_mean = ii.mean;
    out.drift_tilde_se = ii.se;
    out.cutoff_drift_mean = iii.mean;
    out.cutoff_drift_se = iii.se;
    out.noise_full_mean = iv.mean;
    out.noise_full_se = iv.se;
    out.cutoff_noise_mean = v.mean;
    out.cutoff_noise_se = v.se;
    out.norm_growth_mean = lam.mean;
    out.norm_growth_se = lam.se;
    out.residual_mean = res.mean;
    return out;
}

}  // namespace hopf
