#pragma once

#include "hopf/hopf_systems.hpp"
#include "hopf/rng.hpp"
#include "hopf/sde.hpp"
#include "hopf/stationary.hpp"

#include <cmath>
#include <cstdint>

// Shared stepping loop for the 3D tangent charts (r, s, theta) and
// (r, s, vartheta): Heun integration, periodic renormalization of the
// tangent pair (log of the discarded norm folded into a running offset so
// the pair never overflows), and the r_floor restart policy (radius
// resampled from the stationary law, tangent direction and accumulated log
// norm kept, event counted).
//
// The observer is called once per accepted post-burn-in step with the
// post-step state, the increments that produced it, and the total log norm
// Lambda = offset + log |(s, theta)|; renormalization happens after the
// observer, so observers see the continuous path.

namespace hopf {

struct TangentRunConfig {
    double t_end = 1000.0;
    double dt = 1e-3;
    double burn_in = 10.0;
    double renorm_interval = 1.0;
    std::uint64_t seed = 1;
    std::uint32_t noise_stream = 0;    // drives (W_r, W_phi)
    std::uint32_t restart_stream = 1;  // uniforms for radius (re)samples
    double s0 = 1.0, theta0 = 0.0;
    bool init_from_stationary = true;
    double r0 = 0.0;  // used when init_from_stationary is false
};

struct TangentRunResult {
    double log_norm_growth = 0.0;  // Lambda(t_end) - Lambda(burn_in)
    double measured_time = 0.0;
    double min_radius = 0.0;  // over the whole run, pre-restart states
    int restarts = 0;
    bool ok = true;  // false only if the state went non-finite repeatedly
};

namespace detail {
inline void renormalize(double& s, double& theta, double& offset) {
    const double n = std::hypot(s, theta);
    offset += std::log(n);
    s /= n;
    theta /= n;
}
}  // namespace detail

// Sys: one of the 3D charts (state = (r, s, theta-like), noise dim 2,
// Stratonovich). Observer:
//   void(t, r, s, theta, dw_r, dw_phi, dt, lambda_total)
template <class Sys, class Observer>
TangentRunResult drive_tangent(const Sys& sys, const RadialStationary& xi,
                               const TangentRunConfig& cfg, Observer&& observe) {
    static_assert(Sys::dim == 3 && Sys::noise_dim == 2);
    rng::GaussianCursor noise(cfg.seed, cfg.noise_stream);
    rng::NoiseStream restarts(cfg.seed, cfg.restart_stream);
    std::uint64_t restart_index = 0;

    sde::Vec<3> x;
    x[0] = cfg.init_from_stationary ? xi.sample(restarts, restart_index++)
                                    : cfg.r0;
    x[1] = cfg.s0;
    x[2] = cfg.theta0;

    TangentRunResult res;
    res.min_radius = x[0];
    const double sqrt_dt = std::sqrt(cfg.dt);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long n_burn = std::lround(cfg.burn_in / cfg.dt);
    const long renorm_every =
        std::max(1L, std::lround(cfg.renorm_interval / cfg.dt));

    double offset = 0.0;  // accumulated log norm from renormalizations
    double lambda_start = 0.0;
    int bad_steps = 0;

    for (long k = 0; k < n_steps; ++k) {
        if (k == n_burn)
            lambda_start =
                offset + 0.5 * std::log(x[1] * x[1] + x[2] * x[2]);

        const sde::Vec<2> dw{sqrt_dt * noise.next(), sqrt_dt * noise.next()};
        sde::Vec<3> x_next = x;
        const sde::StepStatus st = sde::heun_step(sys, x_next, cfg.dt, dw);
        if (st != sde::StepStatus::ok) {
            // reject the move, draw a fresh radius, keep the direction
            x[0] = xi.sample(restarts, restart_index++);
            detail::renormalize(x[1], x[2], offset);
            ++res.restarts;
            if (st == sde::StepStatus::non_finite && ++bad_steps > 1000) {
                res.ok = false;
                break;
            }
            continue;  // the step still consumed its noise draws
        }
        x = x_next;
        if (x[0] < res.min_radius) res.min_radius = x[0];
        if (k >= n_burn) {
            const double lam =
                offset + 0.5 * std::log(x[1] * x[1] + x[2] * x[2]);
            observe((k + 1) * cfg.dt, x[0], x[1], x[2], dw[0], dw[1], cfg.dt,
                    lam);
        }
        if ((k + 1) % renorm_every == 0)
            detail::renormalize(x[1], x[2], offset);
    }

    const double lambda_end =
        offset + 0.5 * std::log(x[1] * x[1] + x[2] * x[2]);
    res.log_norm_growth = lambda_end - lambda_start;
    res.measured_time = (n_steps - n_burn) * cfg.dt;
    return res;
}

}  // namespace hopf
