#include "hopf/experiments.hpp"

#include "hopf/exponent.hpp"
#include "hopf/hopf_systems.hpp"
#include "hopf/rng.hpp"
#include "hopf/sde.hpp"
#include "hopf/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

// planar process without the variational block, for ensembles
struct PlanarSystem {
    static constexpr int dim = 2;
    static constexpr int noise_dim = 2;
    HopfParams p;

    void drift(const sde::Vec<2>& x, sde::Vec<2>& out) const {
        out = drift_field(p, x);
    }
    void diffusion(const sde::Vec<2>&, sde::Mat<2, 2>& out) const {
        out = {};
        out[0][0] = p.sigma;
        out[1][1] = p.sigma;
    }
    bool admissible(const sde::Vec<2>&) const { return true; }
};

}  // namespace

AttractorResult attractor_cloud(const HopfParams& p, std::size_t n_samples,
                                double t_end, double dt, std::uint64_t seed,
                                AttractorInit init, double burnin_time) {
    if (n_samples == 0) throw std::invalid_argument("empty ensemble");
    AttractorResult out;
    out.n_samples = n_samples;
    out.r_hat = p.limit_radius();
    out.t_end = t_end;
    out.dt = dt;
    out.seed = seed;
    out.burnin_time = init == AttractorInit::burnin ? burnin_time : 0.0;

    out.z1.resize(n_samples);
    out.z2.resize(n_samples);
    std::vector<char> live(n_samples, 1);

    rng::NoiseStream init_stream(seed, 2);
    if (init == AttractorInit::stationary) {
        // the radial law only involves the product eps*sigma', so the
        // physical parameters enter with eps = 1
        const RadialStationary xi(p.alpha, p.a, p.sigma, 1.0);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double r = xi.quantile(init_stream.uniform(2 * i));
            const double ang = 2.0 * M_PI * init_stream.uniform(2 * i + 1);
            out.z1[i] = r * std::cos(ang);
            out.z2[i] = r * std::sin(ang);
        }
    } else {
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double ang = 2.0 * M_PI * init_stream.uniform(i);
            out.z1[i] = out.r_hat * std::cos(ang);
            out.z2[i] = out.r_hat * std::sin(ang);
        }
    }

    const PlanarSystem sys{p};
    rng::GaussianCursor noise(seed, 0);
    const double sqrt_dt = std::sqrt(dt);
    const long n_steps = std::lround((t_end + out.burnin_time) / dt);

    for (long k = 0; k < n_steps; ++k) {
        const sde::Vec<2> dw{sqrt_dt * noise.next(), sqrt_dt * noise.next()};
        if (out.collapsed && out.frozen == 0) {
            sde::Vec<2> x{out.z1[0], out.z2[0]};
            if (sde::heun_step(sys, x, dt, dw) == sde::StepStatus::ok) {
                std::fill(out.z1.begin(), out.z1.end(), x[0]);
                std::fill(out.z2.begin(), out.z2.end(), x[1]);
            }
            continue;
        }
        for (std::size_t i = 0; i < n_samples; ++i) {
            if (!live[i]) continue;
            sde::Vec<2> x{out.z1[i], out.z2[i]};
            if (sde::heun_step(sys, x, dt, dw) != sde::StepStatus::ok) {
                live[i] = 0;
                ++out.frozen;
                continue;
            }
            out.z1[i] = x[0];
            out.z2[i] = x[1];
        }
        if (!out.collapsed && out.frozen == 0 && (k & 511) == 511) {
            const auto [lo1, hi1] =
                std::minmax_element(out.z1.begin(), out.z1.end());
            const auto [lo2, hi2] =
                std::minmax_element(out.z2.begin(), out.z2.end());
            if (*lo1 == *hi1 && *lo2 == *hi2) out.collapsed = true;
        }
    }

    const auto [lo1, hi1] = std::minmax_element(out.z1.begin(), out.z1.end());
    const auto [lo2, hi2] = std::minmax_element(out.z2.begin(), out.z2.end());
    out.diameter = std::hypot(*hi1 - *lo1, *hi2 - *lo2);
    return out;
}

PathSample simulate_hat_path(const SimplifiedParams& p, double s0,
                             double theta0, double t_end, double dt,
                             std::uint64_t seed, int store_stride) {
    const SimplifiedSystem sys{p};
    rng::GaussianCursor noise(seed, 0);
    const double sqrt_dt = std::sqrt(dt);
    const long n_steps = std::lround(t_end / dt);

    PathSample out;
    sde::Vec<2> x{s0, theta0};
    out.t.push_back(0.0);
    out.s.push_back(x[0]);
    out.theta.push_back(x[1]);
    for (long k = 0; k < n_steps; ++k) {
        const sde::Vec<1> dw{sqrt_dt * noise.next()};
        sde::heun_step(sys, x, dt, dw);
        if ((k + 1) % store_stride == 0 || k + 1 == n_steps) {
            out.t.push_back((k + 1) * dt);
            out.s.push_back(x[0]);
            out.theta.push_back(x[1]);
        }
    }
    return out;
}

std::vector<double> default_zeta_grid() {
    std::vector<double> g(200);
    for (int i = 0; i < 200; ++i) g[i] = 10.0 * (i + 1) / 200.0;
    return g;
}

std::vector<CurvePoint> psi_curve(const std::vector<double>& zeta_grid) {
    std::vector<CurvePoint> out;
    out.reserve(zeta_grid.size());
    for (double z : zeta_grid) {
        const ExponentValue v = normalized_exponent_checked(z);
        out.push_back({z, v.value, v.err_bound});
    }
    return out;
}

MatchedNoiseReport matched_noise_compare(const HopfParams& p, double r0,
                                         double phi0, double t_end,
                                         double dt, std::uint64_t seed) {
    const CartesianSystem cart{p};
    const PolarSystem polar(p);
    const TangentFrameSystem frame(p);

    sde::Vec<4> zc{r0 * std::cos(phi0), r0 * std::sin(phi0), 1.0, 0.0};
    sde::Vec<2> pc{r0, phi0};
    // initial tangent vector (1, 0) expressed in the frame at angle phi0
    sde::Vec<3> fc{r0, std::cos(phi0), -std::sin(phi0)};

    rng::GaussianCursor noise(seed, 0);
    const double sqrt_dt = std::sqrt(dt);
    const long n_steps = std::lround(t_end / dt);

    MatchedNoiseReport rep;
    rep.t_end = t_end;
    rep.dt = dt;
    for (long k = 0; k < n_steps; ++k) {
        const double dw1 = sqrt_dt * noise.next();
        const double dw2 = sqrt_dt * noise.next();
        // rotate the planar increments into the radial/angular pair using
        // the polar chart's current angle
        const double c = std::cos(pc[1]), s = std::sin(pc[1]);
        const sde::Vec<2> dw_rot{c * dw1 + s * dw2, -s * dw1 + c * dw2};

        sde::heun_step(cart, zc, dt, sde::Vec<2>{dw1, dw2});
        sde::em_step(polar, pc, dt, dw_rot);
        sde::heun_step(frame, fc, dt, dw_rot);

        rep.sup_radius_diff =
            std::max(rep.sup_radius_diff,
                     std::abs(std::hypot(zc[0], zc[1]) - pc[0]));
        rep.sup_frame_diff =
            std::max(rep.sup_frame_diff,
                     std::abs(std::hypot(zc[2], zc[3]) -
                              std::hypot(fc[1], fc[2])));
    }
    return rep;
}

}  // namespace hopf
