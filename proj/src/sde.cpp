#include "hopf/sde.hpp"

#include <stdexcept>

namespace hopf::sde {
namespace {

bool finite_all(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

StepStatus spec_step(const SdeSpec& spec, std::vector<double>& x, double dt,
                     const double* dW) {
    const int n = spec.dim;
    const int m = spec.noise_dim;
    thread_local std::vector<double> f, B, xp, f1, B1;
    f.resize(n);
    B.resize(static_cast<std::size_t>(n) * m);
    spec.drift(x.data(), f.data());
    spec.diffusion(x.data(), B.data());
    if (spec.convention == Convention::ito) {
        for (int i = 0; i < n; ++i) {
            double acc = x[i] + f[i] * dt;
            for (int j = 0; j < m; ++j) acc += B[i * m + j] * dW[j];
            x[i] = acc;
        }
    } else {
        xp.resize(n);
        f1.resize(n);
        B1.resize(static_cast<std::size_t>(n) * m);
        for (int i = 0; i < n; ++i) {
            double acc = x[i] + f[i] * dt;
            for (int j = 0; j < m; ++j) acc += B[i * m + j] * dW[j];
            xp[i] = acc;
        }
        if (!finite_all(xp)) return StepStatus::non_finite;
        if (!spec.is_admissible(xp.data())) return StepStatus::region_exit;
        spec.drift(xp.data(), f1.data());
        spec.diffusion(xp.data(), B1.data());
        for (int i = 0; i < n; ++i) {
            double acc = x[i] + 0.5 * (f[i] + f1[i]) * dt;
            for (int j = 0; j < m; ++j)
                acc += 0.5 * (B[i * m + j] + B1[i * m + j]) * dW[j];
            x[i] = acc;
        }
    }
    if (!finite_all(x)) return StepStatus::non_finite;
    if (!spec.is_admissible(x.data())) return StepStatus::region_exit;
    return StepStatus::ok;
}

Trajectory simulate(const SdeSpec& spec, const std::vector<double>& x0,
                    double dt, std::uint64_t n_steps,
                    const rng::NoiseStream& stream, std::uint64_t store_every) {
    if (static_cast<int>(x0.size()) != spec.dim)
        throw std::invalid_argument("simulate: x0 dimension mismatch");
    if (store_every == 0) store_every = 1;
    Trajectory out;
    std::vector<double> x = x0;
    std::vector<double> dW(spec.noise_dim);
    const double sq = std::sqrt(dt);
    out.times.push_back(0.0);
    out.states.push_back(x);
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        for (int j = 0; j < spec.noise_dim; ++j)
            dW[j] = stream.increment(k, static_cast<unsigned>(j),
                                     static_cast<unsigned>(spec.noise_dim), sq);
        StepStatus st = spec_step(spec, x, dt, dW.data());
        out.steps_done = k + 1;
        if (st != StepStatus::ok) {
            out.status = st;
            out.times.push_back(static_cast<double>(k + 1) * dt);
            out.states.push_back(x);
            return out;
        }
        if ((k + 1) % store_every == 0 || k + 1 == n_steps) {
            out.times.push_back(static_cast<double>(k + 1) * dt);
            out.states.push_back(x);
        }
    }
    return out;
}

}  // namespace hopf::sde
