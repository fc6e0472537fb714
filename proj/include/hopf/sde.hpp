#pragma once

#include "hopf/rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

// SDE stepping. Two schemes, each matched to one stochastic convention:
//
//   em_step    Euler-Maruyama, consistent with the Ito integral
//   heun_step  predictor-corrector (averaged drift and diffusion),
//              consistent with the Stratonovich integral
//
// Systems with additive noise are convention-free and may use either scheme.
// Templated structs keep hot loops free of indirection; SdeSpec offers a
// type-erased view for generic drivers and tests.

namespace hopf::sde {

template <int N>
using Vec = std::array<double, N>;

template <int N, int M>
using Mat = std::array<std::array<double, M>, N>;

enum class Convention { ito, stratonovich };

enum class StepStatus { ok, region_exit, non_finite };

template <int N>
inline bool all_finite(const Vec<N>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

// System concept:
//   static constexpr int dim, noise_dim;
//   void drift(const Vec<dim>& x, Vec<dim>& out) const;
//   void diffusion(const Vec<dim>& x, Mat<dim, noise_dim>& out) const;
//   bool admissible(const Vec<dim>& x) const;   // region guard

template <class Sys>
StepStatus em_step(const Sys& sys, Vec<Sys::dim>& x, double dt,
                   const Vec<Sys::noise_dim>& dW) {
    constexpr int N = Sys::dim;
    constexpr int M = Sys::noise_dim;
    Vec<N> f;
    Mat<N, M> B;
    sys.drift(x, f);
    sys.diffusion(x, B);
    for (int i = 0; i < N; ++i) {
        double acc = x[i] + f[i] * dt;
        for (int j = 0; j < M; ++j) acc += B[i][j] * dW[j];
        x[i] = acc;
    }
    if (!all_finite<N>(x)) return StepStatus::non_finite;
    if (!sys.admissible(x)) return StepStatus::region_exit;
    return StepStatus::ok;
}

template <class Sys>
StepStatus heun_step(const Sys& sys, Vec<Sys::dim>& x, double dt,
                     const Vec<Sys::noise_dim>& dW) {
    constexpr int N = Sys::dim;
    constexpr int M = Sys::noise_dim;
    Vec<N> f0, f1, xp;
    Mat<N, M> B0, B1;
    sys.drift(x, f0);
    sys.diffusion(x, B0);
    for (int i = 0; i < N; ++i) {
        double acc = x[i] + f0[i] * dt;
        for (int j = 0; j < M; ++j) acc += B0[i][j] * dW[j];
        xp[i] = acc;
    }
    if (!all_finite<N>(xp)) return StepStatus::non_finite;
    if (!sys.admissible(xp)) return StepStatus::region_exit;
    sys.drift(xp, f1);
    sys.diffusion(xp, B1);
    for (int i = 0; i < N; ++i) {
        double acc = x[i] + 0.5 * (f0[i] + f1[i]) * dt;
        for (int j = 0; j < M; ++j) acc += 0.5 * (B0[i][j] + B1[i][j]) * dW[j];
        x[i] = acc;
    }
    if (!all_finite<N>(x)) return StepStatus::non_finite;
    if (!sys.admissible(x)) return StepStatus::region_exit;
    return StepStatus::ok;
}

// Type-erased system. drift writes dim values; diffusion writes
// dim * noise_dim values row-major.
struct SdeSpec {
    int dim = 0;
    int noise_dim = 0;
    Convention convention = Convention::ito;
    std::function<void(const double*, double*)> drift;
    std::function<void(const double*, double*)> diffusion;
    std::function<bool(const double*)> admissible;  // may be empty

    bool is_admissible(const double* x) const {
        return !admissible || admissible(x);
    }
};

StepStatus spec_step(const SdeSpec& spec, std::vector<double>& x, double dt,
                     const double* dW);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    StepStatus status = StepStatus::ok;
    std::uint64_t steps_done = 0;
};

// Integrate n_steps from x0, recording every store_every-th state (always
// records the initial and final ones). Noise increments come from stream
// indices step*noise_dim + component, so a trajectory is reproducible from
// (seed, stream) alone.
Trajectory simulate(const SdeSpec& spec, const std::vector<double>& x0,
                    double dt, std::uint64_t n_steps,
                    const rng::NoiseStream& stream,
                    std::uint64_t store_every = 1);

}  // namespace hopf::sde
