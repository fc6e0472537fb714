#include "doctest.h"

#include "hopf/rng.hpp"
#include "hopf/sde.hpp"

#include <cmath>
#include <vector>

using namespace hopf;

namespace {

struct Decay {  // dx = -x dt
    static constexpr int dim = 1;
    static constexpr int noise_dim = 1;
    void drift(const sde::Vec<1>& x, sde::Vec<1>& out) const {
        out[0] = -x[0];
    }
    void diffusion(const sde::Vec<1>&, sde::Mat<1, 1>& out) const {
        out[0][0] = 0.0;
    }
    bool admissible(const sde::Vec<1>&) const { return true; }
};

struct Ou {  // dx = -x dt + dW
    static constexpr int dim = 1;
    static constexpr int noise_dim = 1;
    void drift(const sde::Vec<1>& x, sde::Vec<1>& out) const {
        out[0] = -x[0];
    }
    void diffusion(const sde::Vec<1>&, sde::Mat<1, 1>& out) const {
        out[0][0] = 1.0;
    }
    bool admissible(const sde::Vec<1>&) const { return true; }
};

struct LinearNoise {  // dx = x o dW (Stratonovich intent, Heun-stepped)
    static constexpr int dim = 1;
    static constexpr int noise_dim = 1;
    void drift(const sde::Vec<1>&, sde::Vec<1>& out) const { out[0] = 0.0; }
    void diffusion(const sde::Vec<1>& x, sde::Mat<1, 1>& out) const {
        out[0][0] = x[0];
    }
    bool admissible(const sde::Vec<1>&) const { return true; }
};

struct Floor {  // drifts left until the admissible region ends at 0.5
    static constexpr int dim = 1;
    static constexpr int noise_dim = 1;
    void drift(const sde::Vec<1>&, sde::Vec<1>& out) const { out[0] = -1.0; }
    void diffusion(const sde::Vec<1>&, sde::Mat<1, 1>& out) const {
        out[0][0] = 0.0;
    }
    bool admissible(const sde::Vec<1>& x) const { return x[0] > 0.5; }
};

sde::SdeSpec radial_ode_spec(double alpha, double a) {
    sde::SdeSpec spec;
    spec.dim = 1;
    spec.noise_dim = 1;
    spec.convention = sde::Convention::stratonovich;
    spec.drift = [alpha, a](const double* x, double* out) {
        out[0] = alpha * x[0] - a * x[0] * x[0] * x[0];
    };
    spec.diffusion = [](const double*, double* out) { out[0] = 0.0; };
    return spec;
}

}  // namespace

TEST_SUITE("sde") {

TEST_CASE("zero-noise linear decay reaches e^{-10}") {
    Decay sys;
    sde::Vec<1> x{1.0};
    const double dt = 1e-3;
    for (int k = 0; k < 10000; ++k) {
        sde::Vec<1> dw{0.0};
        REQUIRE(sde::heun_step(sys, x, dt, dw) == sde::StepStatus::ok);
    }
    CHECK(x[0] == doctest::Approx(std::exp(-10.0)).epsilon(1e-4));
}

TEST_CASE("ou ensemble variance at t = 10") {
    Ou sys;
    const double dt = 1e-3;
    const int n_paths = 10000, n_steps = 10000;
    const double sqrt_dt = std::sqrt(dt);
    double s1 = 0.0, s2 = 0.0;
    for (int p = 0; p < n_paths; ++p) {
        rng::GaussianCursor g(555, static_cast<std::uint64_t>(p));
        sde::Vec<1> x{0.0};
        for (int k = 0; k < n_steps; ++k) {
            sde::Vec<1> dw{sqrt_dt * g.next()};
            sde::em_step(sys, x, dt, dw);
        }
        s1 += x[0];
        s2 += x[0] * x[0];
    }
    const double mean = s1 / n_paths;
    const double var = s2 / n_paths - mean * mean;
    // stationary variance 1/2; sample-variance se ~ 0.5 sqrt(2/N)
    CHECK(std::abs(var - 0.5) < 3.0 * 0.5 * std::sqrt(2.0 / n_paths));
    CHECK(std::abs(mean) < 3.0 * std::sqrt(0.5 / n_paths));
}

TEST_CASE("heun reproduces the exact stratonovich exponential at order 1") {
    // dX = X o dW has solution X0 exp(W_t); strong error should halve
    // with dt
    LinearNoise sys;
    const double t_end = 1.0;
    const int n_paths = 400;
    double rms[2] = {0.0, 0.0};
    for (int lvl = 0; lvl < 2; ++lvl) {
        const double dt = lvl == 0 ? 4e-3 : 2e-3;
        const int n_steps = static_cast<int>(t_end / dt);
        double acc = 0.0;
        for (int p = 0; p < n_paths; ++p) {
            rng::NoiseStream fine(777, static_cast<std::uint64_t>(p));
            // same Brownian path on both levels: aggregate fine draws
            const int frac = static_cast<int>(dt / 2e-3);
            sde::Vec<1> x{1.0};
            double w = 0.0;
            for (int k = 0; k < n_steps; ++k) {
                double dw = 0.0;
                for (int j = 0; j < frac; ++j)
                    dw += std::sqrt(2e-3) *
                          fine.normal(static_cast<std::uint64_t>(k * frac + j));
                w += dw;
                sde::Vec<1> dwv{dw};
                sde::heun_step(sys, x, dt, dwv);
            }
            const double exact = std::exp(w);
            acc += (x[0] - exact) * (x[0] - exact);
        }
        rms[lvl] = std::sqrt(acc / n_paths);
    }
    const double ratio = rms[0] / rms[1];
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("euler-maruyama strong order 1 on additive noise") {
    // self-convergence against a common fine grid, dt_fine = dt/32
    Ou sys;
    const double t_end = 1.0;
    const int n_paths = 400;
    const double dt_f = 1e-4;
    double rms[2] = {0.0, 0.0};
    const double dts[2] = {32 * dt_f, 16 * dt_f};
    for (int lvl = 0; lvl < 2; ++lvl) {
        const int frac = static_cast<int>(dts[lvl] / dt_f);
        const int n_steps = static_cast<int>(t_end / dts[lvl]);
        double acc = 0.0;
        for (int p = 0; p < n_paths; ++p) {
            rng::NoiseStream fine(888, static_cast<std::uint64_t>(p));
            sde::Vec<1> xc{1.0}, xf{1.0};
            std::uint64_t idx = 0;
            for (int k = 0; k < n_steps; ++k) {
                double dw = 0.0;
                for (int j = 0; j < frac; ++j) {
                    const double dwf = std::sqrt(dt_f) * fine.normal(idx++);
                    sde::Vec<1> d{dwf};
                    sde::em_step(sys, xf, dt_f, d);
                    dw += dwf;
                }
                sde::Vec<1> d{dw};
                sde::em_step(sys, xc, dts[lvl], d);
            }
            acc += (xc[0] - xf[0]) * (xc[0] - xf[0]);
        }
        rms[lvl] = std::sqrt(acc / n_paths);
    }
    const double ratio = rms[0] / rms[1];
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("increment statistics") {
    rng::NoiseStream ns(4242, 0);
    const std::size_t n = 1000000;
    const double dt = 1e-3;
    const double sqrt_dt = std::sqrt(dt);
    double s1 = 0.0, s2 = 0.0, cross = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ns.increment(i, 0, 1, sqrt_dt);
        s1 += d;
        s2 += d * d;
        if (i) cross += d * prev;
        prev = d;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 * sqrt_dt / std::sqrt(double(n)));
    CHECK(std::abs(var - dt) < 0.05 * dt);
    // lag-1 correlation consistent with independence
    CHECK(std::abs(cross / (n - 1) / dt) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("simulate is deterministic and stride-exact") {
    sde::SdeSpec spec = radial_ode_spec(1.0, 1.0);
    spec.diffusion = [](const double*, double* out) { out[0] = 0.3; };
    rng::NoiseStream stream(31337, 0);

    const auto a = sde::simulate(spec, {0.4}, 1e-3, 5000, stream, 1);
    const auto b = sde::simulate(spec, {0.4}, 1e-3, 5000, stream, 1);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i)
        CHECK(a.states[i][0] == b.states[i][0]);

    const auto thin = sde::simulate(spec, {0.4}, 1e-3, 5000, stream, 7);
    CHECK(thin.states.back()[0] == a.states.back()[0]);
    CHECK(thin.times.back() == a.times.back());
    CHECK(thin.states.size() < a.states.size());
}

TEST_CASE("radial ode settles on the limit radius") {
    sde::SdeSpec spec = radial_ode_spec(1.0, 1.0);
    rng::NoiseStream stream(1, 0);
    const auto tr = sde::simulate(spec, {0.1}, 1e-3, 30000, stream, 30000);
    CHECK(tr.status == sde::StepStatus::ok);
    CHECK(std::abs(tr.states.back()[0] - 1.0) < 1e-6);
}

TEST_CASE("common noise keeps identical members identical") {
    Ou sys;
    const double dt = 1e-3;
    std::vector<sde::Vec<1>> members(8, sde::Vec<1>{0.7});
    rng::GaussianCursor g(2718, 0);
    for (int k = 0; k < 2000; ++k) {
        const double dw = std::sqrt(dt) * g.next();
        for (auto& m : members) {
            sde::Vec<1> d{dw};
            sde::em_step(sys, m, dt, d);
        }
    }
    for (const auto& m : members) CHECK(m[0] == members.front()[0]);
}

TEST_CASE("non-finite states are flagged") {
    sde::SdeSpec spec;
    spec.dim = 1;
    spec.noise_dim = 1;
    spec.convention = sde::Convention::ito;
    spec.drift = [](const double* x, double* out) {
        out[0] = x[0] * x[0];  // explodes in finite time from x0 > 0
    };
    spec.diffusion = [](const double*, double* out) { out[0] = 0.0; };
    rng::NoiseStream stream(1, 0);
    const auto tr = sde::simulate(spec, {5.0}, 1.0, 100, stream, 1);
    CHECK(tr.status == sde::StepStatus::non_finite);
    CHECK(tr.steps_done < 100);
}

TEST_CASE("leaving the admissible region raises the exit status") {
    Floor sys;
    sde::Vec<1> x{0.50001};
    sde::Vec<1> dw{0.0};
    CHECK(sde::em_step(sys, x, 1e-3, dw) == sde::StepStatus::region_exit);
}

}  // TEST_SUITE
