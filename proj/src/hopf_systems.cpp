#include "hopf/hopf_systems.hpp"

namespace hopf {

namespace {

template <class Sys>
sde::SdeSpec wrap(Sys sys, sde::Convention conv) {
    sde::SdeSpec spec;
    spec.dim = Sys::dim;
    spec.noise_dim = Sys::noise_dim;
    spec.convention = conv;
    spec.drift = [sys](const double* x, double* out) {
        sde::Vec<Sys::dim> xv;
        for (int i = 0; i < Sys::dim; ++i) xv[i] = x[i];
        sde::Vec<Sys::dim> f;
        sys.drift(xv, f);
        for (int i = 0; i < Sys::dim; ++i) out[i] = f[i];
    };
    spec.diffusion = [sys](const double* x, double* out) {
        sde::Vec<Sys::dim> xv;
        for (int i = 0; i < Sys::dim; ++i) xv[i] = x[i];
        sde::Mat<Sys::dim, Sys::noise_dim> g;
        sys.diffusion(xv, g);
        for (int i = 0; i < Sys::dim; ++i)
            for (int j = 0; j < Sys::noise_dim; ++j)
                out[i * Sys::noise_dim + j] = g[i][j];
    };
    spec.admissible = [sys](const double* x) {
        sde::Vec<Sys::dim> xv;
        for (int i = 0; i < Sys::dim; ++i) xv[i] = x[i];
        return sys.admissible(xv);
    };
    return spec;
}

}  // namespace

sde::SdeSpec make_cartesian_spec(const HopfParams& p) {
    // Additive noise: convention-free. Declared Stratonovich so the generic
    // driver picks Heun, which the rotating Y block needs.
    return wrap(CartesianSystem{p}, sde::Convention::stratonovich);
}

sde::SdeSpec make_polar_spec(const HopfParams& p) {
    return wrap(PolarSystem(p), sde::Convention::ito);
}

sde::SdeSpec make_tangent_frame_spec(const HopfParams& p) {
    return wrap(TangentFrameSystem(p), sde::Convention::stratonovich);
}

sde::SdeSpec make_rescaled_tangent_spec(const ScaledHopfParams& p) {
    return wrap(RescaledTangentSystem(p), sde::Convention::stratonovich);
}

sde::SdeSpec make_simplified_spec(const SimplifiedParams& p) {
    return wrap(SimplifiedSystem{p}, sde::Convention::ito);
}

}  // namespace hopf
