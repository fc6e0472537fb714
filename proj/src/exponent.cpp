#include "hopf/exponent.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {
namespace {

// Exponent of the weight, shifted so its maximum over u >= 0 is zero (the
// minimum of u^3/6 - u/2 is -1/3 at u = 1). Keeps both integrals O(1) for
// every zeta instead of overflowing at small zeta.
inline double shifted_log_weight_exp(double zeta, double u) {
    return -(u * u * u / 6.0 - 0.5 * u + 1.0 / 3.0) / zeta;
}

struct WeightIntegrals {
    double mass;         // integral of the shifted weight
    double first_moment; // integral of u * shifted weight
    double err_mass;
    double err_moment;
};

// Substitution u = v^2 removes the u^{-1/2} endpoint singularity:
// du / sqrt(u) = 2 dv.
WeightIntegrals shifted_integrals(double zeta, const ExponentConfig& cfg) {
    if (!(zeta > 0.0)) throw std::domain_error("zeta must be > 0");
    const double u_max = upper_truncation(zeta, cfg.quadrature.abs_tol);
    const double v_max = std::sqrt(u_max);
    auto mass_f = [zeta](double v) {
        return 2.0 * std::exp(shifted_log_weight_exp(zeta, v * v));
    };
    auto moment_f = [zeta](double v) {
        return 2.0 * v * v * std::exp(shifted_log_weight_exp(zeta, v * v));
    };
    auto m = quad::integrate(mass_f, 0.0, v_max, cfg.quadrature);
    auto m1 = quad::integrate(moment_f, 0.0, v_max, cfg.quadrature);
    if (!m.converged || !m1.converged)
        throw std::runtime_error("weight quadrature did not converge");
    return {m.value, m1.value, m.err_bound, m1.err_bound};
}

}  // namespace

double stationary_weight(double zeta, double u) {
    if (!(zeta > 0.0)) throw std::domain_error("zeta must be > 0");
    if (!(u > 0.0)) throw std::domain_error("u must be > 0");
    return std::exp(-(u * u * u / 6.0 - 0.5 * u) / zeta) / std::sqrt(u);
}

double upper_truncation(double zeta, double abs_tol) {
    const double cut = std::cbrt(6.0 * zeta * std::log(1.0 / abs_tol)) + 5.0;
    return std::fmax(10.0, cut);
}

double weight_mass(double zeta, const ExponentConfig& cfg) {
    const auto w = shifted_integrals(zeta, cfg);
    return w.mass * std::exp(1.0 / (3.0 * zeta));
}

ExponentValue normalized_exponent_checked(double zeta,
                                          const ExponentConfig& cfg) {
    const auto w = shifted_integrals(zeta, cfg);
    const double mean = w.first_moment / w.mass;
    ExponentValue out;
    out.value = 0.5 * (mean - 1.0);
    out.err_bound = 0.5 * (w.err_moment / w.mass +
                           mean * w.err_mass / w.mass);
    return out;
}

double simplified_lyapunov(const SimplifiedParams& p, const ExponentConfig& cfg) {
    p.validate();
    return p.alpha_hat * normalized_exponent(p.zeta(), cfg);
}

ThresholdResult chaos_threshold_detailed(double value_tol,
                                         const ExponentConfig& cfg) {
    ThresholdResult res;
    res.bracket_lo = 3.0;
    res.bracket_hi = 4.0;
    double lo = res.bracket_lo, hi = res.bracket_hi;
    double flo = normalized_exponent(lo, cfg);
    double fhi = normalized_exponent(hi, cfg);
    if (!(flo < 0.0 && fhi > 0.0))
        throw std::runtime_error("chaos_threshold: zero not bracketed in [3,4]");
    double mid = 0.5 * (lo + hi), fmid = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        fmid = normalized_exponent(mid, cfg);
        ++res.iterations;
        if (std::fabs(fmid) <= value_tol && (hi - lo) <= 1e-9) break;
        if (fmid < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (std::fabs(fmid) > value_tol)
        throw std::runtime_error("chaos_threshold: bisection stalled");
    res.value = mid;
    res.exponent_at_root = fmid;
    return res;
}

}  // namespace hopf
