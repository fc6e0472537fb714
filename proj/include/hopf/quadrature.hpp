#pragma once

#include <functional>
#include <cstddef>

// Adaptive panel quadrature with absolute-error targets. Each panel is
// estimated with nested 7- and 15-point Gauss-Legendre rules; the difference
// drives bisection until the summed panel error bound meets abs_tol.

namespace hopf::quad {

struct QuadratureConfig {
    double abs_tol = 1e-11;     // target bound on the absolute error
    int max_depth = 48;         // bisection depth limit per initial panel
    std::size_t max_panels = 200000;
};

struct QuadratureResult {
    double value = 0.0;
    double err_bound = 0.0;     // accumulated |GL15-GL7| over accepted panels
    std::size_t panels = 0;
    bool converged = false;
};

// Integrate f over [lo, hi] (finite). The integrand must be finite on the
// open interval; endpoints are never evaluated exactly by the Gauss nodes.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureConfig& cfg = {});

}  // namespace hopf::quad
