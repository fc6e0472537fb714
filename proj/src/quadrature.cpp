#include "hopf/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace hopf::quad {
namespace {

// Gauss-Legendre nodes/weights on [-1,1].
constexpr std::array<double, 7> kX7 = {
    -0.94910791234275849, -0.74153118559939446, -0.40584515137739718,
    0.0,
    0.40584515137739718, 0.74153118559939446, 0.94910791234275849};
constexpr std::array<double, 7> kW7 = {
    0.12948496616887065, 0.27970539148927659, 0.38183005050511831,
    0.41795918367346896,
    0.38183005050511831, 0.27970539148927659, 0.12948496616887065};

constexpr std::array<double, 15> kX15 = {
    -0.98799251802048538, -0.93727339240070595, -0.84820658341042721,
    -0.72441773136017007, -0.57097217260853883, -0.39415134707756339,
    -0.20119409399743451,
    0.0,
    0.20119409399743451, 0.39415134707756339, 0.57097217260853883,
    0.72441773136017007, 0.84820658341042721, 0.93727339240070595,
    0.98799251802048538};
constexpr std::array<double, 15> kW15 = {
    0.030753241996118647, 0.070366047488108069, 0.10715922046717177,
    0.13957067792615391, 0.16626920581699378, 0.18616100001556188,
    0.19843148532711125,
    0.2025782419255609,
    0.19843148532711125, 0.18616100001556188, 0.16626920581699378,
    0.13957067792615391, 0.10715922046717177, 0.070366047488108069,
    0.030753241996118647};

struct Panel {
    double lo, hi, value, err;
    int depth;
};

Panel evaluate(const std::function<double(double)>& f, double lo, double hi,
               int depth) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double g7 = 0.0, g15 = 0.0;
    for (std::size_t i = 0; i < 7; ++i) g7 += kW7[i] * f(c + h * kX7[i]);
    for (std::size_t i = 0; i < 15; ++i) g15 += kW15[i] * f(c + h * kX15[i]);
    g7 *= h;
    g15 *= h;
    return Panel{lo, hi, g15, std::fabs(g15 - g7), depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureConfig& cfg) {
    QuadratureResult res;
    if (!(hi > lo)) {
        res.converged = true;
        return res;
    }
    std::vector<Panel> stack;
    stack.push_back(evaluate(f, lo, hi, 0));
    double value = 0.0, err = 0.0;
    std::size_t panels = 0;
    bool ok = true;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        // Per-panel budget proportional to length keeps the global bound.
        const double budget = cfg.abs_tol * (p.hi - p.lo) / (hi - lo);
        if (p.err <= budget || p.depth >= cfg.max_depth) {
            if (p.err > budget) ok = false;  // hit depth limit unconverged
            value += p.value;
            err += p.err;
            ++panels;
            continue;
        }
        if (panels + stack.size() > cfg.max_panels) {
            ok = false;
            value += p.value;
            err += p.err;
            ++panels;
            continue;
        }
        const double mid = 0.5 * (p.lo + p.hi);
        stack.push_back(evaluate(f, p.lo, mid, p.depth + 1));
        stack.push_back(evaluate(f, mid, p.hi, p.depth + 1));
    }
    res.value = value;
    res.err_bound = err;
    res.panels = panels;
    res.converged = ok && std::isfinite(value);
    return res;
}

}  // namespace hopf::quad
