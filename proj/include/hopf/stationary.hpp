#pragma once

#include "hopf/params.hpp"
#include "hopf/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

// Radial stationary law of the noisy Hopf amplitude and empirical measures.
//
// The radial density is xi(r) = L * r * exp(-a (r^2 - rhat^2)^2 / (2 e^2 s'^2));
// under p = r^2 it is a normal N(rhat^2, e^2 s'^2 / a) truncated to (0, inf),
// which gives the erfc closed form for L and an exact inverse-CDF sampler.

namespace hopf {

struct RadialStationary {
    double alpha, a, sigma_prime, eps;
    double r_hat;    // sqrt(alpha / a)
    double mean_p;   // rhat^2
    double sd_p;     // eps sigma' / sqrt(a)
    double normalization;  // L: 2 sqrt(2a) / (sqrt(pi) eps s' erfc(-alpha / (eps s' sqrt(2a))))

    RadialStationary(double alpha_, double a_, double sigma_prime_,
                     double eps_);

    double pdf(double r) const;
    double cdf(double r) const;
    // analytic argmax: the stationarity condition 2 a r^2 (r^2 - rhat^2)
    // = e^2 s'^2 solved for r^2
    double mode() const;
    // stationary Fokker-Planck residual at r, all derivatives analytic:
    //   -d/dr[(alpha r - a r^3 + e^2 s'^2/(2r)) xi] + (e^2 s'^2 / 2) xi''
    double fp_residual(double r) const;

    // exact quantile in the p = r^2 variable (bisection + Newton, |dp| <=
    // 1e-12 scale); q clamped to [1e-16, 1 - 1e-16]
    double quantile(double q) const;
    double sample(const rng::NoiseStream& stream, std::uint64_t index) const {
        return quantile(stream.uniform(index));
    }

    // quadrature of f * xi over [lo, hi]
    double integrate_against(const std::function<double(double)>& f,
                             double lo, double hi) const;
};

// Lemma-style concentration bound: for a test function vanishing on a
// declared neighborhood [vanish_lo, vanish_hi] of rhat, the stationary
// average is compared against exp(-1/eps). Throws if f fails to vanish on
// the declared window or the window misses rhat.
struct ConcentrationResult {
    double integral_abs;  // integral of |f| xi outside the window
    double bound;         // exp(-1 / eps)
    bool holds;
};

ConcentrationResult concentration_check(const RadialStationary& xi,
                                        const std::function<double(double)>& f,
                                        double vanish_lo, double vanish_hi,
                                        double domain_hi = 0.0);

// Fixed-bin histogram; weights normalized to total mass 1. Out-of-range
// mass is tracked separately so TV distances stay honest.
struct Histogram {
    std::vector<double> edges;
    std::vector<double> weight;
    double below = 0.0, above = 0.0;

    static Histogram uniform_bins(int n, double lo, double hi);
    static Histogram log_bins(int n, double lo, double hi);

    void add(double x, double w = 1.0);
    double total() const;
    void normalize();
    std::size_t bins() const { return weight.size(); }
    double center(std::size_t i) const {
        return 0.5 * (edges[i] + edges[i + 1]);
    }
    // 0.5 sum |w_i - v_i|; requires identical edges
    double tv_distance(const Histogram& other) const;
    // integral |x - x0| d(hist), bin centers as representatives
    double mean_abs_deviation(double x0) const;
};

// angle histogram over [-pi, pi), 720 bins by default
Histogram make_angle_histogram(int bins = 720);
// radial histogram, 400 log-spaced bins on [1e-3, 5 rhat] by default
Histogram make_radius_histogram(double r_hat, int bins = 400);

// Kolmogorov-Smirnov distances for sampler/selfconsistency checks.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Normalized occupation measure of the simplified-model projective angle
// after burn-in (Euler-Maruyama on the Ito angle SDE).
Histogram empirical_angle_measure(const SimplifiedParams& p, double t_end,
                                  double burn_in, double dt,
                                  std::uint64_t seed,
                                  std::uint32_t stream_id = 0, int bins = 720);

// Weak-convergence diagnostic for the full rescaled system: per epsilon,
// the occupation measure of (r, psi) is summarized by the W1 distance of
// the r-marginal to the point mass at rhat and the TV distance of the
// psi-marginal to a reference simplified-model angle histogram.
struct WeakConvergenceRow {
    double eps;
    double w1_r;       // time-averaged |r - rhat|, averaged over seeds
    double tv_psi;     // TV(psi-marginal, reference), merged histograms
    double mean_r;     // seed-averaged time-average of r
    double stderr_mean_r;
    double mode_r;     // histogram mode of the r-marginal
    int restarts;
    Histogram r_hist;
    Histogram psi_hist;
};

struct WeakConvergenceConfig {
    double t_end = 2000.0;
    double burn_in = 10.0;
    double dt = 1e-3;
    int n_seeds = 8;
    std::uint64_t seed = 1;
};

std::vector<WeakConvergenceRow> weak_convergence_diagnostic(
    double alpha, double a, double b_prime, double sigma_prime,
    const std::vector<double>& eps_list, const Histogram& reference_psi,
    const WeakConvergenceConfig& cfg);

}  // namespace hopf
