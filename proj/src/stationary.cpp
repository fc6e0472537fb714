#include "hopf/stationary.hpp"

#include "hopf/projective.hpp"
#include "hopf/quadrature.hpp"
#include "hopf/tangent_driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

// standard normal CDF via erfc
double normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

}  // namespace

RadialStationary::RadialStationary(double alpha_, double a_,
                                   double sigma_prime_, double eps_)
    : alpha(alpha_), a(a_), sigma_prime(sigma_prime_), eps(eps_) {
    if (!(alpha > 0.0) || !(a > 0.0) || !(sigma_prime > 0.0) || !(eps > 0.0))
        throw std::domain_error(
            "radial stationary law needs alpha, a, sigma', eps > 0");
    r_hat = std::sqrt(alpha / a);
    mean_p = alpha / a;
    sd_p = eps * sigma_prime / std::sqrt(a);
    normalization =
        2.0 * std::sqrt(2.0 * a) /
        (std::sqrt(M_PI) * eps * sigma_prime *
         std::erfc(-alpha / (eps * sigma_prime * std::sqrt(2.0 * a))));
}

double RadialStationary::pdf(double r) const {
    if (!(r > 0.0)) return 0.0;
    const double d = r * r - mean_p;
    return normalization * r *
           std::exp(-a * d * d /
                    (2.0 * eps * eps * sigma_prime * sigma_prime));
}

double RadialStationary::cdf(double r) const {
    if (!(r > 0.0)) return 0.0;
    const double lo = normal_cdf(-mean_p / sd_p);
    const double t = normal_cdf((r * r - mean_p) / sd_p);
    return (t - lo) / (1.0 - lo);
}

double RadialStationary::mode() const {
    const double e2s2 = eps * eps * sigma_prime * sigma_prime;
    const double p =
        0.5 * (mean_p + std::sqrt(mean_p * mean_p + 2.0 * e2s2 / a));
    return std::sqrt(p);
}

double RadialStationary::fp_residual(double r) const {
    const double e2s2 = eps * eps * sigma_prime * sigma_prime;
    const double xi = pdf(r);
    // logarithmic derivative pieces: xi'/xi = 1/r + d, d = 2r(alpha-a r^2)/e2s2
    const double d = 2.0 * r * (alpha - a * r * r) / e2s2;
    const double dp = 2.0 * (alpha - 3.0 * a * r * r) / e2s2;
    const double xi1 = xi * (1.0 / r + d);
    const double xi2 = xi1 * (1.0 / r + d) + xi * (-1.0 / (r * r) + dp);
    const double mu = alpha * r - a * r * r * r + 0.5 * e2s2 / r;
    const double mu1 = alpha - 3.0 * a * r * r - 0.5 * e2s2 / (r * r);
    return -(mu1 * xi + mu * xi1) + 0.5 * e2s2 * xi2;
}

double RadialStationary::quantile(double q) const {
    q = std::clamp(q, 1e-16, 1.0 - 1e-16);
    const double lo_mass = normal_cdf(-mean_p / sd_p);
    const double target = lo_mass + q * (1.0 - lo_mass);

    double lo = 0.0, hi = mean_p + 10.0 * sd_p;
    auto h = [&](double p) {
        return normal_cdf((p - mean_p) / sd_p) - target;
    };
    // bisection to a rough bracket, then Newton
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    double p = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double deriv = normal_pdf((p - mean_p) / sd_p) / sd_p;
        if (deriv <= 0.0) break;
        const double step = h(p) / deriv;
        p -= step;
        p = std::clamp(p, lo, hi);
        if (std::abs(step) <= 1e-13 * (1.0 + std::abs(p))) break;
    }
    return std::sqrt(p);
}

double RadialStationary::integrate_against(
    const std::function<double(double)>& f, double lo, double hi) const {
    const auto res =
        quad::integrate([&](double r) { return f(r) * pdf(r); }, lo, hi,
                        quad::QuadratureConfig{});
    return res.value;
}

ConcentrationResult concentration_check(
    const RadialStationary& xi, const std::function<double(double)>& f,
    double vanish_lo, double vanish_hi, double domain_hi) {
    if (!(vanish_lo < xi.r_hat && xi.r_hat < vanish_hi))
        throw std::invalid_argument(
            "declared vanishing window must contain rhat");
    for (int i = 0; i <= 24; ++i) {
        const double r = vanish_lo + (vanish_hi - vanish_lo) * i / 24.0;
        if (f(r) != 0.0)
            throw std::invalid_argument(
                "test function does not vanish on the declared window");
    }
    if (domain_hi <= 0.0)
        domain_hi = std::sqrt(xi.mean_p + 20.0 * xi.sd_p);

    auto abs_f_xi = [&](double r) { return std::abs(f(r)) * xi.pdf(r); };
    double integral = 0.0;
    if (vanish_lo > 0.0)
        integral += quad::integrate(abs_f_xi, 0.0, vanish_lo,
                                    quad::QuadratureConfig{})
                        .value;
    if (domain_hi > vanish_hi)
        integral += quad::integrate(abs_f_xi, vanish_hi, domain_hi,
                                    quad::QuadratureConfig{})
                        .value;
    const double bound = std::exp(-1.0 / xi.eps);
    return {integral, bound, integral <= bound};
}

Histogram Histogram::uniform_bins(int n, double lo, double hi) {
    Histogram h;
    h.edges.resize(n + 1);
    for (int i = 0; i <= n; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / n;
    h.weight.assign(n, 0.0);
    return h;
}

Histogram Histogram::log_bins(int n, double lo, double hi) {
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("log bins need 0 < lo < hi");
    Histogram h;
    h.edges.resize(n + 1);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i <= n; ++i)
        h.edges[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / n);
    h.edges.front() = lo;
    h.edges.back() = hi;
    h.weight.assign(n, 0.0);
    return h;
}

void Histogram::add(double x, double w) {
    if (x < edges.front()) {
        below += w;
        return;
    }
    if (x >= edges.back()) {
        above += w;
        return;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    weight[static_cast<std::size_t>(it - edges.begin()) - 1] += w;
}

double Histogram::total() const {
    double t = below + above;
    for (double w : weight) t += w;
    return t;
}

void Histogram::normalize() {
    const double t = total();
    if (t <= 0.0) return;
    for (double& w : weight) w /= t;
    below /= t;
    above /= t;
}

double Histogram::tv_distance(const Histogram& other) const {
    if (edges != other.edges)
        throw std::invalid_argument("TV distance needs identical bin edges");
    double d = std::abs(below - other.below) + std::abs(above - other.above);
    for (std::size_t i = 0; i < weight.size(); ++i)
        d += std::abs(weight[i] - other.weight[i]);
    return 0.5 * d;
}

double Histogram::mean_abs_deviation(double x0) const {
    double s = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i)
        s += weight[i] * std::abs(center(i) - x0);
    return s;
}

Histogram make_angle_histogram(int bins) {
    return Histogram::uniform_bins(bins, -M_PI, M_PI);
}

Histogram make_radius_histogram(double r_hat, int bins) {
    return Histogram::log_bins(bins, 1e-3, 5.0 * r_hat);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

Histogram empirical_angle_measure(const SimplifiedParams& p, double t_end,
                                  double burn_in, double dt,
                                  std::uint64_t seed, std::uint32_t stream_id,
                                  int bins) {
    if (!(t_end > burn_in))
        throw std::invalid_argument("t_end must exceed burn_in");
    Histogram h = make_angle_histogram(bins);
    rng::GaussianCursor noise(seed, stream_id);
    const double sqrt_dt = std::sqrt(dt);
    const long n_steps = std::lround(t_end / dt);
    const long n_burn = std::lround(burn_in / dt);
    double psi = 0.0;  // unwrapped
    for (long k = 0; k < n_steps; ++k) {
        const double dw = sqrt_dt * noise.next();
        psi += hat_ito_drifts(p, psi).angle * dt +
               hat_rates(p, psi).angle_noise * dw;
        if (k >= n_burn) h.add(wrap_angle(psi), dt);
    }
    h.normalize();
    return h;
}

std::vector<WeakConvergenceRow> weak_convergence_diagnostic(
    double alpha, double a, double b_prime, double sigma_prime,
    const std::vector<double>& eps_list, const Histogram& reference_psi,
    const WeakConvergenceConfig& cfg) {
    std::vector<WeakConvergenceRow> rows;
    const double r_hat = std::sqrt(alpha / a);

    for (double eps : eps_list) {
        const RadialStationary xi(alpha, a, sigma_prime, eps);
        const RescaledTangentSystem sys(alpha, a, b_prime, sigma_prime, eps);

        WeakConvergenceRow row;
        row.eps = eps;
        row.r_hist = make_radius_histogram(r_hat);
        row.psi_hist = make_angle_histogram(
            static_cast<int>(reference_psi.bins()));
        row.restarts = 0;

        double sum_abs_dev = 0.0, time_total = 0.0;
        std::vector<double> seed_means;
        for (int s = 0; s < cfg.n_seeds; ++s) {
            TangentRunConfig run;
            run.t_end = cfg.t_end;
            run.dt = cfg.dt;
            run.burn_in = cfg.burn_in;
            run.seed = cfg.seed + static_cast<std::uint64_t>(s);
            run.noise_stream = 0;
            run.restart_stream = 1;
            double sum_r = 0.0, t_seed = 0.0;
            const TangentRunResult res = drive_tangent(
                sys, xi, run,
                [&](double, double r, double sv, double th, double, double,
                    double h, double) {
                    row.r_hist.add(r, h);
                    row.psi_hist.add(direction_angle(sv, th), h);
                    sum_abs_dev += std::abs(r - r_hat) * h;
                    sum_r += r * h;
                    t_seed += h;
                });
            row.restarts += res.restarts;
            time_total += t_seed;
            seed_means.push_back(sum_r / t_seed);
        }
        row.w1_r = sum_abs_dev / time_total;
        double m = 0.0;
        for (double v : seed_means) m += v;
        m /= static_cast<double>(seed_means.size());
        double var = 0.0;
        for (double v : seed_means) var += (v - m) * (v - m);
        var /= std::max<std::size_t>(1, seed_means.size() - 1);
        row.mean_r = m;
        row.stderr_mean_r =
            std::sqrt(var / static_cast<double>(seed_means.size()));

        row.r_hist.normalize();
        row.psi_hist.normalize();
        row.tv_psi = row.psi_hist.tv_distance(reference_psi);
        std::size_t best = 0;
        for (std::size_t i = 1; i < row.r_hist.bins(); ++i)
            if (row.r_hist.weight[i] > row.r_hist.weight[best]) best = i;
        row.mode_r = row.r_hist.center(best);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hopf
