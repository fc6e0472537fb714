#include "doctest.h"

#include "hopf/rng.hpp"
#include "hopf/stationary.hpp"

#include <cmath>
#include <vector>

using namespace hopf;

TEST_SUITE("stationary") {

TEST_CASE("erfc reference values") {
    // the normalizer and cdf lean on std::erfc; pin it against an external
    // reference before trusting anything downstream
    CHECK(std::erfc(1.0) ==
          doctest::Approx(0.15729920705028513).epsilon(1e-13));
    CHECK(std::erfc(0.5) ==
          doctest::Approx(0.47950012218695346).epsilon(1e-13));
    CHECK(std::erfc(-2.0) ==
          doctest::Approx(1.9953222650189527).epsilon(1e-13));
    CHECK(std::erfc(5.0) ==
          doctest::Approx(1.5374597944280349e-12).epsilon(1e-13));
    CHECK(std::erfc(7.85) ==
          doctest::Approx(1.2325048558857968e-28).epsilon(1e-13));
}

TEST_CASE("closed-form normalizer") {
    CHECK(RadialStationary(1.0, 1.0, 1.0, 0.2).normalization ==
          doctest::Approx(3.989423947588972).epsilon(1e-13));
    CHECK(RadialStationary(1.0, 1.0, 1.0, 0.5).normalization ==
          doctest::Approx(1.6329182267242952).epsilon(1e-13));
    CHECK(RadialStationary(2.0, 0.5, 1.5, 0.3).normalization ==
          doctest::Approx(1.2537546303111291).epsilon(1e-13));
    CHECK(RadialStationary(1.0, 1.0, 1.0, 0.05).normalization ==
          doctest::Approx(15.957691216057306).epsilon(1e-13));
}

TEST_CASE("density integrates to one") {
    for (double eps : {0.05, 0.2, 1.0}) {
        const RadialStationary xi(1.0, 1.0, 1.0, eps);
        const double mass =
            xi.integrate_against([](double) { return 1.0; }, 0.0, 6.0);
        CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
}

TEST_CASE("zero probability flux") {
    // stationarity in one dimension means the flux v(r) xi - (e^2 s'^2/2) xi'
    // vanishes identically; check the analytic pdf against a finite
    // difference of itself
    const RadialStationary xi(1.0, 1.0, 1.0, 0.2);
    const double half_d = 0.5 * xi.eps * xi.eps * xi.sigma_prime *
                          xi.sigma_prime;
    const double h = 1e-6;
    for (int i = 0; i < 10; ++i) {
        const double r = 0.3 + 2.2 * i / 9.0;
        const double v = xi.alpha * r - xi.a * r * r * r + half_d / r;
        const double dxi = (xi.pdf(r + h) - xi.pdf(r - h)) / (2.0 * h);
        CHECK(half_d * dxi == doctest::Approx(v * xi.pdf(r)).epsilon(1e-6));
    }
}

TEST_CASE("fokker-planck residual vanishes") {
    for (double eps : {0.1, 0.2, 0.5}) {
        const RadialStationary xi(1.0, 1.0, 1.0, eps);
        for (int i = 0; i <= 56; ++i) {
            const double r = 0.2 + 2.8 * i / 56.0;
            CHECK(std::abs(xi.fp_residual(r)) <= 1e-6);
        }
    }
}

TEST_CASE("mode sits at the density argmax") {
    const RadialStationary xi(1.0, 1.0, 1.0, 0.02);
    const double m = xi.mode();
    CHECK(std::abs(m - 1.0) <= 1e-3);  // concentrates on the cycle radius
    double best_r = 0.0, best = -1.0;
    for (int i = 0; i <= 20000; ++i) {
        const double r = 0.9 + 0.2 * i / 20000.0;
        const double v = xi.pdf(r);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    CHECK(std::abs(m - best_r) <= 2e-5);
    // argmax really is a max
    CHECK(xi.pdf(m) > xi.pdf(m * 0.99));
    CHECK(xi.pdf(m) > xi.pdf(m * 1.01));
}

TEST_CASE("frozen quantiles and cdf roundtrip") {
    const RadialStationary xi(1.0, 1.0, 1.0, 0.2);
    const struct {
        double q, p;
    } refs[] = {
        {0.01, 0.53473255471327386}, {0.25, 0.8651021852688261},
        {0.50, 1.0000000718528934},  {0.75, 1.1348979951419109},
        {0.99, 1.465269596318755},
    };
    for (const auto& ref : refs) {
        const double r = xi.quantile(ref.q);
        CHECK(r * r == doctest::Approx(ref.p).epsilon(1e-10));
        CHECK(xi.cdf(r) == doctest::Approx(ref.q).epsilon(1e-9));
    }
    CHECK(xi.cdf(1e-12) <= 1e-300);
    CHECK(xi.cdf(50.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("inverse-cdf sampler passes kolmogorov-smirnov") {
    const RadialStationary xi(1.0, 1.0, 1.0, 0.2);
    rng::NoiseStream stream(31, 0);
    std::vector<double> samples(100000);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = xi.sample(stream, i);
    const double d =
        ks_statistic(samples, [&](double r) { return xi.cdf(r); });
    CHECK(d <= 0.006);
}

TEST_CASE("sample spread scales linearly with eps") {
    auto moments = [](const RadialStationary& xi, std::uint64_t seed,
                      double* mean_p, double* sd_p) {
        rng::NoiseStream stream(seed, 0);
        const int n = 20000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = xi.sample(stream, static_cast<std::uint64_t>(i));
            s1 += r * r;
            s2 += r * r * r * r;
        }
        *mean_p = s1 / n;
        *sd_p = std::sqrt((s2 - s1 * s1 / n) / (n - 1));
    };
    const RadialStationary wide(1.0, 1.0, 1.0, 0.2);
    const RadialStationary narrow(1.0, 1.0, 1.0, 0.02);
    double mw, sw, mn, sn;
    moments(wide, 32, &mw, &sw);
    moments(narrow, 33, &mn, &sn);
    CHECK(sw / sn > 8.0);
    CHECK(sw / sn < 12.0);
    // p = r^2 is (truncated) normal around rhat^2 with sd eps s'/sqrt(a)
    CHECK(std::abs(mw - wide.mean_p) <= 3.0 * wide.sd_p / std::sqrt(20000.0));
    CHECK(std::abs(mn - narrow.mean_p) <=
          3.0 * narrow.sd_p / std::sqrt(20000.0));
}

TEST_CASE("mid-radius band carries transcendentally small mass") {
    // band (rhat/3, 2 rhat/3]: eleven sigma out at eps = 0.05
    const RadialStationary xi(1.0, 1.0, 1.0, 0.05);
    const double mass = xi.cdf(2.0 / 3.0) - xi.cdf(1.0 / 3.0);
    CHECK(mass > 0.0);
    CHECK(mass <= 1e-28);
    CHECK(mass == doctest::Approx(5.5386e-29).epsilon(1e-3));
    CHECK(mass <= std::exp(-1.0 / 0.05));
}

TEST_CASE("concentration bound for window-vanishing observables") {
    const RadialStationary xi(1.0, 1.0, 1.0, 0.1);
    // margin 0.35 so the observable vanishes strictly inside the declared
    // window; at exactly 0.3 the clamp leaves 4e-17 residue at the endpoints
    auto dist = [](double r) {
        const double d = std::abs(r - 1.0) - 0.35;
        return d > 0.0 ? d : 0.0;
    };
    const ConcentrationResult res = concentration_check(xi, dist, 0.7, 1.3);
    CHECK(res.holds);
    CHECK(res.bound == doctest::Approx(std::exp(-10.0)).epsilon(1e-14));
    CHECK(res.integral_abs < res.bound);

    const ConcentrationResult zero =
        concentration_check(xi, [](double) { return 0.0; }, 0.7, 1.3);
    CHECK(zero.holds);
    CHECK(zero.integral_abs == 0.0);

    CHECK_THROWS_AS(
        concentration_check(xi, [](double r) { return std::sin(r); }, 0.7,
                            1.3),
        std::invalid_argument);
    CHECK_THROWS_AS(concentration_check(xi, dist, 1.5, 2.0),
                    std::invalid_argument);
}

TEST_CASE("histogram accounting") {
    Histogram h = Histogram::uniform_bins(4, 0.0, 4.0);
    REQUIRE(h.bins() == 4);
    CHECK(h.edges.front() == 0.0);
    CHECK(h.edges.back() == 4.0);
    CHECK(h.center(1) == doctest::Approx(1.5));
    h.add(0.5);
    h.add(1.5, 2.0);
    h.add(-1.0);
    h.add(7.0, 0.5);
    CHECK(h.total() == doctest::Approx(4.5));
    CHECK(h.below == doctest::Approx(1.0));
    CHECK(h.above == doctest::Approx(0.5));
    h.normalize();
    CHECK(h.total() == doctest::Approx(1.0));
    CHECK(h.weight[0] == doctest::Approx(1.0 / 4.5));
    CHECK(h.weight[1] == doctest::Approx(2.0 / 4.5));
    CHECK(h.mean_abs_deviation(1.5) ==
          doctest::Approx((1.0 / 4.5) * 1.0 + 0.0).epsilon(1e-12));

    Histogram same = Histogram::uniform_bins(4, 0.0, 4.0);
    same.add(0.5);
    same.add(1.5, 2.0);
    same.add(-1.0);
    same.add(7.0, 0.5);
    same.normalize();
    CHECK(h.tv_distance(same) == 0.0);

    Histogram disjoint = Histogram::uniform_bins(4, 0.0, 4.0);
    disjoint.add(3.5);
    disjoint.normalize();
    CHECK(h.tv_distance(disjoint) == doctest::Approx(1.0));

    Histogram other_edges = Histogram::uniform_bins(5, 0.0, 4.0);
    CHECK_THROWS_AS(h.tv_distance(other_edges), std::invalid_argument);
    CHECK_THROWS_AS(Histogram::log_bins(4, 0.0, 1.0), std::invalid_argument);

    const Histogram lg = Histogram::log_bins(10, 1e-3, 10.0);
    CHECK(lg.edges.front() == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(lg.edges.back() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(lg.edges[5] / lg.edges[4] ==
          doctest::Approx(lg.edges[1] / lg.edges[0]).epsilon(1e-12));

    CHECK(make_angle_histogram().bins() == 720);
    CHECK(make_radius_histogram(1.0).bins() == 400);
}

TEST_CASE("angle occupation measure is seed-deterministic") {
    const SimplifiedParams p{2.0, 2.0, 1.0};
    const Histogram a = empirical_angle_measure(p, 50.0, 5.0, 1e-3, 42);
    const Histogram b = empirical_angle_measure(p, 50.0, 5.0, 1e-3, 42);
    CHECK(a.tv_distance(b) == 0.0);
    const Histogram c = empirical_angle_measure(p, 50.0, 5.0, 1e-3, 43);
    const double tv = a.tv_distance(c);
    CHECK(tv > 0.0);
    CHECK(tv < 0.8);  // same law, finite-time fluctuation only
    CHECK_THROWS_AS(empirical_angle_measure(p, 1.0, 5.0, 1e-3, 42),
                    std::invalid_argument);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(RadialStationary(0.0, 1.0, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(RadialStationary(1.0, -1.0, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(RadialStationary(1.0, 1.0, 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(RadialStationary(1.0, 1.0, 1.0, 0.0), std::domain_error);
}

}  // TEST_SUITE
