#include "doctest.h"

#include "hopf/exponent.hpp"
#include "hopf/params.hpp"
#include "hopf/rng.hpp"

#include <cmath>

using namespace hopf;

namespace {

// Reference values computed with 50-digit arbitrary precision arithmetic
// and frozen here; the implementation must stay on them.
struct Ref {
    double zeta, psi;
};
const Ref kPsiRefs[] = {
    {0.01, -0.00513329134738524319},
    {0.1, -0.0691969805253335026},
    {0.5, -0.134875481140416926},
    {1.0, -0.112149959368239158},
    {2.0, -0.0617558838420197931},
    {3.0, -0.0198783018801759898},
    {3.45, -0.00326162875008812804},
    {3.5, -0.0014858065667963837},
    {4.0, 0.0155832636839579466},
    {5.0, 0.0465347680889383236},
    {10.0, 0.163572849072732904},
    {50.0, 0.588823048182880402},
};

// Simpson oracle for the exponent after the u = v^2 substitution:
//   E_w[u] = int v^2 g(v) dv / int g(v) dv,
//   g(v) = 2 v^2 w(v^2) = 2 v^2 exp(-(v^6/6 - v^2/2)/zeta) ... the v^2 from
// the Jacobian cancels the u^{-1/2} of the weight, leaving
//   g(v) = 2 exp(-(v^6/6 - v^2/2)/zeta).
double psi_simpson(double zeta) {
    const double hi = std::pow(6.0 * zeta * std::log(1e12), 1.0 / 3.0) + 6.0;
    const std::size_t n = 1 << 20;
    const double h = hi / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double v = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double v2 = v * v;
        const double g =
            std::exp(-(v2 * v2 * v2 / 6.0 - 0.5 * v2) / zeta);
        num += w * v2 * g;
        den += w * g;
    }
    return 0.5 * (num / den - 1.0);
}

}  // namespace

TEST_SUITE("exponent") {

TEST_CASE("frozen reference values") {
    for (const Ref& r : kPsiRefs) {
        const ExponentValue v = normalized_exponent_checked(r.zeta);
        CHECK(std::abs(v.value - r.psi) <= 1e-12);
        CHECK(v.err_bound < 1e-9);
    }
}

TEST_CASE("independent Simpson oracle") {
    for (double zeta : {0.5, 2.0, 5.0}) {
        const double oracle = psi_simpson(zeta);
        CHECK(normalized_exponent(zeta) ==
              doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("weight mass values") {
    CHECK(weight_mass(1.0) ==
          doctest::Approx(3.50013273758584121).epsilon(1e-11));
    CHECK(weight_mass(4.0) ==
          doctest::Approx(3.55906763321431393).epsilon(1e-11));
    CHECK(weight_mass(0.5) ==
          doctest::Approx(3.99797538872752605).epsilon(1e-11));
    // strong small-zeta growth; the mass itself is huge but finite here
    CHECK(weight_mass(0.01) ==
          doctest::Approx(7.57369350991159e13).epsilon(1e-9));
}

TEST_CASE("weight and truncation basics") {
    CHECK(stationary_weight(1.0, 1.0) ==
          doctest::Approx(std::exp(1.0 / 3.0)).epsilon(1e-14));
    // tail point far beyond truncation is negligible
    const double u = upper_truncation(1.0, 1e-11);
    CHECK(u >= 10.0);
    CHECK(stationary_weight(1.0, u) < 1e-11);
}

TEST_CASE("truncation invariance") {
    ExponentConfig tight;
    tight.quadrature.abs_tol = 1e-13;
    for (double zeta : {0.1, 1.0, 10.0}) {
        CHECK(std::abs(normalized_exponent(zeta) -
                       normalized_exponent(zeta, tight)) < 1e-11);
    }
}

TEST_CASE("threshold root") {
    const ThresholdResult res = chaos_threshold_detailed();
    CHECK(res.value > 3.40);
    CHECK(res.value < 3.60);
    CHECK(std::abs(res.exponent_at_root) <= 1e-8);
    CHECK(std::abs(res.value - 3.5421227374363675) < 2e-7);
    CHECK(res.bracket_lo == 3.0);
    CHECK(res.bracket_hi == 4.0);
    CHECK(res.iterations > 5);
    CHECK(res.iterations <= 200);
    // reciprocal form quoted alongside the threshold
    const double recip = 1.0 / res.value;
    CHECK(recip > 0.28);
    CHECK(recip < 0.29);
}

TEST_CASE("sign structure") {
    CHECK(normalized_exponent(0.01) < 0.0);
    CHECK(normalized_exponent(3.5) < 0.0);
    CHECK(normalized_exponent(4.0) > 0.0);
    CHECK(normalized_exponent(50.0) > 0.0);
}

TEST_CASE("closed-form lyapunov scaling identities") {
    // lambda(g a, g b, sqrt(g) s) = g lambda(a, b, s)
    // lambda(a, d b, s / d) = lambda(a, b, s)
    rng::NoiseStream ns(2024, 0);
    for (int k = 0; k < 20; ++k) {
        SimplifiedParams p;
        p.alpha_hat = 0.5 + 2.0 * ns.uniform(4 * k);
        p.b_hat = 0.5 + 2.0 * ns.uniform(4 * k + 1);
        p.sigma_hat = 0.5 + 1.5 * ns.uniform(4 * k + 2);
        const double g = 0.5 + 1.5 * ns.uniform(4 * k + 3);
        const double d = 2.0 - 0.7 * ns.uniform(4 * k + 3);

        const double base = simplified_lyapunov(p);

        SimplifiedParams scaled{g * p.alpha_hat, g * p.b_hat,
                                std::sqrt(g) * p.sigma_hat};
        CHECK(simplified_lyapunov(scaled) ==
              doctest::Approx(g * base).epsilon(1e-9));

        SimplifiedParams sheared{p.alpha_hat, d * p.b_hat, p.sigma_hat / d};
        CHECK(simplified_lyapunov(sheared) ==
              doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("limit value used by the epsilon sweep") {
    // effective zeta of (alpha, a, b', s') = (1, 1, -10, 1) is 50
    CHECK(effective_zeta(1.0, 1.0, -10.0, 1.0) ==
          doctest::Approx(50.0).epsilon(1e-14));
    CHECK(2.0 * normalized_exponent(50.0) ==
          doctest::Approx(1.177646096365761).epsilon(1e-11));
}

TEST_CASE("zeta at or below zero is rejected") {
    CHECK_THROWS(normalized_exponent(0.0));
    CHECK_THROWS(normalized_exponent(-1.0));
}

}  // TEST_SUITE
