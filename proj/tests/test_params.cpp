#include "doctest.h"

#include "hopf/params.hpp"

#include <cmath>

using namespace hopf;

TEST_SUITE("params") {

TEST_CASE("hat map on the reference point") {
    const SimplifiedParams h = to_hat_params(1.0, 1.0, 1.0, 1.0);
    CHECK(h.alpha_hat == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h.b_hat == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h.sigma_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.zeta() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("effective_zeta agrees with the hat-map zeta") {
    const double alphas[] = {0.5, 1.0, 2.0, 3.7};
    const double as[] = {0.3, 1.0, 2.5};
    const double bps[] = {-10.0, -1.0, 0.7, 5.0};
    for (double alpha : alphas)
        for (double a : as)
            for (double bp : bps) {
                const double sp = 1.3;
                const double direct = effective_zeta(alpha, a, bp, sp);
                const double via_hat = to_hat_params(alpha, a, bp, sp).zeta();
                CHECK(direct == doctest::Approx(via_hat).epsilon(1e-12));
            }
}

TEST_CASE("rescaling to physical parameters") {
    ScaledHopfParams sp;
    sp.alpha = 2.0;
    sp.beta = -3.0;
    sp.a = 0.5;
    sp.scaling = {-10.0, 1.5, 0.1};
    const HopfParams p = sp.physical();
    CHECK(p.b == doctest::Approx(-100.0).epsilon(1e-15));
    CHECK(p.sigma == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(p.alpha == 2.0);
    CHECK(p.beta == -3.0);

    // eps = 1 is the identity embedding
    sp.scaling = {-10.0, 1.5, 1.0};
    const HopfParams q = sp.physical();
    CHECK(q.b == -10.0);
    CHECK(q.sigma == 1.5);
}

TEST_CASE("limit radius") {
    HopfParams p;
    p.alpha = 4.0;
    p.a = 1.0;
    CHECK(p.limit_radius() == doctest::Approx(2.0).epsilon(1e-15));
    ScaledHopfParams sp;
    sp.alpha = 9.0;
    sp.a = 4.0;
    CHECK(sp.limit_radius() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("validation rejects bad parameters") {
    HopfParams p;
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha = 1.0;
    p.a = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.a = 1.0;
    p.sigma = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.sigma = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    ShearScaling s;
    s.eps = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    SimplifiedParams h;
    h.alpha_hat = -2.0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);

    CHECK_THROWS_AS(to_hat_params(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
