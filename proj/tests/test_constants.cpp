#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "levylab/constants.hpp"
#include "levylab/rng.hpp"
#include "oracles.hpp"

using namespace levylab;

TEST_SUITE("constants") {

TEST_CASE("gaussian absolute moments") {
    CHECK(gaussian_abs_moment(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gaussian_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gaussian_abs_moment(1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
    CHECK(gaussian_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(gaussian_abs_moment(-0.5), std::invalid_argument);
}

TEST_CASE("moment recursion m_{q+2} = (q+1) m_q") {
    for (double q = 0.0; q <= 8.0; q += 0.5) {
        const double lhs = gaussian_abs_moment(q + 2.0);
        const double rhs = (q + 1.0) * gaussian_abs_moment(q);
        CHECK(std::fabs(lhs / rhs - 1.0) < 1e-12);
    }
}

TEST_CASE("f_alpha closed-form spot values") {
    CHECK(f_alpha(1.5, 0.5) == doctest::Approx(std::pow(4.0 / 3.0, 1.5)).epsilon(1e-14));
    CHECK(f_alpha(1.0, 0.9) == doctest::Approx(2.0 / 1.9).epsilon(1e-14));
    CHECK_THROWS_AS(f_alpha(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(f_alpha(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f_alpha(0.9, 0.5), std::invalid_argument);
}

TEST_CASE("f_alpha bound and small-r asymptote") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const double alpha = 1.0 + rng.uniform01();
        const double r = std::min(1.0 - 1e-12, rng.uniform_pos());
        const double f = f_alpha(alpha, r);
        CHECK(f > 0.0);
        CHECK(f <= std::pow(r, -alpha) * (1.0 + 1e-12));
    }
    for (const double alpha : {1.0, 1.5, 2.0}) {
        const double r = 1e-3;
        const double ratio = f_alpha(alpha, r) * (alpha + 1.0) * std::pow(r, alpha);
        CHECK(std::fabs(ratio - 1.0) < 0.02);
    }
}

TEST_CASE("f_alpha matches the independent inline sum") {
    for (const double alpha : {1.0, 1.3, 1.7, 2.0})
        for (const double r : {0.01, 0.1, 0.35, 0.6, 0.99})
            CHECK(f_alpha(alpha, r) == doctest::Approx(oracles::f_sum(alpha, r)).epsilon(1e-13));
}

TEST_CASE("d_const against the Riemann oracle") {
    // q - alpha >= 1.5 keeps the raw integrand kink-friendly for the midpoint
    // oracle; relative agreement 1e-6
    const double mu = 3.0;
    const double alpha = 1.5;
    for (const double q : {3.0, 4.0, 5.0}) {
        const double oracle_integral = oracles::d_integral_riemann(alpha, q, 1000000);
        const double prefactor = std::sqrt(2.0 / mu) *
                                 std::exp(log_gamma(q - alpha + 1.0) - log_gamma(q - alpha + 1.5));
        const double expected = prefactor * oracle_integral;
        CHECK(d_const(mu, alpha, q) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("d_const scaling in mu and domain") {
    const double base = d_const(3.0, 1.5, 4.0);
    CHECK(d_const(12.0, 1.5, 4.0) == doctest::Approx(base / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(d_const(3.0, 1.5, 1.5), std::invalid_argument);  // q < 2 alpha - 1
    CHECK_THROWS_AS(d_const(3.0, 1.0, 1.0), std::invalid_argument);  // corner needs alpha > 1
    CHECK_NOTHROW(d_const(3.0, 1.5, 2.0));                           // corner, alpha > 1
    CHECK_NOTHROW(d_const(3.0, 1.0, 1.5));                           // q > corner at alpha = 1
}

TEST_CASE("d_const decreases in q at fixed mu, alpha") {
    // direct evaluation: the r^{q-1} factor shrinks pointwise on (0,1) and the
    // Gamma ratio decreases, so d falls as q grows
    const double d3 = d_const(3.0, 1.5, 3.0);
    const double d4 = d_const(3.0, 1.5, 4.0);
    const double d5 = d_const(3.0, 1.5, 5.0);
    CHECK(d3 > d4);
    CHECK(d4 > d5);
}

TEST_CASE("F_const against the post-substitution Riemann oracle") {
    const double mu = 3.0;
    const double alpha = 1.5;
    const double a = 0.5;
    const double expected = oracles::F_riemann(mu, alpha, a, 1000000);
    CHECK(F_const(mu, alpha, a) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("F_const edge cases and monotonicity in a") {
    CHECK(F_const(3.0, 1.5, 1.0) == 0.0);
    CHECK_THROWS_AS(F_const(3.0, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(F_const(3.0, 1.5, 1.5), std::invalid_argument);
    const double f25 = F_const(3.0, 1.5, 0.25);
    const double f50 = F_const(3.0, 1.5, 0.5);
    const double f75 = F_const(3.0, 1.5, 0.75);
    CHECK(f25 > f50);
    CHECK(f50 > f75);
    CHECK(f75 > 0.0);
}

TEST_CASE("moment asymptote branches") {
    const GapLaw gaps = GapLaw::pareto(1.5, 1.0);
    const double mu = 3.0;
    SUBCASE("diffusive branch q < 2 alpha - 1") {
        const double t = 4.0;
        const double expected = gaussian_abs_moment(1.0) * std::sqrt(mu) * std::sqrt(t);
        CHECK(moment_asymptote(mu, 1.5, 1.0, t, gaps) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("ballistic branch q > 2 alpha - 1: d t^{q+1/2} tau(t) = d t^3 at q = 4") {
        const double t = 100.0;
        const double expected = d_const(mu, 1.5, 4.0) * std::pow(t, 3.0);
        CHECK(moment_asymptote(mu, 1.5, 4.0, t, gaps) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("corner q = 2 alpha - 1 keeps both terms") {
        const double t = 100.0;
        const double diff = gaussian_abs_moment(2.0) * mu * t;
        const double ball = d_const(mu, 1.5, 2.0) * std::pow(t, 2.5) * gaps.tail(t);
        CHECK(moment_asymptote(mu, 1.5, 2.0, t, gaps) ==
              doctest::Approx(diff + ball).epsilon(1e-9));
        CHECK(ball > 0.0);
    }
    SUBCASE("mismatched tail index rejected") {
        CHECK_THROWS_AS(moment_asymptote(mu, 1.2, 1.0, 4.0, gaps), std::invalid_argument);
    }
    SUBCASE("infinite-mean gap law rejected") {
        CHECK_THROWS_AS(moment_asymptote(3.0, 0.5, 1.0, 4.0, GapLaw::pareto(0.5, 1.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("gamma exponent branches and exact corner continuity") {
    CHECK(gamma_exponent(1.5, 1.0) == doctest::Approx(0.5));
    CHECK(gamma_exponent(1.5, 2.0) == 1.0);
    CHECK(gamma_exponent(1.5, 4.0) == doctest::Approx(3.0));
    for (const double alpha : {1.0, 1.1, 1.3, 1.5, 1.8, 2.0}) {
        const double corner = 2.0 * alpha - 1.0;
        CHECK(0.5 * corner == corner + 0.5 - alpha);  // bit-exact
        CHECK(gamma_exponent(alpha, corner) == 0.5 * corner);
    }
}

TEST_CASE("quadratures are reproducible across calls") {
    CHECK(d_const(3.0, 1.5, 4.0) == d_const(3.0, 1.5, 4.0));
    CHECK(F_const(3.0, 1.5, 0.5) == F_const(3.0, 1.5, 0.5));
}

TEST_CASE("zeta helpers") {
    CHECK(detail::riemann_zeta(2.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
    CHECK(detail::riemann_zeta(4.0) ==
          doctest::Approx(std::pow(M_PI, 4.0) / 90.0).epsilon(1e-13));
    // Hurwitz tail consistency: zeta(s) = sum_{j<10} (1+j)^{-s} + zeta_H(s, 11)
    double head = 0.0;
    for (int j = 1; j <= 10; ++j) head += std::pow(j, -2.5);
    CHECK(head + detail::hurwitz_zeta(2.5, 11.0) ==
          doctest::Approx(detail::riemann_zeta(2.5)).epsilon(1e-13));
}

}  // TEST_SUITE
