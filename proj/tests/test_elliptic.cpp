#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "magline/elliptic.hpp"
#include "oracles.hpp"

using namespace magline;
using std::numbers::pi;

TEST_CASE("modulus domain") {
    CHECK_NOTHROW(Modulus{0.0});
    CHECK_NOTHROW(Modulus{1.0});
    CHECK_NOTHROW(Modulus{0.5});
    CHECK_THROWS_AS(Modulus{-1e-12}, DomainError);
    CHECK_THROWS_AS(Modulus{1.0 + 1e-12}, DomainError);
    CHECK_THROWS_AS(Modulus{std::nan("")}, DomainError);
}

TEST_CASE("complete integral against the AGM") {
    CHECK(std::fabs(complete_elliptic_k(Modulus{0.0}) - pi / 2) < 1e-15);

    double worst = 0.0;
    for (double k : {0.1, 0.3, 0.5, 1.0 / std::numbers::sqrt2, 0.9, 0.99, 0.999}) {
        double err = std::fabs(complete_elliptic_k(Modulus{k}) - oracle::agm_complete_k(k));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-13);

    // K(1/sqrt(2)) = Gamma(1/4)^2 / (4 sqrt(pi))
    CHECK(complete_elliptic_k(Modulus{1.0 / std::numbers::sqrt2}) ==
          doctest::Approx(1.8540746773013719184).epsilon(1e-15));

    CHECK_THROWS_AS(complete_elliptic_k(Modulus{1.0}), DivergenceError);
}

TEST_CASE("incomplete integral") {
    CHECK(incomplete_elliptic_f(pi / 6, Modulus{0.3}) ==
          doctest::Approx(0.52565822873726319435).epsilon(1e-15));

    SUBCASE("k = 0 reduces to the identity") {
        for (double phi = -4.0; phi <= 4.0; phi += 0.37)
            CHECK(std::fabs(incomplete_elliptic_f(phi, Modulus{0.0}) - phi) < 1e-14);
    }

    SUBCASE("agrees with brute-force quadrature on the principal branch") {
        double worst = 0.0;
        for (double k : {0.2, 0.5, 0.8, 0.95}) {
            for (double phi = -1.5; phi <= 1.5; phi += 0.125) {
                double err = std::fabs(incomplete_elliptic_f(phi, Modulus{k}) -
                                       oracle::incomplete_f_reference(phi, k));
                worst = std::max(worst, err);
            }
        }
        CHECK(worst < 1e-9);
    }

    SUBCASE("F(pi/2, k) = K(k)") {
        for (double k : {0.1, 0.5, 0.9})
            CHECK(std::fabs(incomplete_elliptic_f(pi / 2, Modulus{k}) -
                            complete_elliptic_k(Modulus{k})) < 1e-13);
    }

    SUBCASE("quasi-periodicity and oddness") {
        double worst = 0.0;
        for (double k : {0.3, 0.7, 0.95}) {
            double kk = complete_elliptic_k(Modulus{k});
            for (double phi = -1.4; phi <= 1.4; phi += 0.2) {
                double f = incomplete_elliptic_f(phi, Modulus{k});
                worst = std::max(worst,
                                 std::fabs(incomplete_elliptic_f(phi + pi, Modulus{k}) -
                                           (f + 2 * kk)));
                worst = std::max(worst,
                                 std::fabs(incomplete_elliptic_f(phi - 3 * pi, Modulus{k}) -
                                           (f - 6 * kk)));
                worst = std::max(worst,
                                 std::fabs(incomplete_elliptic_f(-phi, Modulus{k}) + f));
            }
        }
        CHECK(worst < 1e-12);
    }

    SUBCASE("k = 1: inverse gudermannian inside, divergence at the edge") {
        for (double phi = -1.5; phi <= 1.5; phi += 0.25)
            CHECK(std::fabs(incomplete_elliptic_f(phi, Modulus{1.0}) -
                            std::atanh(std::sin(phi))) < 1e-10);
        CHECK_THROWS_AS(incomplete_elliptic_f(pi / 2, Modulus{1.0}), DivergenceError);
        CHECK_THROWS_AS(incomplete_elliptic_f(-2.0, Modulus{1.0}), DivergenceError);
    }
}

TEST_CASE("jacobi function identities over a dense grid") {
    const std::vector<double> ks = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 0.99, 1.0};
    double worst_pyth = 0.0, worst_dn = 0.0, worst_trig = 0.0, worst_hyp = 0.0;
    for (double k : ks) {
        Modulus m{k};
        for (double u = -5.0; u <= 5.0 + 1e-12; u += 0.01) {
            EllipticEval e = jacobi_sn_cn_dn(u, m);
            worst_pyth = std::max(worst_pyth, std::fabs(e.sn * e.sn + e.cn * e.cn - 1.0));
            worst_dn = std::max(worst_dn,
                                std::fabs(e.dn * e.dn + k * k * e.sn * e.sn - 1.0));
            if (k == 0.0) {
                worst_trig = std::max(worst_trig, std::fabs(e.sn - std::sin(u)));
                worst_trig = std::max(worst_trig, std::fabs(e.cn - std::cos(u)));
            }
            if (k == 1.0) {
                worst_hyp = std::max(worst_hyp, std::fabs(e.sn - std::tanh(u)));
                worst_hyp = std::max(worst_hyp, std::fabs(e.cn - 1.0 / std::cosh(u)));
            }
        }
    }
    CHECK(worst_pyth < 1e-12);
    CHECK(worst_dn < 1e-12);
    CHECK(worst_trig < 1e-13);
    CHECK(worst_hyp < 1e-10);
}

TEST_CASE("jacobi functions invert the incomplete integral") {
    // F(am(u), k) = u ties the AGM ladder to the Carlson kernel.
    double worst = 0.0;
    for (double k : {0.3, 0.7, 0.95}) {
        Modulus m{k};
        double kk = complete_elliptic_k(m);
        for (double u = -0.99 * kk; u <= 0.99 * kk; u += kk / 40)
            worst = std::max(worst,
                             std::fabs(incomplete_elliptic_f(jacobi_sn_cn_dn(u, m).am, m) - u));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("half-period reduction sn(u + 2K) = -sn(u)") {
    double worst = 0.0;
    for (double k : {0.4, 0.85}) {
        Modulus m{k};
        double kk = complete_elliptic_k(m);
        for (double u = -3.0; u <= 3.0; u += 0.1) {
            EllipticEval e = jacobi_sn_cn_dn(u, m);
            EllipticEval sh = jacobi_sn_cn_dn(u + 2 * kk, m);
            worst = std::max(worst, std::fabs(sh.sn + e.sn));
            worst = std::max(worst, std::fabs(sh.cn + e.cn));
            worst = std::max(worst, std::fabs(sh.dn - e.dn));
        }
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("inverse sn") {
    for (double k : {0.0, 0.5, 0.9}) {
        Modulus m{k};
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double y = std::min(1.0, -1.0 + 0.05 * i);
            double u = inverse_sn(y, m);
            CHECK(std::fabs(u) <= complete_elliptic_k(m) + 1e-12);
            worst = std::max(worst, std::fabs(jacobi_sn_cn_dn(u, m).sn - y));
        }
        CHECK(worst < 1e-12);
        CHECK(inverse_sn(1.0, m) == doctest::Approx(complete_elliptic_k(m)).epsilon(1e-14));
        CHECK(inverse_sn(-1.0, m) == doctest::Approx(-complete_elliptic_k(m)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(inverse_sn(1.0 + 1e-9, Modulus{0.5}), DomainError);
}

TEST_CASE("carlson symmetric integral") {
    CHECK(carlson_rf(2.0, 2.0, 2.0) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
    CHECK(carlson_rf(0.0, 1.0, 1.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(carlson_rf(0.0, 4.0, 4.0) == doctest::Approx(pi / 4).epsilon(1e-15));

    // homogeneity R_F(s x, s y, s z) = R_F(x, y, z) / sqrt(s)
    double base = carlson_rf(1.0, 2.0, 3.0);
    CHECK(carlson_rf(4.0, 8.0, 12.0) == doctest::Approx(base / 2.0).epsilon(1e-14));

    // symmetry under argument permutation
    CHECK(carlson_rf(3.0, 1.0, 2.0) == doctest::Approx(base).epsilon(1e-15));
    CHECK(carlson_rf(2.0, 3.0, 1.0) == doctest::Approx(base).epsilon(1e-15));
}
