#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "bdis/errors.hpp"
#include "bdis/transform.hpp"
#include "support/oracles.hpp"

using namespace bdis;

TEST_SUITE("transform") {

TEST_CASE("ramp endpoint values") {
    for (double p : {1.0, 2.0, 3.5}) {
        CHECK(bump(0.0, p) == 0.0);
        CHECK(bump(0.5, p) == doctest::Approx(0.5).epsilon(1e-14));
    }
    // Deep inside the flat spot every derivative is numerically dead.
    CHECK(bump(1e-3, 1.0) == 0.0);
    CHECK(bump(1e-300, 1.0) == 0.0); // no overflow from u^{-p-1}
    CHECK(bump(5e-2, 1.0) > 0.0);
}

TEST_CASE("ramp antiderivative differentiates back") {
    for (double p : {1.0, 2.0}) {
        for (double x : {0.1, 0.2, 0.35, 0.45}) {
            double h = 1e-6;
            double fd = (bump_integral(x + h, p) - bump_integral(x - h, p)) / (2.0 * h);
            CHECK(fd == doctest::Approx(bump(x, p)).epsilon(1e-7));
        }
        CHECK(bump_integral(0.5, p) ==
              doctest::Approx(1.0 / (p * std::pow(2.0, p + 2.0))).epsilon(1e-14));
        double direct = oracles::romberg([p](double t) { return bump(t, p); }, 0.0, 0.3);
        CHECK(bump_integral(0.3, p) == doctest::Approx(direct).epsilon(1e-11));
    }
}

TEST_CASE("weight shape") {
    // theta = 0 is identically one.
    for (double u : {1e-9, 0.2, 0.5, 0.9, 1.0 - 1e-9})
        CHECK(weight(u, 0.0, 1.0) == 1.0);

    for (double theta : {0.05, 0.25, 0.5}) {
        for (double p : {1.0, 2.0}) {
            double plateau = 1.0 / (1.0 - theta);
            // Constant on [theta, 1 - theta].
            for (double u : {theta, 0.5 * (theta + 0.5), 0.5, 1.0 - theta})
                CHECK(weight(u, theta, p) == doctest::Approx(plateau).epsilon(1e-14));
            // Mirror symmetry, bitwise when reflected from the upper half
            // (1 - v is then exact, so both calls see the same argument).
            for (double v : {0.51, 0.7, 0.9, 0.99, 0.995})
                CHECK(weight(v, theta, p) == weight(1.0 - v, theta, p));
            // Bounded by 2 and nonnegative.
            for (double u = 1e-3; u < 1.0; u += 1e-3) {
                double w = weight(u, theta, p);
                CHECK(w >= 0.0);
                CHECK(w <= 2.0 + 1e-15);
            }
            // Continuity at the piece joints.
            double h = 1e-9;
            for (double joint : {0.5 * theta, theta}) {
                double left = weight(joint - h, theta, p);
                double right = weight(joint + h, theta, p);
                CHECK(left == doctest::Approx(right).epsilon(1e-6));
            }
            // Half-ramp value: w(theta/2) = (1/2) / (1 - theta).
            CHECK(weight(0.5 * theta, theta, p) ==
                  doctest::Approx(0.5 * plateau).epsilon(1e-13));
        }
    }
}

TEST_CASE("weight integrates to one") {
    for (double theta : {0.05, 0.25, 0.5}) {
        for (double p : {1.0, 2.0}) {
            double integral = oracles::romberg(
                [theta, p](double u) { return weight(u, theta, p); }, 0.0, 1.0);
            CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("cumulative weight closed form") {
    CHECK(weight_cdf(0.1, 0.3, 1.0) ==
          doctest::Approx(0.01970782720561298151).epsilon(1e-14)); // frozen reference
    for (double theta : {0.05, 0.25, 0.5}) {
        for (double p : {1.0, 2.0}) {
            CHECK(weight_cdf(0.0, theta, p) == 0.0);
            CHECK(weight_cdf(0.5, theta, p) == doctest::Approx(0.5).epsilon(1e-14));
            CHECK(weight_cdf(1.0, theta, p) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(weight_cdf(theta, theta, p) ==
                  doctest::Approx(0.5 * theta / (1.0 - theta)).epsilon(1e-13));
            // Against independent quadrature of the weight.
            for (double u : {0.02, 0.15, 0.4, 0.77}) {
                double direct = oracles::romberg(
                    [theta, p](double t) { return weight(t, theta, p); }, 0.0, u);
                CHECK(weight_cdf(u, theta, p) == doctest::Approx(direct).epsilon(1e-11));
            }
            // Complement symmetry and monotonicity.
            double prev = 0.0;
            for (double u = 0.0; u <= 1.0 + 1e-12; u += 1.0 / 64) {
                double w = weight_cdf(u, theta, p);
                CHECK(w >= prev);
                prev = w;
                CHECK(weight_cdf(1.0 - u, theta, p) ==
                      doctest::Approx(1.0 - w).epsilon(1e-14));
            }
        }
    }
    // theta = 0 reduces to the identity.
    for (double u : {0.0, 0.25, 0.6, 1.0}) CHECK(weight_cdf(u, 0.0, 1.0) == u);
}

TEST_CASE("transport identities") {
    BetaGaussian g1(1.0), g2(2.0);
    for (const auto* d : {&g1, &g2}) {
        for (double theta : {0.0, 0.25}) {
            CHECK(transport(0.5, theta, 1.0, *d) == 0.0);
            for (double u : {1e-6, 0.04, 0.2, 0.45, 0.71, 1.0 - 1e-6}) {
                double x = transport(u, theta, 1.0, *d);
                CHECK(std::abs(cdf(*d, x) - weight_cdf(u, theta, 1.0)) <= 1e-10);
            }
            // Reflection is exact when taken from the upper half, where 1 - v
            // is computed without rounding.
            for (double v : {0.51, 0.8, 0.97, 1.0 - 1e-6})
                CHECK(transport(v, theta, 1.0, *d) ==
                      -transport(1.0 - v, theta, 1.0, *d));
        }
        // theta = 0 is plain inversion.
        for (double u : {0.001, 0.3, 0.8})
            CHECK(transport(u, 0.0, 1.0, *d) == quantile(*d, u));
    }
    // Pushforward: T'(u) pdf(T(u)) = weight(u).
    for (double u : {0.1, 0.3, 0.45}) {
        double theta = 0.25, h = 1e-6;
        double tp =
            (transport(u + h, theta, 1.0, g2) - transport(u - h, theta, 1.0, g2)) /
            (2.0 * h);
        double lhs = tp * pdf(g2, transport(u, theta, 1.0, g2));
        CHECK(lhs == doctest::Approx(weight(u, theta, 1.0)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(transport(0.0, 0.1, 1.0, g2), std::domain_error);
    CHECK_THROWS_AS(transport(1.0, 0.1, 1.0, g2), std::domain_error);
}

TEST_CASE("vector apply") {
    BetaGaussian g1(1.0);
    Eigen::VectorXd thetas(3);
    thetas << 0.25, 0.1, 0.0;
    BdisTransform t(g1, thetas, 1.0);
    Eigen::RowVectorXd u(3), x(3);

    u << 0.5, 0.5, 0.5;
    double lw = apply(t, u, x);
    CHECK(x.norm() == 0.0);
    double expected = -std::log(0.75) - std::log(0.9);
    CHECK(lw == doctest::Approx(expected).epsilon(1e-14));

    // theta/2 continuity point from the weight table: w = (1/2)/(1-theta).
    u << 0.125, 0.5, 0.5;
    lw = apply(t, u, x);
    CHECK(std::exp(lw) ==
          doctest::Approx((0.5 / 0.75) * (1.0 / 0.9)).epsilon(1e-13));

    // All-zero damping: log weight 0 and componentwise quantiles.
    BdisTransform t0(g1, Eigen::VectorXd::Zero(3), 1.0);
    u << 0.2, 0.6, 0.9;
    lw = apply(t0, u, x);
    CHECK(lw == 0.0);
    for (int j = 0; j < 3; ++j)
        CHECK(x(j) == quantile(g1, u(j)));

    // A coordinate deep in the damped boundary kills the whole weight.
    u << 1e-5 * 0.25, 0.5, 0.5;
    Eigen::RowVectorXd untouched = Eigen::RowVectorXd::Constant(3, 123.0);
    lw = apply(t, u, untouched);
    CHECK(lw == -std::numeric_limits<double>::infinity());
    CHECK(untouched(0) == 123.0); // x not written for zero-weight points

    // Coordinates at exactly 0 or 1 are rejected.
    u << 0.0, 0.5, 0.5;
    CHECK_THROWS_AS(apply(t, u, x), std::domain_error);
    u << 0.2, 1.0, 0.5;
    CHECK_THROWS_AS(apply(t, u, x), std::domain_error);
}

TEST_CASE("transform validation") {
    BetaGaussian g(1.0);
    Eigen::VectorXd bad(2);
    bad << 0.6, 0.1; // theta above 1/2
    CHECK_THROWS_AS(BdisTransform(g, bad, 1.0), config_error);
    bad << -0.1, 0.1;
    CHECK_THROWS_AS(BdisTransform(g, bad, 1.0), config_error);
    Eigen::VectorXd ok = Eigen::VectorXd::Constant(2, 0.1);
    CHECK_THROWS_AS(BdisTransform(g, ok, 0.5), config_error); // p < 1
}

} // TEST_SUITE
