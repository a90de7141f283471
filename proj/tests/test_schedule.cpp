#include <cmath>
#include <string>

#include <doctest.h>

#include "bdis/errors.hpp"
#include "bdis/transform.hpp"

using namespace bdis;

namespace {

/** Independent root of (q-2) a^2 - (2 q rho - q + 4) a + 2 q (rho - 1) = 0 on
 *  (0, 1), found by bisection. The polynomial is positive at 0 and equals -6
 *  at 1, so the bracket always holds. */
double alpha_star_oracle(double q, double rho) {
    auto F = [q, rho](double a) {
        return (q - 2.0) * a * a - (2.0 * q * rho - q + 4.0) * a + 2.0 * q * (rho - 1.0);
    };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Case {
    double beta, tau, alpha_inf, rho_star, sigma;
    bool omit;
    ScheduleRegime regime;
    double exponent;   // nan: check against the large-q formula instead
    double alpha_star; // nan: check against the bisection oracle
};

} // namespace

TEST_SUITE("schedule") {

TEST_CASE("worked reference points") {
    // Matched growth, q* = 3/2: the j^-4.5 schedule with rate n^-8/11.
    SchedulePlan p = plan_schedule(1.0, 1.0, 2.0 / 3.0, 4.0, 1.0, 0.1, false);
    CHECK(p.regime == ScheduleRegime::MatchedGrowthSmallQ);
    CHECK(p.rho == 3.0);
    CHECK(p.q_star == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.exponent == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(p.alpha_star == 5.0 / 11.0); // exact: both sides round from 5/11

    // Factorial term omitted: rho = rho_star, q* = 2 boundary, exponent 4.
    p = plan_schedule(1.0, 1.0, 0.5, 2.0, 1.0, 0.1, true);
    CHECK(p.regime == ScheduleRegime::MatchedGrowthSmallQ);
    CHECK(p.rho == 2.0);
    CHECK(p.q_star == 2.0);
    CHECK(p.exponent == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(p.alpha_star == doctest::Approx(0.4).epsilon(1e-15));

    // Lognormal benchmark: beta = 2 > tau, rho = 3/2 exactly -> inversion.
    p = plan_schedule(2.0, 1.0, 2.0 / 3.0, 2.5, 1.0, 0.1, false);
    CHECK(p.regime == ScheduleRegime::Inversion);
    CHECK(p.exponent == 0.0);
    CHECK(p.alpha_star == 1.0);
}

TEST_CASE("twelve cases across all regime boundaries") {
    const double NaN = std::nan("");
    const Case cases[] = {
        // matched growth, q* inside (1, 2]
        {1.0, 1.0, 2.0 / 3.0, 4.0, 1.0, false, ScheduleRegime::MatchedGrowthSmallQ, 4.5,
         5.0 / 11.0},
        {1.0, 1.0, 0.5, 2.0, 1.0, true, ScheduleRegime::MatchedGrowthSmallQ, 4.0, 0.4},
        {1.0, 1.0, 0.5, 3.0, 1.0, false, ScheduleRegime::MatchedGrowthSmallQ, 4.0, 0.4},
        {1.5, 1.5, 0.5, 3.0, 1.0, false, ScheduleRegime::MatchedGrowthSmallQ, 8.0 / 3.0,
         2.0 / 11.0},
        // matched growth, q* above 2 (radical branch)
        {1.0, 1.0, 0.49, 4.0, 1.0, false, ScheduleRegime::MatchedGrowthLargeQ, NaN, NaN},
        {1.0, 1.0, 0.25, 4.0, 1.0, false, ScheduleRegime::MatchedGrowthLargeQ, NaN, NaN},
        {1.0, 1.0, 0.1, 2.2, 1.0, false, ScheduleRegime::MatchedGrowthLargeQ, 3.0, 0.25},
        // beta > tau, rho below 3/2: slow polynomial damping
        {2.0, 1.0, 0.5, 2.4, 1.0, false, ScheduleRegime::SubcriticalGrowth, 14.0, 0.8},
        {2.0, 1.0, 0.5, 1.25, 0.0, false, ScheduleRegime::SubcriticalGrowth, 5.0, 0.5},
        // beta > tau, rho at or above 3/2: no damping
        {2.0, 1.0, 2.0 / 3.0, 2.5, 1.0, false, ScheduleRegime::Inversion, 0.0, 1.0},
        {2.0, 1.0, 0.5, 4.0, 1.0, false, ScheduleRegime::Inversion, 0.0, 1.0},
        {3.0, 0.5, 1.5, 10.0, 1.0, false, ScheduleRegime::Inversion, 0.0, 1.0},
    };
    int index = 0;
    for (const Case& c : cases) {
        CAPTURE(index);
        SchedulePlan p = plan_schedule(c.beta, c.tau, c.alpha_inf, c.rho_star, c.sigma,
                                       0.1, c.omit);
        CHECK(p.regime == c.regime);
        double expected_alpha =
            std::isnan(c.alpha_star) ? alpha_star_oracle(p.q_star, p.rho) : c.alpha_star;
        CHECK(p.alpha_star == doctest::Approx(expected_alpha).epsilon(1e-12));
        double expected_expo = c.exponent;
        if (std::isnan(expected_expo))
            expected_expo =
                2.0 * p.rho / (2.0 * expected_alpha / p.q_star + 1.0 - expected_alpha);
        CHECK(p.exponent == doctest::Approx(expected_expo).epsilon(1e-12));
        ++index;
    }
}

TEST_CASE("radical branch satisfies its defining quadratic") {
    for (double q : {2.1, 3.0, 4.0, 10.0, 50.0}) {
        for (double rho : {1.2, 2.0, 3.0, 6.0}) {
            SchedulePlan p = plan_schedule(1.0, 1.0, 1.0 / q, rho + 1.0, 1.0, 0.1, false);
            CHECK(p.regime == ScheduleRegime::MatchedGrowthLargeQ);
            CHECK(p.alpha_star == doctest::Approx(alpha_star_oracle(q, rho)).epsilon(1e-11));
            CHECK(p.alpha_star > 0.0);
            CHECK(p.alpha_star < 1.0);
        }
    }
}

TEST_CASE("named precondition failures") {
    CHECK_THROWS_WITH_AS(plan_schedule(1.0, 1.0, 0.5, 2.0, 1.0, 0.1, false),
                         doctest::Contains("rho > 1 required"), config_error);
    CHECK_THROWS_WITH_AS(plan_schedule(1.0, 1.0, 1.2, 4.0, 1.0, 0.1, false),
                         doctest::Contains("beta*alpha_inf < 1 required"), config_error);
    CHECK_THROWS_WITH_AS(plan_schedule(1.0, 1.0, 0.9, 2.5, 1.0, 0.1, false),
                         doctest::Contains("rho > 2*beta*alpha_inf required"),
                         config_error);
    CHECK_THROWS_WITH_AS(plan_schedule(1.0, 2.0, 0.5, 4.0, 1.0, 0.1, false),
                         doctest::Contains("tau <= beta required"), config_error);
    CHECK_THROWS_AS(plan_schedule(1.0, 1.0, 0.5, 4.0, 1.0, 0.6, false), config_error);
}

TEST_CASE("materialized damping widths") {
    SchedulePlan p = plan_schedule(1.0, 1.0, 2.0 / 3.0, 4.0, 1.0, 0.1, false);
    bool clipped = true;
    Eigen::VectorXd th = schedule_thetas(p, 6, &clipped);
    CHECK(!clipped);
    CHECK(th.size() == 6);
    CHECK(th(0) == doctest::Approx(0.1).epsilon(1e-15));
    for (int j = 1; j < 6; ++j) {
        CHECK(th(j) == doctest::Approx(0.1 * std::pow(j + 1.0, -4.5)).epsilon(1e-14));
        CHECK(th(j) < th(j - 1));
    }
    // Doubling j scales theta by exactly 2^-exponent.
    Eigen::VectorXd th16 = schedule_thetas(p, 16, nullptr);
    CHECK(th16(7) / th16(3) == doctest::Approx(std::pow(2.0, -4.5)).epsilon(1e-14));

    // A guard-value plan above 1/2 clips with its flag raised.
    SchedulePlan wild = p;
    wild.theta0 = 0.4;
    wild.exponent = -1.0; // growing widths, theta_2 = 0.8
    Eigen::VectorXd clippedv = schedule_thetas(wild, 3, &clipped);
    CHECK(clipped);
    CHECK(clippedv(1) == 0.499999);
    CHECK(clippedv(2) == 0.499999);

    // Inversion plans materialize to zeros.
    SchedulePlan inv = plan_schedule(2.0, 1.0, 2.0 / 3.0, 2.5, 1.0, 0.1, false);
    CHECK(schedule_thetas(inv, 4, nullptr).isZero());
}

} // TEST_SUITE
