#pragma once

#include <Eigen/Core>

#include "bdis/distribution.hpp"

namespace bdis {

/** Smooth ramp eta_p on [0, 1/2]: 2^{-p-2} u^{-p-1} exp(2^p - u^{-p}), with
 *  eta_p(0) = 0 and eta_p(1/2) = 1/2 for every p >= 1. All derivatives vanish
 *  at 0, which is what makes the damped weight below infinitely smooth at the
 *  cube boundary. */
double bump(double u, double p);

/** Closed-form antiderivative of bump: \int_0^x eta_p = exp(2^p - x^{-p}) / (p 2^{p+2}). */
double bump_integral(double x, double p);

/** Boundary-damping weight w_theta on [0, 1]: rises smoothly from 0 on
 *  (0, theta), sits at the constant (1-theta)^{-1} on [theta, 1-theta], and
 *  mirrors back down near 1. theta = 0 gives w == 1 (plain inversion).
 *  Requires theta in [0, 1/2] and p >= 1. Bounded by (1-theta)^{-1} <= 2. */
double weight(double u, double theta, double p);

/** Cumulative weight W_theta(u) = \int_0^u w_theta, evaluated in closed form.
 *  W(0) = 0, W(1/2) = 1/2, W(1) = 1, and W is a CDF on [0, 1]. */
double weight_cdf(double u, double theta, double p);

/** Damped inverse transport T(u) = quantile(W_theta(u)), u strictly in (0, 1).
 *
 *  Satisfies cdf(T(u)) = W_theta(u) and the pushforward identity
 *  T'(u) pdf(T(u)) = w_theta(u). Evaluated on the half-line and reflected
 *  (T(1-u) = -T(u) exactly) so both tails keep relative accuracy; the
 *  quantile argument is clamped below at 2^-53 where W underflows. */
double transport(double u, double theta, double p, const BetaGaussian& dist);

/** Per-dimension damped transport u in (0,1)^s -> (x, log weight). */
struct BdisTransform {
    BetaGaussian dist;
    Eigen::VectorXd thetas; // damping width per dimension, each in [0, 1/2]
    double p = 1.0;         // ramp smoothness parameter

    BdisTransform(const BetaGaussian& dist_, Eigen::VectorXd thetas_, double p_ = 1.0);
    int dims() const { return static_cast<int>(thetas.size()); }
};

/** Transform one point. Writes x into `x_out` (same length as u) and returns
 *  the log weight, -inf when any coordinate's weight vanishes (in that case
 *  x_out is not written and the sample contributes zero). */
double apply(const BdisTransform& t, const Eigen::RowVectorXd& u,
             Eigen::Ref<Eigen::RowVectorXd> x_out);

/** Regime selected for the damping-width schedule theta_j = theta0 j^{-exponent}. */
enum class ScheduleRegime {
    MatchedGrowthSmallQ, // tau == beta, growth index q* in (1, 2]
    MatchedGrowthLargeQ, // tau == beta, q* > 2
    SubcriticalGrowth,   // tau < beta, rho in (1, 3/2): slow polynomial decay
    Inversion,           // tau < beta, rho >= 3/2: no damping needed
};

struct SchedulePlan {
    ScheduleRegime regime;
    double exponent;   // decay power of theta_j (0 for Inversion)
    double alpha_star; // tail exponent in (0, 1]; RMSE reference rate n^{-(1+alpha*)/2}
    double q_star;     // growth index 1/(beta alpha_inf); +inf when tau < beta
    double rho;        // effective coefficient-decay exponent after factorial handling
    double theta0;
};

/** Choose the damping schedule from the problem parameters.
 *
 *  alpha_inf is the largest growth coefficient, rho_star the coefficient decay
 *  power, sigma the factorial-envelope offset (effective rho = rho_star -
 *  sigma, or rho_star when omit_factorial). Throws config_error naming the
 *  violated inequality when the parameters fall outside the supported region.
 */
SchedulePlan plan_schedule(double beta, double tau, double alpha_inf, double rho_star,
                           double sigma, double theta0, bool omit_factorial);

/** Materialize theta_1..theta_s for a plan. Values at or above 1/2 (not
 *  reachable from a valid theta0, kept as a guard) are clipped to 0.499999;
 *  `clipped` reports whether that happened. */
Eigen::VectorXd schedule_thetas(const SchedulePlan& plan, int s, bool* clipped = nullptr);

} // namespace bdis
