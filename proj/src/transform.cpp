#include "bdis/transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bdis/errors.hpp"

namespace bdis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailClamp = 1.1102230246251565e-16; // 2^-53

void check_ramp_args(double theta, double p) {
    if (!(theta >= 0.0 && theta <= 0.5))
        throw std::domain_error("weight: theta must lie in [0, 1/2]");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("weight: p must satisfy p >= 1");
}

} // namespace

double bump(double u, double p) {
    if (!(p >= 1.0)) throw std::domain_error("bump: p must satisfy p >= 1");
    if (!(u >= 0.0 && u <= 0.5)) throw std::domain_error("bump: u must lie in [0, 1/2]");
    if (u == 0.0) return 0.0;
    double e = std::exp2(p) - std::pow(u, -p);
    if (e < -745.0) return 0.0; // underflow before u^{-p-1} can overflow
    return std::exp2(-p - 2.0) * std::pow(u, -p - 1.0) * std::exp(e);
}

double bump_integral(double x, double p) {
    if (!(p >= 1.0)) throw std::domain_error("bump_integral: p must satisfy p >= 1");
    if (!(x >= 0.0 && x <= 0.5)) throw std::domain_error("bump_integral: x must lie in [0, 1/2]");
    if (x == 0.0) return 0.0;
    double e = std::exp2(p) - std::pow(x, -p);
    return std::exp(e) / (p * std::exp2(p + 2.0));
}

double weight(double u, double theta, double p) {
    check_ramp_args(theta, p);
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("weight: u must lie in [0, 1]");
    if (theta == 0.0) return 1.0;
    double uu = u > 0.5 ? 1.0 - u : u; // exact reflection
    double s = 1.0 / (1.0 - theta);
    if (uu >= theta) return s;
    if (uu <= 0.5 * theta) return s * bump(uu / theta, p);
    return s * (1.0 - bump(1.0 - uu / theta, p));
}

double weight_cdf(double u, double theta, double p) {
    check_ramp_args(theta, p);
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("weight_cdf: u must lie in [0, 1]");
    if (theta == 0.0) return u;
    if (u > 0.5) return 1.0 - weight_cdf(1.0 - u, theta, p);
    double s = 1.0 / (1.0 - theta);
    if (u >= theta) return s * (u - 0.5 * theta);
    if (u <= 0.5 * theta) return s * theta * bump_integral(u / theta, p);
    // ramp-down piece: s * [(u - theta/2) + theta * E(1 - u/theta)]
    return s * ((u - 0.5 * theta) + theta * bump_integral(1.0 - u / theta, p));
}

double transport(double u, double theta, double p, const BetaGaussian& dist) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("transport: u must lie strictly inside (0, 1)");
    if (u > 0.5) return -transport(1.0 - u, theta, p, dist);
    double v = weight_cdf(u, theta, p);
    if (v < kTailClamp) v = kTailClamp; // keep the transport finite at degenerate u
    return quantile(dist, v);
}

BdisTransform::BdisTransform(const BetaGaussian& dist_, Eigen::VectorXd thetas_, double p_)
    : dist(dist_), thetas(std::move(thetas_)), p(p_) {
    if (thetas.size() == 0) throw config_error("BdisTransform: empty theta vector");
    for (Eigen::Index j = 0; j < thetas.size(); ++j)
        if (!(thetas[j] >= 0.0 && thetas[j] <= 0.5))
            throw config_error("BdisTransform: every theta must lie in [0, 1/2]");
    if (!(p >= 1.0)) throw config_error("BdisTransform: p must satisfy p >= 1");
}

double apply(const BdisTransform& t, const Eigen::RowVectorXd& u,
             Eigen::Ref<Eigen::RowVectorXd> x_out) {
    const Eigen::Index s = t.thetas.size();
    if (u.size() != s || x_out.size() != s)
        throw std::invalid_argument("apply: point dimension does not match transform");
    for (Eigen::Index j = 0; j < s; ++j)
        if (!(u[j] > 0.0 && u[j] < 1.0))
            throw std::domain_error("apply: coordinates must lie strictly inside (0, 1)");
    // Weights first: they are cheap and a single vanishing factor makes the
    // whole sample contribute zero, skipping the quantile solves entirely.
    double log_w = 0.0;
    for (Eigen::Index j = 0; j < s; ++j) {
        double w = weight(u[j], t.thetas[j], t.p);
        if (w == 0.0) return -kInf;
        log_w += std::log(w);
    }
    for (Eigen::Index j = 0; j < s; ++j)
        x_out[j] = transport(u[j], t.thetas[j], t.p, t.dist);
    return log_w;
}

SchedulePlan plan_schedule(double beta, double tau, double alpha_inf, double rho_star,
                           double sigma, double theta0, bool omit_factorial) {
    if (!(beta > 0.0) || !(tau > 0.0))
        throw config_error("plan_schedule: beta > 0 and tau > 0 required");
    if (!(tau <= beta))
        throw config_error("plan_schedule: tau <= beta required");
    if (!(alpha_inf > 0.0))
        throw config_error("plan_schedule: alpha_inf > 0 required");
    if (!(theta0 > 0.0 && theta0 < 0.5))
        throw config_error("plan_schedule: theta0 in (0, 1/2) required");
    double rho = omit_factorial ? rho_star : rho_star - sigma;
    if (!(rho > 1.0))
        throw config_error("plan_schedule: rho > 1 required (rho = rho_star - sigma)");

    SchedulePlan plan{};
    plan.rho = rho;
    plan.theta0 = theta0;

    if (tau == beta) {
        double ba = beta * alpha_inf;
        if (!(ba < 1.0))
            throw config_error("plan_schedule: beta*alpha_inf < 1 required");
        if (!(rho > 2.0 * ba))
            throw config_error("plan_schedule: rho > 2*beta*alpha_inf required");
        double q = 1.0 / ba;
        plan.q_star = q;
        if (q <= 2.0) {
            plan.regime = ScheduleRegime::MatchedGrowthSmallQ;
            double rq = rho * q;
            plan.exponent = rq;
            plan.alpha_star = (rq - 2.0) / (rq + 1.0);
        } else {
            plan.regime = ScheduleRegime::MatchedGrowthLargeQ;
            // smaller root of (q-2) a^2 - (2 q rho - q + 4) a + 2 q (rho - 1) = 0
            double b = (2.0 * rho - 3.0) * q + 8.0;
            double alpha = 1.0 - (std::sqrt(b * b + 24.0 * (q - 2.0)) - b) / (2.0 * (q - 2.0));
            plan.alpha_star = alpha;
            plan.exponent = 2.0 * rho / (2.0 * alpha / q + 1.0 - alpha);
        }
    } else {
        plan.q_star = kInf;
        if (rho < 1.5) {
            plan.regime = ScheduleRegime::SubcriticalGrowth;
            plan.alpha_star = 2.0 * rho - 2.0;
            plan.exponent = 2.0 * rho / (3.0 - 2.0 * rho);
        } else {
            plan.regime = ScheduleRegime::Inversion;
            plan.alpha_star = 1.0;
            plan.exponent = 0.0;
        }
    }
    return plan;
}

Eigen::VectorXd schedule_thetas(const SchedulePlan& plan, int s, bool* clipped) {
    if (s < 1) throw std::invalid_argument("schedule_thetas: s must be >= 1");
    if (clipped) *clipped = false;
    Eigen::VectorXd th = Eigen::VectorXd::Zero(s);
    if (plan.regime == ScheduleRegime::Inversion) return th;
    for (int j = 1; j <= s; ++j) {
        double v = plan.theta0 * std::pow(static_cast<double>(j), -plan.exponent);
        if (v >= 0.5) {
            v = 0.499999;
            if (clipped) *clipped = true;
        }
        th[j - 1] = v;
    }
    return th;
}

} // namespace bdis
