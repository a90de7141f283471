#include "bdis/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bdis/errors.hpp"
#include "bdis/gammainc.hpp"
#include "bdis/quadrature.hpp"

namespace bdis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper tail of |X|: P(|X| > y)/... = (1 - cdf(y)) for y >= 0, i.e. Q(a, z)/2.
double upper_tail(const BetaGaussian& d, double y) {
    double z = std::pow(y, d.beta) / d.beta;
    return 0.5 * gamma_q(d.a, z);
}

// Solve upper_tail(y) = t for y >= 0, t in (0, 1/2).
double tail_inverse(const BetaGaussian& d, double t) {
    // Initial guess: tangent at the origin for central t, otherwise invert the
    // Mills-ratio asymptotic t ~ c exp(-z) (beta z)^{(1-beta)/beta}.
    double y;
    if (t > 0.25) {
        y = (0.5 - t) / d.norm;
    } else {
        double L = d.log_norm - std::log(t);
        double z = L;
        for (int i = 0; i < 2; ++i) {
            double corr = (1.0 - d.beta) * d.a * std::log(d.beta * z);
            z = L + corr;
            if (!(z > 0.1)) {
                z = std::max(L, 0.1);
                break;
            }
        }
        y = std::pow(d.beta * z, d.a);
    }
    if (!(y > 0.0) || !std::isfinite(y)) y = 1.0;

    // Establish a bracket [lo, hi] with tail(lo) >= t > tail(hi).
    double lo = 0.0, hi;
    double ty = upper_tail(d, y);
    if (ty >= t) {
        lo = y;
        hi = std::max(2.0 * y, 1.0);
        while (upper_tail(d, hi) >= t) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi))
                throw numerical_error("quantile: tail bracket expansion overflowed");
        }
    } else {
        hi = y;
        double probe = 0.5 * y;
        while (probe > 1e-300 && upper_tail(d, probe) < t) {
            hi = probe;
            probe *= 0.5;
        }
        lo = probe > 1e-300 ? probe : 0.0;
        y = 0.5 * (lo + hi);
    }

    // Safeguarded Newton on g(y) = tail(y) - t, g'(y) = -pdf(y).
    for (int iter = 0; iter < 200; ++iter) {
        double g = upper_tail(d, y) - t;
        if (g >= 0.0)
            lo = y;
        else
            hi = y;
        if (std::fabs(g) <= 4e-15 * t) break;
        double dens = pdf(d, y);
        double ynext = dens > 0.0 ? y + g / dens : 0.5 * (lo + hi);
        if (!(ynext > lo) || !(ynext < hi)) ynext = 0.5 * (lo + hi);
        if (ynext == y || hi - lo <= 4e-16 * hi) break;
        y = ynext;
    }
    return y;
}

} // namespace

BetaGaussian::BetaGaussian(double beta_) : beta(beta_) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::domain_error("BetaGaussian: beta must be positive and finite");
    a = 1.0 / beta;
    log_norm = -(std::log(2.0) + a * std::log(beta) + std::lgamma(1.0 + a));
    norm = std::exp(log_norm);
    lgamma_a = std::lgamma(a);
}

double pdf(const BetaGaussian& d, double x) {
    double z = std::pow(std::fabs(x), d.beta) / d.beta;
    return d.norm * std::exp(-z);
}

double cdf(const BetaGaussian& d, double x) {
    if (x == 0.0) return 0.5;
    if (std::isnan(x)) throw std::domain_error("cdf: x must not be NaN");
    double y = std::fabs(x);
    double z = std::pow(y, d.beta) / d.beta;
    if (z >= d.a + 1.0) {
        double t = 0.5 * gamma_q(d.a, z);
        return x < 0.0 ? t : 1.0 - t;
    }
    double h = 0.5 * gamma_p(d.a, z);
    return x < 0.0 ? 0.5 - h : 0.5 + h;
}

double quantile(const BetaGaussian& d, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile: u must lie strictly inside (0, 1)");
    if (u == 0.5) return 0.0;
    double t = u < 0.5 ? u : 1.0 - u; // exact for u in [1/2, 1)
    double y = tail_inverse(d, t);
    return u < 0.5 ? -y : y;
}

double mills_ratio(const BetaGaussian& d, double x) {
    if (std::isnan(x)) throw std::domain_error("mills_ratio: x must not be NaN");
    if (x <= 0.0) return (1.0 - cdf(d, x)) / pdf(d, x);
    double z = std::pow(x, d.beta) / d.beta;
    if (z < d.a + 1.0) return 0.5 * gamma_q(d.a, z) / pdf(d, x);
    if (z > 1e300) return std::pow(x, 1.0 - d.beta); // leading asymptotic term
    // Q(a,z) = exp(a log z - z - lgamma(a)) R and pdf = c exp(-z): the
    // exponentials cancel, leaving a well-scaled product.
    double R = gamma_q_scaled(d.a, z);
    return 0.5 * R * std::exp(d.a * std::log(z) - d.lgamma_a - d.log_norm);
}

double exp_moment(const BetaGaussian& d, double alpha, double tau) {
    if (!(tau > 0.0) || !(tau <= d.beta))
        throw std::domain_error("exp_moment: requires 0 < tau <= beta");
    if (!std::isfinite(alpha))
        throw std::domain_error("exp_moment: alpha must be finite");
    if (tau == d.beta) {
        double ab = alpha * d.beta;
        if (ab >= 1.0) return kInf;
        return std::pow(1.0 - ab, -d.a);
    }
    // 2 c \int_0^inf exp(alpha x^tau - x^beta/beta) dx, peak-scaled for safety
    auto expo = [&](double x) {
        return alpha * std::pow(x, tau) - std::pow(x, d.beta) / d.beta;
    };
    double xpeak = alpha > 0.0 ? std::pow(alpha * tau, 1.0 / (d.beta - tau)) : 0.0;
    double emax = xpeak > 0.0 ? std::max(0.0, expo(xpeak)) : 0.0;
    double cut = std::max(1.0, 2.0 * xpeak);
    while (expo(cut) - emax > -60.0) cut *= 2.0;
    auto f = [&](double x) { return std::exp(expo(x) - emax); };
    double integral = adaptive_simpson(f, 0.0, cut, 1e-11);
    return 2.0 * d.norm * std::exp(emax) * integral;
}

double second_moment(const BetaGaussian& d) {
    return std::pow(d.beta, 2.0 * d.a) *
           std::exp(std::lgamma(3.0 * d.a) - std::lgamma(d.a));
}

} // namespace bdis
