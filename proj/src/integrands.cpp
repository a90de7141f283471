#include "bdis/integrands.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bdis/errors.hpp"

namespace bdis {

namespace {

constexpr double kLogMax = 709.0; // just under log(DBL_MAX)

void check_dims(const IntegrandSpec& spec, const Eigen::RowVectorXd& x) {
    if (x.size() != spec.s)
        throw std::invalid_argument("evaluate: point dimension does not match spec");
}

bool needs_coeffs(IntegrandFamily f) {
    return f == IntegrandFamily::Linear || f == IntegrandFamily::ProductLinear ||
           f == IntegrandFamily::ExpAbs;
}

} // namespace

IntegrandSpec power_law_exp_abs(int s, double zeta, double rho_star, double tau) {
    if (s < 1) throw std::invalid_argument("power_law_exp_abs: s must be >= 1");
    IntegrandSpec spec;
    spec.family = IntegrandFamily::ExpAbs;
    spec.s = s;
    spec.tau = tau;
    spec.coeffs.resize(s);
    for (int j = 1; j <= s; ++j)
        spec.coeffs[j - 1] = zeta * std::pow(static_cast<double>(j), -rho_star);
    return spec;
}

IntegrandSpec uniform_coeff(IntegrandFamily family, int s, double c) {
    if (s < 1) throw std::invalid_argument("uniform_coeff: s must be >= 1");
    IntegrandSpec spec;
    spec.family = family;
    spec.s = s;
    if (needs_coeffs(family)) spec.coeffs = Eigen::VectorXd::Constant(s, c);
    return spec;
}

void validate_integrand(const IntegrandSpec& spec, const BetaGaussian& dist) {
    if (spec.s < 1) throw config_error("integrand: s must be >= 1");
    if (needs_coeffs(spec.family) && spec.coeffs.size() != spec.s)
        throw config_error("integrand: coefficient vector must have length s");
    if (spec.family == IntegrandFamily::ExpAbs) {
        if (!(spec.tau > 0.0) || !(spec.tau <= dist.beta))
            throw config_error("integrand: exp_abs requires 0 < tau <= beta");
        if (spec.tau == dist.beta && !(spec.coeffs.maxCoeff() * dist.beta < 1.0))
            throw config_error("integrand: exp_abs requires max a_j * beta < 1 when tau == beta");
    }
}

double evaluate(const IntegrandSpec& spec, const Eigen::RowVectorXd& x, bool* saturated) {
    check_dims(spec, x);
    if (saturated) *saturated = false;
    switch (spec.family) {
        case IntegrandFamily::Constant:
            return 1.0;
        case IntegrandFamily::Linear:
            return 1.0 + spec.coeffs.dot(x.transpose());
        case IntegrandFamily::ProductLinear: {
            double prod = 1.0;
            for (int j = 0; j < spec.s; ++j) prod *= 1.0 + spec.coeffs[j] * x[j];
            return prod;
        }
        case IntegrandFamily::ExpAbs: {
            double lse = 0.0;
            for (int j = 0; j < spec.s; ++j)
                lse += spec.coeffs[j] * std::pow(std::fabs(x[j]), spec.tau);
            if (lse > kLogMax) {
                if (saturated) *saturated = true;
                return std::numeric_limits<double>::max();
            }
            return std::exp(lse);
        }
        case IntegrandFamily::SumSquare:
            return x.squaredNorm();
    }
    throw std::logic_error("evaluate: unknown family");
}

double exact_mean(const IntegrandSpec& spec, const BetaGaussian& dist) {
    validate_integrand(spec, dist);
    switch (spec.family) {
        case IntegrandFamily::Constant:
        case IntegrandFamily::Linear:
        case IntegrandFamily::ProductLinear:
            return 1.0; // symmetric law: all odd moments vanish
        case IntegrandFamily::ExpAbs: {
            double mean = 1.0;
            for (int j = 0; j < spec.s; ++j)
                mean *= exp_moment(dist, spec.coeffs[j], spec.tau);
            return mean;
        }
        case IntegrandFamily::SumSquare:
            return spec.s * second_moment(dist);
    }
    throw std::logic_error("exact_mean: unknown family");
}

} // namespace bdis
