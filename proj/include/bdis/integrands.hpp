#pragma once

#include <Eigen/Core>

#include "bdis/distribution.hpp"

namespace bdis {

/** Closed-form test integrand families on R^s.
 *
 *  Exact means are with respect to the product BetaGaussian law, so every
 *  family doubles as an estimator oracle:
 *    Constant       f = 1                      mean 1
 *    Linear         f = 1 + sum_j c_j x_j      mean 1 (odd moments vanish)
 *    ProductLinear  f = prod_j (1 + c_j x_j)   mean 1
 *    ExpAbs         f = exp(sum_j a_j |x_j|^tau)  mean prod_j E exp(a_j |X|^tau)
 *    SumSquare      f = sum_j x_j^2            mean s E X^2
 */
enum class IntegrandFamily { Constant, Linear, ProductLinear, ExpAbs, SumSquare };

struct IntegrandSpec {
    IntegrandFamily family = IntegrandFamily::Constant;
    int s = 1;
    Eigen::VectorXd coeffs; // c_j for the linear families, a_j for ExpAbs
    double tau = 1.0;       // ExpAbs growth exponent
};

/** ExpAbs spec with the power-law coefficient envelope a_j = zeta j^{-rho_star}. */
IntegrandSpec power_law_exp_abs(int s, double zeta, double rho_star, double tau);

/** Uniform-coefficient spec for the linear families. */
IntegrandSpec uniform_coeff(IntegrandFamily family, int s, double c);

/** Check the spec is well formed and, for ExpAbs, that the mean is finite
 *  under `dist` (tau <= beta; max a_j * beta < 1 when tau == beta).
 *  Throws config_error otherwise. */
void validate_integrand(const IntegrandSpec& spec, const BetaGaussian& dist);

/** Evaluate at one point. ExpAbs works in the log domain and saturates at the
 *  largest finite double instead of overflowing; `saturated` (optional)
 *  reports whether the cap was hit. */
double evaluate(const IntegrandSpec& spec, const Eigen::RowVectorXd& x,
                bool* saturated = nullptr);

/** Exact mean under the product law of `dist`. */
double exact_mean(const IntegrandSpec& spec, const BetaGaussian& dist);

} // namespace bdis
