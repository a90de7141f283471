#pragma once

namespace bdis {

/** Regularized lower incomplete gamma function P(a, x) = gamma(a, x) / Gamma(a).
 *
 *  Power series for x < a + 1, complement of the continued fraction otherwise.
 *  Requires a > 0 and x >= 0.
 */
double gamma_p(double a, double x);

/** Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x). */
double gamma_q(double a, double x);

/** Continued-fraction factor R(a, x) with Q(a, x) = exp(a*log(x) - x - lgamma(a)) * R.
 *
 *  Only valid on the continued-fraction branch x >= a + 1. Exposed so tail
 *  ratios can cancel the exponential factor analytically instead of
 *  underflowing.
 */
double gamma_q_scaled(double a, double x);

} // namespace bdis
