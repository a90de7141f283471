#pragma once

#include <cmath>
#include <functional>

namespace bdis {

/** Adaptive Simpson quadrature of f on [a, b].
 *
 *  Recursion splits an interval until the Richardson estimate of the local
 *  error is below the interval's share of the tolerance. `tol` is applied
 *  relative to `scale` (pass the expected magnitude of the integral, or 0 to
 *  use the running estimate).
 */
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, double scale = 0.0, int max_depth = 48);

} // namespace bdis
