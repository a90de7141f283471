#include "bdis/quadrature.hpp"

#include <stdexcept>

namespace bdis {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = (left + right - whole) / 15.0;
    if (depth <= 0 || std::fabs(err) <= tol)
        return left + right + err;
    return recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, double scale, int max_depth) {
    if (!(b >= a)) throw std::domain_error("adaptive_simpson: requires b >= a");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(fa, fm, fb, b - a);
    if (scale == 0.0) scale = std::fabs(whole) + 1e-300;
    return recurse(f, a, m, b, fa, fm, fb, whole, tol * scale, max_depth);
}

} // namespace bdis
