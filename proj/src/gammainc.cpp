#include "bdis/gammainc.hpp"

#include <cmath>
#include <stdexcept>

namespace bdis {

namespace {

constexpr double kEps = 1.11022302462516e-16; // 2^-53
constexpr double kBig = 4.503599627370496e15;
constexpr double kBigInv = 2.22044604925031e-16;

void check_domain(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("gamma_p/gamma_q: shape a must be positive and finite");
    if (!(x >= 0.0))
        throw std::domain_error("gamma_p/gamma_q: argument x must be nonnegative");
}

// log of the prefactor x^a e^-x / Gamma(a)
double log_prefactor(double a, double x) {
    return a * std::log(x) - x - std::lgamma(a);
}

// P(a,x) = prefactor/a * sum_{k>=0} x^k / ((a+1)...(a+k)), for x < a + 1
double lower_series(double a, double x) {
    double r = a;
    double c = 1.0;
    double sum = 1.0;
    do {
        r += 1.0;
        c *= x / r;
        sum += c;
    } while (c / sum > kEps);
    double lp = log_prefactor(a, x) - std::log(a);
    return sum * std::exp(lp);
}

// Lentz-style continued fraction for Q(a,x)/prefactor, x >= a + 1
double upper_cf(double a, double x) {
    double y = 1.0 - a;
    double z = x + y + 1.0;
    double c = 0.0;
    double pkm2 = 1.0, qkm2 = x;
    double pkm1 = x + 1.0, qkm1 = z * x;
    double ans = pkm1 / qkm1;
    double t;
    do {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        double yc = y * c;
        double pk = pkm1 * z - pkm2 * yc;
        double qk = qkm1 * z - qkm2 * yc;
        if (qk != 0.0) {
            double r = pk / qk;
            t = std::fabs((ans - r) / r);
            ans = r;
        } else {
            t = 1.0;
        }
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if (std::fabs(pk) > kBig) {
            pkm2 *= kBigInv;
            pkm1 *= kBigInv;
            qkm2 *= kBigInv;
            qkm1 *= kBigInv;
        }
    } while (t > kEps);
    return ans;
}

} // namespace

double gamma_p(double a, double x) {
    check_domain(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x >= a + 1.0) return 1.0 - gamma_q(a, x);
    return lower_series(a, x);
}

double gamma_q(double a, double x) {
    check_domain(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    double lp = log_prefactor(a, x);
    if (lp < -745.0) return 0.0;
    return upper_cf(a, x) * std::exp(lp);
}

double gamma_q_scaled(double a, double x) {
    check_domain(a, x);
    if (!(x >= a + 1.0))
        throw std::domain_error("gamma_q_scaled: requires x >= a + 1");
    return upper_cf(a, x);
}

} // namespace bdis
