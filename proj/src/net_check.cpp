#include "bdis/net_check.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bdis {

namespace {

// advance composition (k_1..k_s) of `total` in colex order; false when done
bool next_composition(std::vector<int>& k, int total) {
    const int s = static_cast<int>(k.size());
    if (s == 1) return false;
    // move one unit from the first nonzero entry to its right neighbour,
    // dumping everything before it back into k[0]
    int i = 0;
    while (i < s - 1 && k[i] == 0) ++i;
    if (i == s - 1) return false;
    int head = k[i];
    k[i] = 0;
    k[0] = head - 1;
    k[i + 1] += 1;
    (void)total;
    return true;
}

double work_estimate(int s, int q) {
    // compositions of q into s parts = C(q+s-1, s-1)
    double c = 1.0;
    for (int i = 1; i < s; ++i) c *= static_cast<double>(q + i) / i;
    return c;
}

} // namespace

bool is_net(const Eigen::MatrixXd& points, int m, int t) {
    const std::int64_t n = points.rows();
    const int s = static_cast<int>(points.cols());
    if (m < 0 || n != (std::int64_t{1} << m))
        throw std::domain_error("is_net: point count must equal 2^m");
    if (t < 0 || t > m) throw std::domain_error("is_net: t must lie in [0, m]");
    if (s < 1) throw std::domain_error("is_net: empty point set");
    const int q = m - t; // digits of stratification to check
    if (q == 0) return true;
    if (work_estimate(s, q) * static_cast<double>(n) > 5e9)
        throw std::invalid_argument("is_net: box enumeration too large for this checker");

    const std::int64_t expected = std::int64_t{1} << t;
    std::vector<int> shape(s, 0);
    shape[0] = q;
    std::vector<std::int64_t> count(std::size_t{1} << q);
    do {
        std::fill(count.begin(), count.end(), 0);
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t box = 0;
            for (int j = 0; j < s; ++j) {
                if (shape[j] == 0) continue;
                double u = points(i, j);
                if (!(u >= 0.0 && u < 1.0))
                    throw std::domain_error("is_net: coordinates must lie in [0, 1)");
                auto cell = static_cast<std::int64_t>(std::ldexp(u, shape[j]));
                box = (box << shape[j]) | cell;
            }
            ++count[static_cast<std::size_t>(box)];
        }
        for (std::int64_t c : count)
            if (c != expected) return false;
    } while (next_composition(shape, q));
    return true;
}

int minimal_t(const Eigen::MatrixXd& points, int m) {
    for (int t = 0; t < m; ++t)
        if (is_net(points, m, t)) return t;
    return m;
}

} // namespace bdis
