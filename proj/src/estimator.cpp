#include "bdis/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bdis/errors.hpp"
#include "bdis/thread_pool.hpp"

namespace bdis {

double estimate(const Eigen::MatrixXd& points, const BdisTransform& transform,
                const Integrand& f) {
    const Eigen::Index n = points.rows();
    if (n < 1) throw std::invalid_argument("estimate: empty point set");
    if (points.cols() != transform.dims())
        throw std::invalid_argument("estimate: point dimension does not match transform");
    Eigen::RowVectorXd x(points.cols());
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double log_w = apply(transform, points.row(i), x);
        if (log_w == -std::numeric_limits<double>::infinity()) continue;
        double fx = f(x);
        if (!std::isfinite(fx))
            throw numerical_error("estimate: non-finite integrand value at point index " +
                                  std::to_string(i));
        double y = std::exp(log_w) * fx - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(n);
}

double replicate_rmse(const Eigen::VectorXd& values) {
    const Eigen::Index r = values.size();
    if (r < 2) throw std::invalid_argument("replicate_rmse: needs at least two replicates");
    double mean = values.mean();
    double ss = (values.array() - mean).square().sum();
    return std::sqrt(ss / static_cast<double>(r - 1));
}

RateFit fit_rate(const std::vector<std::int64_t>& ns, const std::vector<double>& rmses) {
    const std::size_t k = ns.size();
    if (k != rmses.size() || k < 2)
        throw std::invalid_argument("fit_rate: needs >= 2 matching (n, rmse) pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (ns[i] < 1 || !(rmses[i] > 0.0))
            throw std::invalid_argument("fit_rate: n must be >= 1 and rmse > 0");
        double x = std::log2(static_cast<double>(ns[i]));
        double y = std::log2(rmses[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = k * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: sample sizes are all equal");
    RateFit fit;
    fit.slope = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / k;
    return fit;
}

std::vector<Eigen::VectorXd> run_scalar_study(const PointSource& source,
                                              const BdisTransform& transform,
                                              const Integrand& f, int m_min, int m_max,
                                              int R, int threads) {
    if (m_min < 0 || m_max < m_min)
        throw std::invalid_argument("run_scalar_study: bad m range");
    if (R < 2) throw std::invalid_argument("run_scalar_study: R must be >= 2");
    const int levels = m_max - m_min + 1;
    std::vector<Eigen::VectorXd> values(levels, Eigen::VectorXd::Zero(R));
    parallel_for(static_cast<std::int64_t>(levels) * R, threads, [&](std::int64_t task) {
        const int level = static_cast<int>(task / R);
        const auto rep = static_cast<std::uint32_t>(task % R);
        const int m = m_min + level;
        Eigen::MatrixXd pts = source(m, rep);
        double v = estimate(pts, transform, f);
        if (std::isnan(v))
            throw numerical_error("run_scalar_study: NaN estimate at m=" + std::to_string(m) +
                                  " replicate=" + std::to_string(rep));
        values[level][rep] = v;
    });
    return values;
}

namespace {

void put(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void write_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "method,n,R,qoi,rmse,mean_estimate\n";
    for (const StudyRow& r : report.rows) {
        out << r.method << ',' << r.n << ',' << r.R << ',' << r.qoi << ',';
        put(out, r.rmse);
        out << ',';
        put(out, r.mean_estimate);
        out << '\n';
    }
    out << "# slope\n";
    out << "method,qoi,slope,intercept\n";
    for (const SlopeRow& r : report.slopes) {
        out << r.method << ',' << r.qoi << ',';
        put(out, r.slope);
        out << ',';
        put(out, r.intercept);
        out << '\n';
    }
    if (!report.references.empty()) {
        out << "# reference\n";
        out << "method,n,R,qoi,rmse,mean_estimate\n";
        for (const ReferenceRow& r : report.references) {
            out << r.method << ',' << r.n << ",0," << r.qoi << ',';
            put(out, r.value);
            out << ",0\n";
        }
    }
}

} // namespace bdis
