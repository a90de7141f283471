#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bdis/transform.hpp"

namespace bdis {

using Integrand = std::function<double(const Eigen::RowVectorXd&)>;

/** Importance-sampled mean (1/n) sum_i w(u_i) f(T(u_i)) over one point set.
 *
 *  Weights are accumulated in the log domain inside the transform;
 *  zero-weight points are skipped before f is evaluated. Summation is
 *  compensated (Kahan), so the result does not depend on accumulation order
 *  beyond the fixed row order of `points`. Throws numerical_error when f
 *  returns a non-finite value at a point with positive weight.
 */
double estimate(const Eigen::MatrixXd& points, const BdisTransform& transform,
                const Integrand& f);

/** Replicate spread sqrt( (1/(R-1)) sum_r (mean - value_r)^2 ). Requires R >= 2. */
double replicate_rmse(const Eigen::VectorXd& values);

struct RateFit {
    double slope;     // d log2(rmse) / d log2(n)
    double intercept; // log2(rmse) at log2(n) = 0
};

/** Least-squares line through (log2 n_i, log2 rmse_i). Requires >= 2 points
 *  and strictly positive inputs. */
RateFit fit_rate(const std::vector<std::int64_t>& ns, const std::vector<double>& rmses);

/** Point sets per (m, replicate): either scrambled nets or iid uniforms. */
using PointSource = std::function<Eigen::MatrixXd(int m, std::uint32_t replicate)>;

/** R replicate estimates for each m in [m_min, m_max]; result[k] holds the
 *  replicate values for m = m_min + k, in replicate order. Tasks are
 *  distributed over `threads` workers with results keyed by index, so the
 *  output is identical for every thread count. Any NaN replicate aborts with
 *  a numerical_error naming (m, replicate). */
std::vector<Eigen::VectorXd> run_scalar_study(const PointSource& source,
                                              const BdisTransform& transform,
                                              const Integrand& f, int m_min, int m_max,
                                              int R, int threads);

/** One CSV data row: rmse and mean estimate of one method at one sample size. */
struct StudyRow {
    std::string method;
    std::int64_t n;
    int R;
    std::string qoi;
    double rmse;
    double mean_estimate;
};

struct SlopeRow {
    std::string method;
    std::string qoi;
    double slope;
    double intercept;
};

/** Power-law guide line, anchored at a method's first data point. */
struct ReferenceRow {
    std::string method; // label of the guide, e.g. ref(n^-0.5)
    std::int64_t n;
    std::string qoi;
    double value;
};

struct ConvergenceReport {
    std::vector<StudyRow> rows;
    std::vector<SlopeRow> slopes;
    std::vector<ReferenceRow> references;
};

/** Write the report:
 *    method,n,R,qoi,rmse,mean_estimate   data rows
 *    # slope                              trailer
 *    method,qoi,slope,intercept           fitted rates
 *    # reference                          appended guide lines (same 6 columns,
 *    method,n,0,qoi,value,0               R = 0 marks synthetic rows)
 *  Floats carry 17 significant digits, so parsing the file back reproduces
 *  every double bit for bit. */
void write_csv(std::ostream& out, const ConvergenceReport& report);

} // namespace bdis
