#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "bdis/config.hpp"
#include "bdis/estimator.hpp"

namespace bdis {

/** One executable method: CSV label, point-set kind, damping widths. */
struct MethodInstance {
    std::string name;       // "MC", "RQMC-inversion", "BDIS(...)"
    bool use_net;           // scrambled net when true, iid stream when false
    Eigen::VectorXd thetas; // zero for undamped methods
    bool clipped = false;   // any theta_j clipped below 1/2
};

/** Expand config methods into concrete instances. "RQMC" becomes the
 *  undamped-net method "RQMC-inversion"; "BDIS" becomes one instance per
 *  scheduled damping sequence (an explicit exponent list yields one instance
 *  per exponent, an auto schedule resolves through the planner and may land on
 *  plain inversion). */
std::vector<MethodInstance> expand_methods(const ExperimentConfig& cfg);

/** Run the full study: every method at every sample size 2^m with R
 *  replicates, RMSE over replicates per qoi, fitted log2-log2 rates, and
 *  power-law guide lines (n^-1/2 anchored at MC, n^-1 at RQMC-inversion, and
 *  the planned BDIS rate when the planner accepts the parameters). Data rows
 *  are sorted by (method, n, qoi). drop_transient removes that many
 *  smallest-m levels from the slope fits only; all rows stay in the report. */
ConvergenceReport run_experiment(const ExperimentConfig& cfg, int threads = 1,
                                 int drop_transient = 0);

/** Human-readable schedule summary (regime, rate exponents, theta values)
 *  without running any estimates. */
std::string describe_schedule(const ExperimentConfig& cfg);

} // namespace bdis
