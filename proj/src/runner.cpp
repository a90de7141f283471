#include "bdis/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "bdis/errors.hpp"
#include "bdis/fem.hpp"
#include "bdis/integrands.hpp"
#include "bdis/scramble.hpp"
#include "bdis/sobol.hpp"
#include "bdis/thread_pool.hpp"

namespace bdis {

namespace {

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string bdis_name(double theta0, double exponent) {
    if (exponent == 0.0) return "BDIS(" + fmt_g(theta0) + ")";
    return "BDIS(" + fmt_g(theta0) + "j^-" + fmt_g(exponent) + ")";
}

Eigen::VectorXd power_thetas(double theta0, double exponent, int s, bool* clipped) {
    SchedulePlan plan;
    plan.regime = ScheduleRegime::SubcriticalGrowth; // any non-inversion tag
    plan.exponent = exponent;
    plan.theta0 = theta0;
    return schedule_thetas(plan, s, clipped);
}

/** BDIS instances the schedule setting expands to: the planner's choice,
 *  one instance per explicit exponent, or plain inversion. */
std::vector<MethodInstance> schedule_instances(const ExperimentConfig& cfg) {
    std::vector<MethodInstance> out;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.s);
    if (cfg.schedule == "inversion") {
        out.push_back({"BDIS(inversion)", true, zero, false});
    } else if (cfg.schedule == "auto" || cfg.schedule == "auto_omit_factorial") {
        SchedulePlan plan =
            plan_schedule(cfg.beta, cfg.tau, cfg.zeta, cfg.rho_star, cfg.sigma,
                          cfg.theta0, cfg.schedule == "auto_omit_factorial");
        if (plan.regime == ScheduleRegime::Inversion) {
            out.push_back({"BDIS(inversion)", true, zero, false});
        } else {
            MethodInstance inst;
            inst.name = bdis_name(cfg.theta0, plan.exponent);
            inst.use_net = true;
            inst.thetas = schedule_thetas(plan, cfg.s, &inst.clipped);
            out.push_back(std::move(inst));
        }
    } else { // explicit exponent list
        for (double e : cfg.explicit_exponents) {
            MethodInstance inst;
            inst.name = bdis_name(cfg.theta0, e);
            inst.use_net = true;
            inst.thetas = power_thetas(cfg.theta0, e, cfg.s, &inst.clipped);
            out.push_back(std::move(inst));
        }
    }
    return out;
}

IntegrandSpec make_spec(const ExperimentConfig& cfg, const BetaGaussian& dist) {
    IntegrandSpec spec;
    if (cfg.family == "exp_abs") {
        spec = power_law_exp_abs(cfg.s, cfg.zeta, cfg.rho_star, cfg.tau);
    } else if (cfg.family == "constant") {
        spec = uniform_coeff(IntegrandFamily::Constant, cfg.s, 0.0);
    } else if (cfg.family == "linear") {
        spec = uniform_coeff(IntegrandFamily::Linear, cfg.s, cfg.family_c);
    } else if (cfg.family == "product_linear") {
        spec = uniform_coeff(IntegrandFamily::ProductLinear, cfg.s, cfg.family_c);
    } else if (cfg.family == "sum_square") {
        spec = uniform_coeff(IntegrandFamily::SumSquare, cfg.s, 0.0);
    } else {
        throw config_error("unknown integrand family '" + cfg.family + "'");
    }
    validate_integrand(spec, dist);
    return spec;
}

PointSource make_source(const MethodInstance& method, const ExperimentConfig& cfg) {
    int s = cfg.s;
    std::uint64_t seed = cfg.seed;
    if (method.use_net)
        return [s, seed](int m, std::uint32_t replicate) {
            return owen_scramble(sobol_net(m, s), seed, replicate);
        };
    return [s, seed](int m, std::uint32_t replicate) {
        return mc_points(std::int64_t{1} << m, s, seed, replicate);
    };
}

/** Per-replicate weighted mean solution fields for one method at one level. */
Eigen::MatrixXd pde_mean_fields(const PointSource& source, const BdisTransform& transform,
                                const DiffusionProblem& problem, int m, int R,
                                int threads) {
    int nodes = problem.mesh().num_nodes();
    Eigen::MatrixXd fields(nodes, R);
    parallel_for(R, threads, [&](std::int64_t r) {
        auto rep = static_cast<std::uint32_t>(r);
        Eigen::MatrixXd u = source(m, rep);
        std::int64_t n = u.rows();
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(nodes);
        Eigen::RowVectorXd x(transform.dims());
        for (std::int64_t i = 0; i < n; ++i) {
            double log_w = apply(transform, u.row(i), x);
            if (log_w == -std::numeric_limits<double>::infinity()) continue;
            SolveResult sol = problem.solve_sample(problem.field_scale(x));
            sum += std::exp(log_w) * sol.field;
        }
        Eigen::VectorXd mean = sum / static_cast<double>(n);
        if (!mean.allFinite())
            throw numerical_error("non-finite mean field at m = " + std::to_string(m) +
                                  ", replicate " + std::to_string(rep));
        fields.col(r) = mean;
    });
    return fields;
}

void fit_slopes(ConvergenceReport& report, const ExperimentConfig& cfg,
                int drop_transient) {
    int levels = cfg.m_max - cfg.m_min + 1;
    int drop = std::min(drop_transient, levels > 3 ? levels - 3 : 0);
    std::int64_t n_cut = std::int64_t{1} << (cfg.m_min + drop);
    // Collect per (method, qoi) in first-appearance order of the sorted rows.
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& head = report.rows[i];
        bool first = true;
        for (std::size_t j = 0; j < i; ++j)
            if (report.rows[j].method == head.method && report.rows[j].qoi == head.qoi)
                first = false;
        if (!first) continue;
        std::vector<std::int64_t> ns;
        std::vector<double> rmses;
        for (const auto& row : report.rows)
            if (row.method == head.method && row.qoi == head.qoi && row.n >= n_cut &&
                row.rmse > 0.0) {
                ns.push_back(row.n);
                rmses.push_back(row.rmse);
            }
        if (ns.size() < 2) continue;
        RateFit fit = fit_rate(ns, rmses);
        report.slopes.push_back({head.method, head.qoi, fit.slope, fit.intercept});
    }
}

void add_reference(ConvergenceReport& report, const std::string& anchor_method,
                   const std::string& label, double slope, int m_min, int m_max) {
    for (const auto& qoi_row : report.rows) {
        if (qoi_row.method != anchor_method || qoi_row.n != (std::int64_t{1} << m_min))
            continue;
        double anchor = qoi_row.rmse;
        if (!(anchor > 0.0)) continue;
        for (int m = m_min; m <= m_max; ++m) {
            std::int64_t n = std::int64_t{1} << m;
            double value = anchor * std::pow(static_cast<double>(n) / (1 << m_min), slope);
            report.references.push_back({label, n, qoi_row.qoi, value});
        }
    }
}

} // namespace

std::vector<MethodInstance> expand_methods(const ExperimentConfig& cfg) {
    std::vector<MethodInstance> out;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.s);
    for (const auto& method : cfg.methods) {
        if (method == "MC") {
            // The MC baseline is the same weighted estimator on iid draws, so
            // it shares the leading BDIS damping and the MC-vs-BDIS comparison
            // isolates the point set. Undamped, the growth-function variance
            // is infinite and the baseline would fall short of its n^-1/2 rate.
            MethodInstance inst{"MC", false, zero, false};
            try {
                auto damped = schedule_instances(cfg);
                if (!damped.empty()) {
                    inst.thetas = damped.front().thetas;
                    inst.clipped = damped.front().clipped;
                }
            } catch (const config_error&) {
                // Parameters outside the planned region: plain undamped draws.
            }
            out.push_back(std::move(inst));
        } else if (method == "RQMC") {
            out.push_back({"RQMC-inversion", true, zero, false});
        } else if (method == "BDIS") {
            for (auto& inst : schedule_instances(cfg)) out.push_back(std::move(inst));
        } else {
            throw config_error("unknown method '" + method + "'");
        }
    }
    return out;
}

ConvergenceReport run_experiment(const ExperimentConfig& cfg, int threads,
                                 int drop_transient) {
    auto methods = expand_methods(cfg);
    BetaGaussian dist(cfg.beta);
    ConvergenceReport report;

    if (cfg.problem == "testfunc") {
        IntegrandSpec spec = make_spec(cfg, dist);
        Integrand f = [&spec](const Eigen::RowVectorXd& x) { return evaluate(spec, x); };
        for (const auto& method : methods) {
            BdisTransform transform(dist, method.thetas, cfg.p);
            auto values = run_scalar_study(make_source(method, cfg), transform, f,
                                           cfg.m_min, cfg.m_max, cfg.R, threads);
            for (int k = 0; k < static_cast<int>(values.size()); ++k) {
                std::int64_t n = std::int64_t{1} << (cfg.m_min + k);
                report.rows.push_back({method.name, n, cfg.R, "scalar",
                                       replicate_rmse(values[k]), values[k].mean()});
            }
        }
    } else {
        DiffusionProblem problem(cfg.mesh_N, cfg.s, cfg.zeta, cfg.rho_star);
        const auto& K1 = problem.energy_matrix();
        for (const auto& method : methods) {
            BdisTransform transform(dist, method.thetas, cfg.p);
            PointSource source = make_source(method, cfg);
            for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
                Eigen::MatrixXd fields =
                    pde_mean_fields(source, transform, problem, m, cfg.R, threads);
                std::int64_t n = std::int64_t{1} << m;
                Eigen::VectorXd mean_field = fields.rowwise().mean();
                for (const auto& qoi : cfg.qois) {
                    if (qoi == "point") {
                        Eigen::VectorXd centers(cfg.R);
                        for (int r = 0; r < cfg.R; ++r)
                            centers(r) = qoi_center(problem.mesh(), fields.col(r));
                        report.rows.push_back({method.name, n, cfg.R, "point",
                                               replicate_rmse(centers), centers.mean()});
                    } else { // h1
                        double seminorm =
                            std::sqrt(mean_field.dot(K1 * mean_field));
                        report.rows.push_back({method.name, n, cfg.R, "h1",
                                               qoi_h1_rmse(K1, fields), seminorm});
                    }
                }
            }
        }
    }

    std::sort(report.rows.begin(), report.rows.end(),
              [](const StudyRow& a, const StudyRow& b) {
                  if (a.method != b.method) return a.method < b.method;
                  if (a.n != b.n) return a.n < b.n;
                  return a.qoi < b.qoi;
              });

    fit_slopes(report, cfg, drop_transient);

    add_reference(report, "MC", "ref(n^-0.5)", -0.5, cfg.m_min, cfg.m_max);
    add_reference(report, "RQMC-inversion", "ref(n^-1)", -1.0, cfg.m_min, cfg.m_max);
    bool has_bdis = std::any_of(methods.begin(), methods.end(), [](const MethodInstance& m) {
        return m.name.rfind("BDIS", 0) == 0;
    });
    if (has_bdis) {
        try {
            SchedulePlan plan =
                plan_schedule(cfg.beta, cfg.tau, cfg.zeta, cfg.rho_star, cfg.sigma,
                              cfg.theta0, cfg.schedule == "auto_omit_factorial");
            double rate = 0.5 * (1.0 + plan.alpha_star);
            std::string label = "ref(n^-" + fmt_g(rate) + ")";
            std::string anchor;
            for (const auto& m : methods)
                if (m.name.rfind("BDIS", 0) == 0) { anchor = m.name; break; }
            add_reference(report, anchor, label, -rate, cfg.m_min, cfg.m_max);
        } catch (const config_error&) {
            // Parameters outside the planned region: no planned-rate guide.
        }
    }
    return report;
}

std::string describe_schedule(const ExperimentConfig& cfg) {
    auto regime_name = [](ScheduleRegime r) {
        switch (r) {
            case ScheduleRegime::MatchedGrowthSmallQ: return "matched-growth (q* <= 2)";
            case ScheduleRegime::MatchedGrowthLargeQ: return "matched-growth (q* > 2)";
            case ScheduleRegime::SubcriticalGrowth: return "subcritical-growth";
            case ScheduleRegime::Inversion: return "inversion";
        }
        return "unknown";
    };
    std::ostringstream out;
    out.precision(12);
    bool planned = cfg.schedule == "auto" || cfg.schedule == "auto_omit_factorial";
    if (planned) {
        SchedulePlan plan =
            plan_schedule(cfg.beta, cfg.tau, cfg.zeta, cfg.rho_star, cfg.sigma,
                          cfg.theta0, cfg.schedule == "auto_omit_factorial");
        out << "regime      " << regime_name(plan.regime) << "\n";
        out << "rho         " << plan.rho << "\n";
        if (std::isfinite(plan.q_star)) out << "q_star      " << plan.q_star << "\n";
        out << "alpha_star  " << plan.alpha_star << "\n";
        out << "rmse_rate   n^-" << 0.5 * (1.0 + plan.alpha_star) << "\n";
        out << "exponent    " << plan.exponent << "\n";
    } else if (cfg.schedule == "inversion") {
        out << "regime      inversion (requested)\n";
    } else {
        out << "regime      explicit exponents\n";
    }
    for (const auto& inst : expand_methods(cfg)) {
        if (inst.name.rfind("BDIS", 0) != 0) continue;
        out << inst.name << "  theta_j =";
        int show = std::min(cfg.s, 8);
        for (int j = 0; j < show; ++j) out << " " << inst.thetas(j);
        if (cfg.s > show) out << " ... " << inst.thetas(cfg.s - 1);
        out << "\n";
        if (inst.clipped) out << "  (theta values clipped below 1/2)\n";
    }
    return out.str();
}

} // namespace bdis
