#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bdis {

/** Flat `key = value` experiment description.
 *
 *  Lines are `key = value` with `#` comments and blank lines allowed; unknown
 *  keys are rejected with their line number. Required keys: problem, s, beta,
 *  tau, zeta, rho_star, m_min, m_max, seed. Everything else has a default.
 *
 *  `zeta` and `rho_star` describe the coefficient envelope zeta j^{-rho_star}
 *  used both by the exp_abs test integrand and the diffusion random field, so
 *  zeta is also the largest growth coefficient fed to the schedule planner.
 */
struct ExperimentConfig {
    std::string problem;       // "testfunc" | "pde"
    int s = 0;                 // parameter dimension
    double beta = 0.0;         // distribution shape
    double tau = 0.0;          // integrand growth exponent
    double zeta = 0.0;         // coefficient scale (alpha_inf)
    double rho_star = 0.0;     // coefficient decay power
    double sigma = 1.0;        // factorial-envelope offset in the planner
    double theta0 = 0.1;       // schedule prefactor
    double p = 1.0;            // ramp smoothness
    std::string schedule = "auto"; // auto | auto_omit_factorial | inversion | explicit:e1,e2,...
    std::vector<double> explicit_exponents;
    int m_min = 0, m_max = 0;  // sample sizes n = 2^m, m in [m_min, m_max]
    int R = 64;                // replicates
    std::uint64_t seed = 0;
    int mesh_N = 8;            // cells per side (pde)
    std::vector<std::string> methods = {"MC", "RQMC", "BDIS"};
    std::vector<std::string> qois; // default: pde -> point,h1; testfunc -> scalar
    std::string family = "exp_abs"; // testfunc integrand family
    double family_c = 0.5;          // coefficient for the linear families
    std::string out_dir = ".";
};

/** Parse and validate. Throws config_error with a line number for syntax
 *  problems and with the violated constraint for semantic ones (including the
 *  schedule-planner preconditions when an auto schedule is requested). */
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/** Canonical text form; parsing it back reproduces the config. */
std::string serialize_config(const ExperimentConfig& cfg);

} // namespace bdis
