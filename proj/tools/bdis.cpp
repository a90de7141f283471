#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bdis/config.hpp"
#include "bdis/errors.hpp"
#include "bdis/net_check.hpp"
#include "bdis/runner.hpp"
#include "bdis/scramble.hpp"
#include "bdis/sobol.hpp"

namespace {

/** Apply the BDIS_SEED environment override, if set. */
void apply_seed_override(bdis::ExperimentConfig& cfg) {
    const char* env = std::getenv("BDIS_SEED");
    if (!env || !*env) return;
    try {
        std::size_t pos = 0;
        cfg.seed = std::stoull(env, &pos);
        if (pos != std::string(env).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw bdis::config_error(std::string("BDIS_SEED is not a nonnegative integer: ") +
                                 env);
    }
}

int cmd_run(const std::string& config_path, const std::string& out_override, int threads,
            int drop_transient) {
    bdis::ExperimentConfig cfg = bdis::parse_config_file(config_path);
    apply_seed_override(cfg);
    if (!out_override.empty()) cfg.out_dir = out_override;

    bdis::ConvergenceReport report = bdis::run_experiment(cfg, threads, drop_transient);

    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::path csv_path = std::filesystem::path(cfg.out_dir) / "results.csv";
    std::ofstream out(csv_path);
    if (!out) throw bdis::config_error("cannot write " + csv_path.string());
    bdis::write_csv(out, report);
    out.close();

    std::cout << "wrote " << csv_path.string() << "\n";
    for (const auto& s : report.slopes)
        std::cout << s.method << " " << s.qoi << " slope " << s.slope << "\n";
    return 0;
}

int cmd_check_net(int m, int s) {
    bdis::DigitalNet net = bdis::sobol_net(m, s);
    Eigen::MatrixXd raw = bdis::net_to_unit(net);
    int t_raw = bdis::minimal_t(raw, m);
    Eigen::MatrixXd scrambled = bdis::owen_scramble(net, 1, 0);
    int t_scr = bdis::minimal_t(scrambled, m);
    std::cout << "sobol m=" << m << " s=" << s << "\n";
    std::cout << "minimal t (raw)       = " << t_raw << "\n";
    std::cout << "minimal t (scrambled) = " << t_scr << "\n";
    return 0;
}

int cmd_schedule(const std::string& config_path) {
    bdis::ExperimentConfig cfg = bdis::parse_config_file(config_path);
    apply_seed_override(cfg);
    std::cout << bdis::describe_schedule(cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-damping importance sampling for randomized quasi-Monte Carlo"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 1, drop_transient = 0, net_m = 0, net_s = 0;

    auto* run = app.add_subcommand("run", "Run a convergence study and write results.csv");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--drop-transient", drop_transient,
                    "smallest levels excluded from slope fits")
        ->check(CLI::NonNegativeNumber);

    auto* check = app.add_subcommand("check-net", "Report minimal t of a Sobol' net");
    check->add_option("m", net_m, "log2 point count")->required()->check(CLI::Range(0, 20));
    check->add_option("s", net_s, "dimension")->required()->check(CLI::Range(1, 512));

    auto* sched = app.add_subcommand("schedule",
                                     "Print the damping schedule without running");
    sched->add_option("config", config_path, "experiment config file")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path, out_dir, threads, drop_transient);
        if (check->parsed()) return cmd_check_net(net_m, net_s);
        return cmd_schedule(config_path);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help output is success; bad usage is a config error
    } catch (const bdis::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bdis::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
