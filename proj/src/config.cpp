#include "bdis/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bdis/errors.hpp"
#include "bdis/transform.hpp"

namespace bdis {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& why) {
    throw config_error("config line " + std::to_string(line) + ": " + why);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        fail(line, "value for '" + key + "' is not a number: '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        fail(line, "value for '" + key + "' is not an integer: '" + v + "'");
    }
}

std::uint64_t parse_uint(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size() || v.find('-') != std::string::npos)
            throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        fail(line, "value for '" + key + "' is not a nonnegative integer: '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void validate(ExperimentConfig& cfg) {
    if (cfg.problem != "testfunc" && cfg.problem != "pde")
        throw config_error("config: problem must be 'testfunc' or 'pde'");
    if (cfg.s < 1) throw config_error("config: s must be >= 1");
    if (!(cfg.beta > 0.0)) throw config_error("config: beta must be positive");
    if (!(cfg.tau > 0.0) || !(cfg.tau <= cfg.beta))
        throw config_error("config: tau must satisfy 0 < tau <= beta");
    if (!(cfg.zeta > 0.0)) throw config_error("config: zeta must be positive");
    if (!std::isfinite(cfg.rho_star)) throw config_error("config: rho_star must be finite");
    if (!(cfg.sigma >= 0.0)) throw config_error("config: sigma must be >= 0");
    if (!(cfg.theta0 > 0.0 && cfg.theta0 < 0.5))
        throw config_error("config: theta0 must lie in (0, 1/2)");
    if (!(cfg.p >= 1.0)) throw config_error("config: p must satisfy p >= 1");
    if (cfg.m_min < 1) throw config_error("config: m_min must be >= 1");
    if (cfg.m_max > 24) throw config_error("config: m_max must be <= 24");
    if (cfg.m_min > cfg.m_max) throw config_error("config: m_min must be <= m_max");
    if (cfg.R < 2) throw config_error("config: R must be >= 2");

    const std::set<std::string> known_methods = {"MC", "RQMC", "BDIS"};
    if (cfg.methods.empty()) throw config_error("config: methods must not be empty");
    std::set<std::string> seen_methods;
    for (const auto& m : cfg.methods) {
        if (!known_methods.count(m))
            throw config_error("config: unknown method '" + m + "'");
        if (!seen_methods.insert(m).second)
            throw config_error("config: duplicate method '" + m + "'");
    }

    if (cfg.problem == "pde") {
        if (cfg.mesh_N < 2 || cfg.mesh_N % 2 != 0)
            throw config_error("config: mesh_N must be an even integer >= 2");
        if (cfg.qois.empty()) cfg.qois = {"point", "h1"};
        for (const auto& q : cfg.qois)
            if (q != "point" && q != "h1")
                throw config_error("config: pde qois must be chosen from point,h1");
    } else {
        if (cfg.qois.empty()) cfg.qois = {"scalar"};
        if (cfg.qois != std::vector<std::string>{"scalar"})
            throw config_error("config: testfunc supports only the scalar qoi");
        const std::set<std::string> families = {"constant", "linear", "product_linear",
                                                "exp_abs", "sum_square"};
        if (!families.count(cfg.family))
            throw config_error("config: unknown family '" + cfg.family + "'");
    }

    bool explicit_schedule = cfg.schedule.rfind("explicit:", 0) == 0;
    if (explicit_schedule) {
        if (cfg.explicit_exponents.empty())
            throw config_error("config: explicit schedule needs at least one exponent");
        for (double e : cfg.explicit_exponents)
            if (!(e >= 0.0) || !std::isfinite(e))
                throw config_error("config: schedule exponents must be finite and >= 0");
    } else if (cfg.schedule != "auto" && cfg.schedule != "auto_omit_factorial" &&
               cfg.schedule != "inversion") {
        throw config_error("config: schedule must be auto, auto_omit_factorial, inversion, "
                           "or explicit:e1,e2,...");
    }

    // Surface planner preconditions at parse time when they will be needed.
    bool has_bdis = std::find(cfg.methods.begin(), cfg.methods.end(), "BDIS") !=
                    cfg.methods.end();
    if (has_bdis && (cfg.schedule == "auto" || cfg.schedule == "auto_omit_factorial"))
        plan_schedule(cfg.beta, cfg.tau, cfg.zeta, cfg.rho_star, cfg.sigma, cfg.theta0,
                      cfg.schedule == "auto_omit_factorial");
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "missing key before '='");
        if (val.empty()) fail(lineno, "missing value for '" + key + "'");
        if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");

        if (key == "problem") cfg.problem = val;
        else if (key == "s") cfg.s = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "beta") cfg.beta = parse_double(val, lineno, key);
        else if (key == "tau") cfg.tau = parse_double(val, lineno, key);
        else if (key == "zeta") cfg.zeta = parse_double(val, lineno, key);
        else if (key == "rho_star") cfg.rho_star = parse_double(val, lineno, key);
        else if (key == "sigma") cfg.sigma = parse_double(val, lineno, key);
        else if (key == "theta0") cfg.theta0 = parse_double(val, lineno, key);
        else if (key == "p") cfg.p = parse_double(val, lineno, key);
        else if (key == "schedule") {
            cfg.schedule = val;
            if (val.rfind("explicit:", 0) == 0)
                for (const auto& tok : split_list(val.substr(9)))
                    cfg.explicit_exponents.push_back(parse_double(tok, lineno, key));
        } else if (key == "m_min") cfg.m_min = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "m_max") cfg.m_max = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "R") cfg.R = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "seed") cfg.seed = parse_uint(val, lineno, key);
        else if (key == "mesh_N") cfg.mesh_N = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "methods") cfg.methods = split_list(val);
        else if (key == "qois") cfg.qois = split_list(val);
        else if (key == "family") cfg.family = val;
        else if (key == "family_c") cfg.family_c = parse_double(val, lineno, key);
        else if (key == "out") cfg.out_dir = val;
        else fail(lineno, "unknown key '" + key + "'");
    }
    for (const char* req : {"problem", "s", "beta", "tau", "zeta", "rho_star",
                            "m_min", "m_max", "seed"})
        if (!seen.count(req))
            throw config_error(std::string("config: missing required key '") + req + "'");
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "problem = " << cfg.problem << "\n";
    out << "s = " << cfg.s << "\n";
    out << "beta = " << cfg.beta << "\n";
    out << "tau = " << cfg.tau << "\n";
    out << "zeta = " << cfg.zeta << "\n";
    out << "rho_star = " << cfg.rho_star << "\n";
    out << "sigma = " << cfg.sigma << "\n";
    out << "theta0 = " << cfg.theta0 << "\n";
    out << "p = " << cfg.p << "\n";
    out << "schedule = " << cfg.schedule << "\n";
    out << "m_min = " << cfg.m_min << "\n";
    out << "m_max = " << cfg.m_max << "\n";
    out << "R = " << cfg.R << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "mesh_N = " << cfg.mesh_N << "\n";
    out << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        out << (i ? "," : "") << cfg.methods[i];
    out << "\n";
    out << "qois = ";
    for (std::size_t i = 0; i < cfg.qois.size(); ++i) out << (i ? "," : "") << cfg.qois[i];
    out << "\n";
    out << "family = " << cfg.family << "\n";
    out << "family_c = " << cfg.family_c << "\n";
    out << "out = " << cfg.out_dir << "\n";
    return out.str();
}

} // namespace bdis
