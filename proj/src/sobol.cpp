#include "bdis/sobol.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bdis/errors.hpp"

#ifndef BDIS_DIRECTION_FILE
#define BDIS_DIRECTION_FILE "data/new-joe-kuo-6.512"
#endif

namespace bdis {

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& why) {
    throw config_error("direction table " + path + ":" + std::to_string(line) +
                       ": " + why);
}

// 32 direction integers V_k = m_k 2^{32-k} for one dimension, extending the
// initial m values by the primitive-polynomial recurrence.
std::array<std::uint32_t, 32> direction_integers(const DirectionTable::Row& row) {
    std::array<std::uint32_t, 32> v{};
    const std::uint32_t deg = row.degree;
    std::vector<std::uint32_t> m(row.m);
    m.resize(32);
    for (std::uint32_t k = deg; k < 32; ++k) {
        std::uint32_t val = m[k - deg] ^ (m[k - deg] << deg);
        for (std::uint32_t i = 1; i < deg; ++i)
            if ((row.coeff >> (deg - 1 - i)) & 1u) val ^= m[k - i] << i;
        m[k] = val;
    }
    for (int k = 0; k < 32; ++k) v[k] = m[k] << (31 - k);
    return v;
}

std::array<std::uint32_t, 32> van_der_corput_integers() {
    std::array<std::uint32_t, 32> v{};
    for (int k = 0; k < 32; ++k) v[k] = 1u << (31 - k);
    return v;
}

} // namespace

DirectionTable DirectionTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("direction table: cannot open " + path);
    DirectionTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue; // blank
        if (lineno == 1 && first == "d") continue; // header
        std::uint32_t d = 0, deg = 0, coeff = 0;
        try {
            d = static_cast<std::uint32_t>(std::stoul(first));
        } catch (const std::exception&) {
            parse_fail(path, lineno, "dimension field is not an integer");
        }
        if (!(ss >> deg >> coeff))
            parse_fail(path, lineno, "expected `d s a m_1 ... m_s`");
        if (d != static_cast<std::uint32_t>(table.max_dim()) + 1)
            parse_fail(path, lineno, "dimensions must increase consecutively from 2");
        if (deg == 0 || deg > 31) parse_fail(path, lineno, "degree out of range");
        if (coeff >= (deg > 1 ? (1u << (deg - 1)) : 1u))
            parse_fail(path, lineno, "polynomial coefficient out of range");
        Row row{d, deg, coeff, {}};
        for (std::uint32_t k = 1; k <= deg; ++k) {
            std::uint32_t mk;
            if (!(ss >> mk)) parse_fail(path, lineno, "missing initial direction integer");
            if (mk % 2 == 0 || mk >= (1u << k))
                parse_fail(path, lineno, "initial direction integers must be odd and < 2^k");
            row.m.push_back(mk);
        }
        std::string extra;
        if (ss >> extra) parse_fail(path, lineno, "trailing fields");
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw config_error("direction table " + path + ": empty");
    return table;
}

const DirectionTable& DirectionTable::bundled() {
    static const DirectionTable table = load(BDIS_DIRECTION_FILE);
    return table;
}

std::string DirectionTable::serialize() const {
    std::string out = "d s a m_i\n";
    char buf[32];
    for (const Row& r : rows) {
        std::snprintf(buf, sizeof buf, "%u %u %u", r.dim, r.degree, r.coeff);
        out += buf;
        for (std::uint32_t mk : r.m) {
            std::snprintf(buf, sizeof buf, " %u", mk);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

DigitalNet sobol_net(int m, int s, const DirectionTable& table) {
    if (m < 0 || m > 31) throw config_error("sobol_net: m must lie in [0, 31]");
    if (s < 1) throw config_error("sobol_net: s must be >= 1");
    if (s > table.max_dim())
        throw config_error("sobol_net: direction table covers only " +
                           std::to_string(table.max_dim()) + " dimensions");
    const std::int64_t n = std::int64_t{1} << m;
    DigitalNet net;
    net.m = m;
    net.s = s;
    net.bits.resize(n, s);
    std::vector<std::array<std::uint32_t, 32>> dirs;
    dirs.reserve(s);
    dirs.push_back(van_der_corput_integers());
    for (int j = 1; j < s; ++j) dirs.push_back(direction_integers(table.rows[j - 1]));
    for (int j = 0; j < s; ++j) {
        const auto& v = dirs[j];
        for (std::int64_t i = 0; i < n; ++i) {
            std::uint64_t g = static_cast<std::uint64_t>(i) ^ (static_cast<std::uint64_t>(i) >> 1);
            std::uint32_t x = 0;
            for (int k = 0; g != 0; ++k, g >>= 1)
                if (g & 1u) x ^= v[k];
            net.bits(i, j) = x;
        }
    }
    return net;
}

Eigen::MatrixXd net_to_unit(const DigitalNet& net) {
    Eigen::MatrixXd u(net.bits.rows(), net.bits.cols());
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j)
            u(i, j) = static_cast<double>(net.bits(i, j)) * 0x1p-32;
    return u;
}

} // namespace bdis
