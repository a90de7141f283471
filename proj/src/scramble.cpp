#include "bdis/scramble.hpp"

#include <stdexcept>

namespace bdis {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Stream key for one (seed, replicate, dimension) triple; `purpose` separates
// the scramble and plain-MC streams.
std::uint64_t stream_key(std::uint64_t seed, std::uint32_t replicate, std::uint64_t dim,
                         std::uint64_t purpose) {
    std::uint64_t h = mix64(seed ^ (purpose << 56));
    h = mix64(h ^ (static_cast<std::uint64_t>(replicate) + 0x51ed2701ULL));
    return mix64(h ^ (dim * 0xd1b54a32d192ed03ULL));
}

double open_unit_53(std::uint64_t value53) {
    if (value53 == 0) value53 = 1; // probability 2^-53 event, keeps output > 0
    return static_cast<double>(value53) * 0x1p-53;
}

} // namespace

Eigen::MatrixXd owen_scramble(const DigitalNet& net, std::uint64_t seed,
                              std::uint32_t replicate) {
    const Eigen::Index n = net.bits.rows();
    const Eigen::Index s = net.bits.cols();
    Eigen::MatrixXd u(n, s);
    for (Eigen::Index j = 0; j < s; ++j) {
        const std::uint64_t key = stream_key(seed, replicate, static_cast<std::uint64_t>(j), 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::uint32_t raw = net.bits(i, j);
            std::uint64_t scrambled = 0;
            for (int k = 0; k < 32; ++k) {
                // digit permutation keyed by (level k, digits above level k)
                const std::uint64_t prefix = k == 0 ? 0 : (raw >> (32 - k));
                const std::uint64_t h =
                    mix64(key ^ ((static_cast<std::uint64_t>(k) << 32) | prefix));
                const std::uint64_t bit = (raw >> (31 - k)) & 1u;
                scrambled = (scrambled << 1) | (bit ^ (h >> 63));
            }
            const std::uint64_t extra =
                mix64(key ^ ((std::uint64_t{32} << 32) ^ raw)) & ((1u << 21) - 1);
            u(i, j) = open_unit_53((scrambled << 21) | extra);
        }
    }
    return u;
}

Eigen::MatrixXd mc_points(std::int64_t n, int s, std::uint64_t seed,
                          std::uint32_t replicate) {
    if (n < 1) throw std::invalid_argument("mc_points: n must be >= 1");
    if (s < 1) throw std::invalid_argument("mc_points: s must be >= 1");
    Eigen::MatrixXd u(n, s);
    for (int j = 0; j < s; ++j) {
        const std::uint64_t key = stream_key(seed, replicate, static_cast<std::uint64_t>(j), 2);
        for (std::int64_t i = 0; i < n; ++i)
            u(i, j) = open_unit_53(mix64(key ^ static_cast<std::uint64_t>(i)) >> 11);
    }
    return u;
}

} // namespace bdis
