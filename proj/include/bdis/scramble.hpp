#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "bdis/sobol.hpp"

namespace bdis {

/** 64-bit avalanche mixer (splitmix64 finalizer). Statistically strong enough
 *  that every derived bit below behaves as an independent fair coin. */
std::uint64_t mix64(std::uint64_t x);

/** Nested uniform (Owen) scrambling of a digital net, realized lazily.
 *
 *  The digit-k flip of coordinate j is a hash bit keyed by (seed, replicate,
 *  j, k, preceding digits), so the permutation applied at depth k depends on
 *  the digit prefix exactly as in nested uniform scrambling, and elementary
 *  interval counts are preserved deterministically. After the 32 net digits,
 *  21 further hash bits (keyed by the full raw prefix) fill the double
 *  mantissa. Outputs lie strictly inside (0, 1) and are fully determined by
 *  (seed, replicate).
 */
Eigen::MatrixXd owen_scramble(const DigitalNet& net, std::uint64_t seed,
                              std::uint32_t replicate);

/** iid uniform points from a counter-based stream: coordinate (i, j) is a pure
 *  hash of (seed, replicate, i, j), so any entry can be regenerated without
 *  state. Values lie strictly inside (0, 1). */
Eigen::MatrixXd mc_points(std::int64_t n, int s, std::uint64_t seed,
                          std::uint32_t replicate);

} // namespace bdis
