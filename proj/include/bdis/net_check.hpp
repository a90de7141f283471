#pragma once

#include <Eigen/Core>

namespace bdis {

/** Elementary-interval test for a (t, m, s)-net in base 2.
 *
 *  Checks that every dyadic box of volume 2^{t-m} (all shapes k_1 + ... + k_s
 *  = m - t) contains exactly 2^t of the 2^m points. `points` must be an
 *  n x s matrix with n = 2^m and coordinates in [0, 1). Throws when the shape
 *  enumeration would exceed ~5e6 boxes-per-shape work units; the checker is
 *  meant for toy sizes.
 */
bool is_net(const Eigen::MatrixXd& points, int m, int t);

/** Smallest t for which is_net passes (the net property is monotone in t).
 *  Returns m if even t = m - 1 fails (t = m is vacuous). */
int minimal_t(const Eigen::MatrixXd& points, int m);

} // namespace bdis
