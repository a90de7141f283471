#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bdis {

/** Parsed Sobol' direction-number table in the published Joe-Kuo text layout.
 *
 *  One line per dimension d >= 2: `d s a m_1 ... m_s`, where s is the degree
 *  of the primitive polynomial over GF(2), `a` packs its interior
 *  coefficients, and the m_k are the odd initial direction integers
 *  (m_k < 2^k). Dimension 1 is the base-2 van der Corput sequence and is not
 *  stored in the file.
 */
struct DirectionTable {
    struct Row {
        std::uint32_t dim;
        std::uint32_t degree;
        std::uint32_t coeff;
        std::vector<std::uint32_t> m;
    };
    std::vector<Row> rows; // dimensions 2 .. max_dim(), in order

    int max_dim() const { return static_cast<int>(rows.size()) + 1; }

    static DirectionTable load(const std::string& path);

    /** Table shipped with the library (dimensions 2..512). */
    static const DirectionTable& bundled();

    /** Canonical text form; load(serialize()) round-trips losslessly and
     *  reproduces the bundled file byte for byte. */
    std::string serialize() const;
};

using BitMatrix =
    Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/** A 2^m x s digital net in base 2, stored as 32 fractional bits per
 *  coordinate. Row i holds point i; bits(i, j) * 2^-32 is the unscrambled
 *  coordinate value. */
struct DigitalNet {
    int m = 0;
    int s = 0;
    BitMatrix bits;
};

/** First 2^m points of the s-dimensional Sobol' sequence (Gray-code order, so
 *  point 0 is the origin and every prefix of size 2^k is a digital net).
 *  Dimension 1 is van der Corput; dimensions 2..s come from `table`. */
DigitalNet sobol_net(int m, int s, const DirectionTable& table = DirectionTable::bundled());

/** Unscrambled coordinates bits * 2^-32 as doubles in [0, 1). */
Eigen::MatrixXd net_to_unit(const DigitalNet& net);

} // namespace bdis
