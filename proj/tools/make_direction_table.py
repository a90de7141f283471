#!/usr/bin/env python3
"""Regenerate data/new-joe-kuo-6.512 from scipy's bundled Joe-Kuo direction numbers.

scipy ships the new-joe-kuo-6.21201 data as a compressed archive
(scipy/stats/_sobol_direction_numbers.npz) with full-polynomial integers.
This script re-emits the first 511 rows (dimensions 2..512) in the published
text layout: a `d s a m_i` header, then one `d s a m_1 ... m_s` line per
dimension, where `a` encodes the interior coefficients of the degree-s
primitive polynomial.

Usage: python3 tools/make_direction_table.py > data/new-joe-kuo-6.512
"""

import os
import sys

import numpy as np
import scipy.stats


MAX_DIM = 512


def main() -> None:
    path = os.path.join(os.path.dirname(scipy.stats.__file__),
                        "_sobol_direction_numbers.npz")
    data = np.load(path)
    poly = data["poly"]
    vinit = data["vinit"]

    out = sys.stdout
    out.write("d s a m_i\n")
    # index 0 is dimension 1 (van der Corput, handled implicitly by consumers)
    for idx in range(1, MAX_DIM):
        d = idx + 1
        p = int(poly[idx])
        s = p.bit_length() - 1
        # strip the leading x^s and trailing +1 terms, keep interior coefficients
        a = (p - (1 << s) - 1) >> 1
        m = [int(v) for v in vinit[idx][:s]]
        if any(v == 0 or v % 2 == 0 or v >= (1 << (k + 1)) for k, v in enumerate(m)):
            raise SystemExit(f"bad initial direction numbers at dimension {d}")
        out.write(f"{d} {s} {a} {' '.join(str(v) for v in m)}\n")


if __name__ == "__main__":
    main()
