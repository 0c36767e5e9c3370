"""Vectorized directed-rounding endpoint arithmetic on float arrays.

Mirrors the scalar helpers of the interval module elementwise, including the
exact-zero conventions: sums that round to zero are exact and stay unnudged,
while products are trusted as zero only when an input is zero.  The test
suite pins this parity against the scalar kernel elementwise, so the two
implementations cannot drift apart silently.
"""

from __future__ import annotations

import numpy as np

_INF = np.inf


def vup(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, _INF)


def vdn(x: np.ndarray) -> np.ndarray:
    return np.nextafter(x, -_INF)


def vadd_up(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a + b
    return np.where(s == 0.0, s, vup(s))


def vadd_dn(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a + b
    return np.where(s == 0.0, s, vdn(s))


def vsub_up(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a - b
    return np.where(s == 0.0, s, vup(s))


def vsub_dn(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a - b
    return np.where(s == 0.0, s, vdn(s))


def vmul_up(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    exact_zero = (a == 0.0) | (b == 0.0)
    r = a * b
    # underflowed products of nonzero operands: a negative true product takes
    # 0.0 as upper bound, a positive one the smallest subnormal
    under = (r == 0.0) & ~exact_zero
    same_sign = (a > 0.0) == (b > 0.0)
    out = np.where(exact_zero, 0.0, vup(r))
    return np.where(under, np.where(same_sign, 5e-324, 0.0), out)


def vmul_dn(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    exact_zero = (a == 0.0) | (b == 0.0)
    r = a * b
    under = (r == 0.0) & ~exact_zero
    same_sign = (a > 0.0) == (b > 0.0)
    out = np.where(exact_zero, 0.0, vdn(r))
    return np.where(under, np.where(same_sign, 0.0, -5e-324), out)


def vsqrt_up(a: np.ndarray) -> np.ndarray:
    r = np.sqrt(a)
    return np.where(r == 0.0, 0.0, vup(r))


def vscale(
    xlo: np.ndarray, xhi: np.ndarray, plo: float, phi: float
) -> tuple[np.ndarray, np.ndarray]:
    """Interval product of elementwise intervals [xlo, xhi] with scalar [plo, phi]."""
    lo = np.minimum(
        np.minimum(vmul_dn(xlo, plo), vmul_dn(xlo, phi)),
        np.minimum(vmul_dn(xhi, plo), vmul_dn(xhi, phi)),
    )
    hi = np.maximum(
        np.maximum(vmul_up(xlo, plo), vmul_up(xlo, phi)),
        np.maximum(vmul_up(xhi, plo), vmul_up(xhi, phi)),
    )
    return lo, hi


def vprod(
    xlo: np.ndarray, xhi: np.ndarray, ylo: np.ndarray, yhi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise interval product [xlo, xhi] * [ylo, yhi] (broadcasting)."""
    lo = np.minimum(
        np.minimum(vmul_dn(xlo, ylo), vmul_dn(xlo, yhi)),
        np.minimum(vmul_dn(xhi, ylo), vmul_dn(xhi, yhi)),
    )
    hi = np.maximum(
        np.maximum(vmul_up(xlo, ylo), vmul_up(xlo, yhi)),
        np.maximum(vmul_up(xhi, ylo), vmul_up(xhi, yhi)),
    )
    return lo, hi


def vabs_upper(
    re_lo: np.ndarray, re_hi: np.ndarray, im_lo: np.ndarray, im_hi: np.ndarray
) -> np.ndarray:
    """Elementwise upper bound of the modulus of rectangle-valued entries."""
    mr = np.maximum(np.abs(re_lo), np.abs(re_hi))
    mi = np.maximum(np.abs(im_lo), np.abs(im_hi))
    return vsqrt_up(vadd_up(vmul_up(mr, mr), vmul_up(mi, mi)))
