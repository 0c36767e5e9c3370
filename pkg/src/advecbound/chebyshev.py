"""Chebyshev series in time on [0, t_max].

The series live on the affine image of [-1, 1] under tau = 2t/t_max - 1, so
the stored coefficients are plain Chebyshev coefficients and the domain map
only surfaces as a 2/t_max chain-rule factor in differentiation.  Fitting
goes through the type-I discrete cosine transform on the Chebyshev-Lobatto
grid, evaluated by the FFT-based transform: its per-coefficient rounding
noise is a few ulp of the sample scale, an order of magnitude below a direct
cosine-table summation, and that headroom matters because the residual
bound differentiates the fit, amplifying degree-l coefficient noise by
O(l^2 / t_max).

Point-arithmetic fitting is deliberate: the approximate solution itself need
not be rigorous.  The rigorous pieces are the interval-lifted helpers at the
bottom (derivative and Clenshaw enclosures), which the verifier uses on
degenerate interval lifts of the fitted coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.fft import dct

from .errors import DomainError
from .interval import (
    ComplexInterval,
    Interval,
    _up2,
    as_interval,
    div_dn,
    div_up,
    fsum_up,
)


@dataclass(frozen=True, eq=False)
class ChebSeries:
    """Chebyshev coefficients of one time-dependent quantity on [0, t_max]."""

    t_max: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.t_max <= 0.0:
            raise DomainError(f"t_max must be positive, got {self.t_max}")
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise DomainError("coefficients must form a nonempty 1-D array")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1


def cheb_points(n: int, t_max: float) -> np.ndarray:
    """Chebyshev-Lobatto points mapped to [0, t_max], ascending."""
    if t_max <= 0.0:
        raise DomainError(f"t_max must be positive, got {t_max}")
    if n == 0:
        return np.array([0.5 * t_max])
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    # 1 - cos(theta) = 2 sin^2(theta/2) evaluated in the sine form keeps full
    # relative accuracy for the nodes clustered near t = 0; the upper half is
    # the exact mirror, so the grid is symmetric about t_max/2 to the bit.
    # Node placement error feeds straight into the residual bound's noise
    # floor (sample offset times |u'|), which makes this worth being fussy.
    j = np.arange(n + 1)
    pts = np.sin(0.5 * np.pi * j / n) ** 2 * t_max
    pts[0] = 0.0
    pts[n] = t_max
    if n % 2 == 0:
        pts[n // 2] = 0.5 * t_max
    m = (n - 1) // 2
    if m >= 1:
        pts[n - m : n] = t_max - pts[m:0:-1]
    return pts


def fit(samples: Sequence[complex], t_max: float) -> ChebSeries:
    """Interpolate samples taken at cheb_points(n, t_max) by a degree-n series."""
    values = np.asarray(samples, dtype=complex)
    if values.ndim != 1 or values.size == 0:
        raise DomainError("samples must form a nonempty 1-D array")
    n = values.size - 1
    if n == 0:
        return ChebSeries(t_max=t_max, coeffs=values.copy())
    # ascending-time samples sit at tau = -cos(j*pi/n); reverse to the
    # standard cos(m*pi/n) ordering before the cosine transform.  The DCT-I
    # convention already carries the half-weight endpoints of the Lobatto
    # quadrature, so only the result's first and last entries need halving.
    g = values[::-1].copy()
    coeffs = dct(g, type=1) / n
    coeffs[0] *= 0.5
    coeffs[n] *= 0.5
    return ChebSeries(t_max=t_max, coeffs=coeffs)


def derivative(s: ChebSeries) -> ChebSeries:
    """Differentiate in t via the classical backward coefficient recurrence."""
    n = s.degree
    if n < 1:
        raise DomainError("derivative needs degree >= 1")
    a = s.coeffs
    b = np.zeros(n + 2, dtype=complex)
    for l in range(n, 0, -1):
        b[l - 1] = b[l + 1] + 2.0 * l * a[l]
    b[0] *= 0.5
    return ChebSeries(t_max=s.t_max, coeffs=b[:n] * (2.0 / s.t_max))


def evaluate(s: ChebSeries, t: float) -> complex:
    """Clenshaw evaluation at a time inside [0, t_max]."""
    if not 0.0 <= t <= s.t_max:
        raise DomainError(f"evaluation point {t} outside [0, {s.t_max}]")
    tau = 2.0 * t / s.t_max - 1.0
    a = s.coeffs
    b1 = 0.0 + 0.0j
    b2 = 0.0 + 0.0j
    for l in range(s.degree, 0, -1):
        b1, b2 = a[l] + 2.0 * tau * b1 - b2, b1
    return complex(a[0] + tau * b1 - b2)


def evaluate_many(s: ChebSeries, ts: np.ndarray) -> np.ndarray:
    """Vectorized Clenshaw evaluation at several times inside [0, t_max]."""
    ts = np.asarray(ts, dtype=float)
    if ts.size and (ts.min() < 0.0 or ts.max() > s.t_max):
        raise DomainError("evaluation points outside the series domain")
    tau = 2.0 * ts / s.t_max - 1.0
    a = s.coeffs
    b1 = np.zeros_like(tau, dtype=complex)
    b2 = np.zeros_like(tau, dtype=complex)
    for l in range(s.degree, 0, -1):
        b1, b2 = a[l] + 2.0 * tau * b1 - b2, b1
    return a[0] + tau * b1 - b2


def abs_coeff_sum_upper(s: ChebSeries) -> float:
    """Upper bound of sum_l |coeff_l|, which dominates the sup of the series."""
    return fsum_up(_up2(abs(c)) for c in s.coeffs)


def derivative_enclosure(
    coeffs: Sequence[ComplexInterval], t_max: float
) -> list[ComplexInterval]:
    """Interval version of the derivative recurrence, one degree shorter.

    Input entries enclose the series coefficients; output entries enclose the
    derivative's coefficients including the 2/t_max domain factor.  Exact
    zeros propagate to exact zeros, so a zero series differentiates to an
    exactly zero series.
    """
    n = len(coeffs) - 1
    if n < 1:
        raise DomainError("derivative needs degree >= 1")
    if t_max <= 0.0:
        raise DomainError(f"t_max must be positive, got {t_max}")
    zero = ComplexInterval.zero()
    b: list[ComplexInterval] = [zero] * (n + 2)
    for l in range(n, 0, -1):
        scale = Interval.point(2.0 * l)
        scaled = ComplexInterval(scale * coeffs[l].re, scale * coeffs[l].im)
        b[l - 1] = b[l + 1] + scaled
    half = Interval.point(0.5)
    b[0] = ComplexInterval(half * b[0].re, half * b[0].im)
    factor = Interval(div_dn(2.0, t_max), div_up(2.0, t_max))
    return [ComplexInterval(factor * z.re, factor * z.im) for z in b[:n]]


def evaluate_enclosure(
    coeffs: Sequence[ComplexInterval], t_max: float, t: "float | Interval"
) -> ComplexInterval:
    """Interval Clenshaw evaluation of an interval-coefficient series."""
    t_iv = as_interval(t)
    if t_iv.lo < 0.0 or t_iv.hi > t_max:
        raise DomainError(f"evaluation interval outside [0, {t_max}]")
    tau = Interval(div_dn(2.0, t_max), div_up(2.0, t_max)) * t_iv - 1.0
    two_tau = tau * 2.0
    zero = ComplexInterval.zero()
    b1 = zero
    b2 = zero
    for l in range(len(coeffs) - 1, 0, -1):
        b1, b2 = coeffs[l] + ComplexInterval(two_tau * b1.re, two_tau * b1.im) - b2, b1
    return coeffs[0] + ComplexInterval(tau * b1.re, tau * b1.im) - b2
