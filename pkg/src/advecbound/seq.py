"""Finite-support two-sided sequences of complex intervals.

These model Fourier coefficient sequences (a_k) with k ranging over the
integers, stored densely on a window [offset, offset+len-1] and implicitly
zero outside.  The operations are the small operator algebra the error bounds
are phrased in: the Fourier differentiation operator B: (a_k) -> (ik a_k),
discrete convolution (the coefficient sequence of a product of functions),
the l1/l2 norms, and the head/tail split at a cutoff N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import CoefficientNotReal, DomainError
from .interval import (
    ComplexInterval,
    ComplexIntervalLike,
    Interval,
    add_up,
    as_complex_interval,
    fsum_up,
    sqrt_enclosure,
    sum_enclosure,
)
from .tails import TailBound

_ZERO = ComplexInterval.zero()


@dataclass(frozen=True, slots=True)
class CoeffSeq:
    """Dense window of complex-interval coefficients, zero outside."""

    offset: int
    coeffs: tuple[ComplexInterval, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DomainError("coefficient sequence needs at least one entry")

    @staticmethod
    def from_dict(entries: Mapping[int, ComplexIntervalLike]) -> "CoeffSeq":
        if not entries:
            return CoeffSeq.zero()
        lo = min(entries)
        hi = max(entries)
        coeffs = tuple(
            as_complex_interval(entries.get(k, 0.0)) for k in range(lo, hi + 1)
        )
        return CoeffSeq(offset=lo, coeffs=coeffs)

    @staticmethod
    def zero() -> "CoeffSeq":
        return CoeffSeq(offset=0, coeffs=(_ZERO,))

    @staticmethod
    def delta(k: int = 0, value: ComplexIntervalLike = 1.0) -> "CoeffSeq":
        return CoeffSeq(offset=k, coeffs=(as_complex_interval(value),))

    @property
    def kmin(self) -> int:
        return self.offset

    @property
    def kmax(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def coeff(self, k: int) -> ComplexInterval:
        if self.kmin <= k <= self.kmax:
            return self.coeffs[k - self.offset]
        return _ZERO

    def support(self) -> Iterable[tuple[int, ComplexInterval]]:
        """Yield (k, coefficient) for stored entries that are not exactly zero."""
        for j, z in enumerate(self.coeffs):
            if z.re.lo == z.re.hi == 0.0 and z.im.lo == z.im.hi == 0.0:
                continue
            yield self.offset + j, z

    def restrict(self, kmin: int, kmax: int) -> "CoeffSeq":
        entries = {k: z for k, z in self.support() if kmin <= k <= kmax}
        return CoeffSeq.from_dict(entries)


@dataclass(frozen=True, slots=True)
class SeqSplit:
    """Head within [-N, N] plus a rigorous l1 bound on everything outside."""

    head: CoeffSeq
    tail_l1_upper: float


def op_B(a: CoeffSeq) -> CoeffSeq:
    """Apply the Fourier differentiation multiplier: entry k becomes ik*a_k."""
    out = []
    for j, z in enumerate(a.coeffs):
        k = Interval.point(float(a.offset + j))
        out.append(ComplexInterval(-(k * z.im), k * z.re))
    return CoeffSeq(offset=a.offset, coeffs=tuple(out))


def conv(a: CoeffSeq, b: CoeffSeq) -> CoeffSeq:
    """Discrete convolution (Cauchy product): result_k = sum_m a_{k-m} b_m."""
    offset = a.offset + b.offset
    length = len(a.coeffs) + len(b.coeffs) - 1
    re_lo: list[list[float]] = [[] for _ in range(length)]
    re_hi: list[list[float]] = [[] for _ in range(length)]
    im_lo: list[list[float]] = [[] for _ in range(length)]
    im_hi: list[list[float]] = [[] for _ in range(length)]
    for i, za in enumerate(a.coeffs):
        for j, zb in enumerate(b.coeffs):
            p = za * zb
            slot = i + j
            re_lo[slot].append(p.re.lo)
            re_hi[slot].append(p.re.hi)
            im_lo[slot].append(p.im.lo)
            im_hi[slot].append(p.im.hi)
    coeffs = []
    for slot in range(length):
        re = sum_enclosure(Interval(lo, hi) for lo, hi in zip(re_lo[slot], re_hi[slot]))
        im = sum_enclosure(Interval(lo, hi) for lo, hi in zip(im_lo[slot], im_hi[slot]))
        coeffs.append(ComplexInterval(re, im))
    return CoeffSeq(offset=offset, coeffs=tuple(coeffs))


def l1_norm_upper(a: CoeffSeq) -> float:
    return fsum_up(z.abs_upper() for z in a.coeffs)


def l2_norm_enclosure(a: CoeffSeq) -> Interval:
    squares = [z.abs_enclosure().sqr() for z in a.coeffs]
    return sqrt_enclosure(sum_enclosure(squares))


def weighted_l1_enclosure(a: CoeffSeq) -> Interval:
    """Enclosure of sum_k |k| * |a_k| (the l1 norm of B applied to a)."""
    terms = []
    for j, z in enumerate(a.coeffs):
        k = abs(a.offset + j)
        terms.append(Interval.point(float(k)) * z.abs_enclosure())
    return sum_enclosure(terms)


def validate_hermitian(c: CoeffSeq, what: str = "coefficient sequence") -> None:
    """Require conj(c_k) and c_{-k} to overlap for every stored k.

    Real-valued functions have conjugate-symmetric Fourier coefficients; an
    empty overlap proves the stored enclosures cannot come from one.
    """
    for k in range(min(c.kmin, -c.kmax), max(c.kmax, -c.kmin) + 1):
        z = c.coeff(k)
        w = c.coeff(-k).conj()
        re_ok = z.re.lo <= w.re.hi and w.re.lo <= z.re.hi
        im_ok = z.im.lo <= w.im.hi and w.im.lo <= z.im.hi
        if not (re_ok and im_ok):
            raise CoefficientNotReal(
                f"{what}: entry k={k} is not the conjugate of entry k={-k}"
            )


def split(c: CoeffSeq, N: int, tail_formula: Optional[TailBound] = None) -> SeqSplit:
    """Cut at |k| <= N; bound the l1 mass of the rest.

    The tail bound combines stored coefficients beyond the window with an
    optional analytic formula for coefficients that were never stored (the
    caller asserts the formula bounds that l1 mass).  Both contributions are
    exactly zero for the built-in problems at the N values of interest.
    """
    if N < 0:
        raise DomainError(f"split cutoff must be nonnegative, got {N}")
    head = c.restrict(-N, N)
    stored = fsum_up(z.abs_upper() for k, z in c.support() if abs(k) > N)
    analytic = tail_formula.evaluate(N) if tail_formula is not None else 0.0
    return SeqSplit(head=head, tail_l1_upper=add_up(stored, analytic))
