"""Outward-rounded interval arithmetic on IEEE-754 doubles.

Directed rounding is emulated with ``math.nextafter``: every endpoint that may
carry a rounding error is nudged one ulp outward after the operation.  IEEE
basic operations (+, -, *, /, sqrt) are correctly rounded, so a single ulp of
slack per endpoint is enough to restore containment.  Library transcendentals
(exp, expm1, sin, cos) are only assumed faithful to within one ulp, so their
endpoints get two ulps of slack.

A result endpoint equal to zero is left unnudged when the operation cannot
have committed a rounding error there: a sum or difference of doubles that
rounds to zero is exactly zero, and a product or quotient is exactly zero
whenever an input is.  This keeps ``x - x`` and scaling of exact zeros tight,
which the residual computation relies on.

All containers are immutable; operations return fresh objects and never touch
global floating-point state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DivByZeroInterval, DomainError, ExpOverflow

_INF = math.inf

# exp overflows a double just above this argument
_EXP_ARG_MAX = 709.0


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up2(x: float) -> float:
    return math.nextafter(math.nextafter(x, _INF), _INF)


def _dn2(x: float) -> float:
    return math.nextafter(math.nextafter(x, -_INF), -_INF)


def add_up(a: float, b: float) -> float:
    s = a + b
    return s if s == 0.0 else _up(s)


def add_dn(a: float, b: float) -> float:
    s = a + b
    return s if s == 0.0 else _dn(s)


def sub_up(a: float, b: float) -> float:
    s = a - b
    return s if s == 0.0 else _up(s)


def sub_dn(a: float, b: float) -> float:
    s = a - b
    return s if s == 0.0 else _dn(s)


def mul_up(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    r = a * b
    if r == 0.0:
        # product of nonzero operands underflowed; a negative true product
        # admits 0.0 as upper bound, a positive one needs the smallest double
        return 5e-324 if (a > 0.0) == (b > 0.0) else 0.0
    return _up(r)


def mul_dn(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    r = a * b
    if r == 0.0:
        return 0.0 if (a > 0.0) == (b > 0.0) else -5e-324
    return _dn(r)


def div_up(a: float, b: float) -> float:
    if b == 0.0:
        raise DivByZeroInterval("division by zero scalar")
    if a == 0.0:
        return 0.0
    r = a / b
    if r == 0.0:
        return 5e-324 if (a > 0.0) == (b > 0.0) else 0.0
    return _up(r)


def div_dn(a: float, b: float) -> float:
    if b == 0.0:
        raise DivByZeroInterval("division by zero scalar")
    if a == 0.0:
        return 0.0
    r = a / b
    if r == 0.0:
        return 0.0 if (a > 0.0) == (b > 0.0) else -5e-324
    return _dn(r)


def sqrt_up(a: float) -> float:
    if a < 0.0:
        raise DomainError(f"sqrt of negative number {a}")
    r = math.sqrt(a)
    return r if r == 0.0 else _up(r)


def sqrt_dn(a: float) -> float:
    if a < 0.0:
        raise DomainError(f"sqrt of negative number {a}")
    r = math.sqrt(a)
    return r if r == 0.0 else max(0.0, _dn(r))


def fsum_up(xs: Iterable[float]) -> float:
    """Upper bound for an exact sum: fsum is correctly rounded, then one ulp up."""
    s = math.fsum(xs)
    return s if s == 0.0 else _up(s)


def fsum_dn(xs: Iterable[float]) -> float:
    s = math.fsum(xs)
    return s if s == 0.0 else _dn(s)


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed real interval [lo, hi] with finite double endpoints."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise DomainError("interval endpoint is NaN")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise DomainError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def from_decimal(text: str) -> "Interval":
        """Tightest double interval containing the decimal literal ``text``."""
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a decimal number: {text!r}") from exc
        try:
            x = float(value)
        except OverflowError as exc:
            raise DomainError(f"decimal literal overflows a double: {text!r}") from exc
        if not math.isfinite(x):
            raise DomainError(f"decimal literal overflows a double: {text!r}")
        fx = Fraction(x)
        if fx == value:
            return Interval(x, x)
        if fx < value:
            return Interval(x, _up(x))
        return Interval(_dn(x), x)

    @staticmethod
    def hull(a: "Interval", b: "Interval") -> "Interval":
        return Interval(min(a.lo, b.lo), max(a.hi, b.hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "IntervalLike") -> "Interval":
        if isinstance(other, ComplexInterval):
            return NotImplemented
        other = as_interval(other)
        return Interval(add_dn(self.lo, other.lo), add_up(self.hi, other.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "IntervalLike") -> "Interval":
        if isinstance(other, ComplexInterval):
            return NotImplemented
        other = as_interval(other)
        return Interval(sub_dn(self.lo, other.hi), sub_up(self.hi, other.lo))

    def __rsub__(self, other: "IntervalLike") -> "Interval":
        return as_interval(other) - self

    def __mul__(self, other: "IntervalLike") -> "Interval":
        if isinstance(other, ComplexInterval):
            return NotImplemented
        other = as_interval(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(mul_dn(a, c), mul_dn(a, d), mul_dn(b, c), mul_dn(b, d))
        hi = max(mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other: "IntervalLike") -> "Interval":
        if isinstance(other, ComplexInterval):
            return NotImplemented
        other = as_interval(other)
        if other.lo <= 0.0 <= other.hi:
            raise DivByZeroInterval(f"divisor interval [{other.lo}, {other.hi}] contains zero")
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(div_dn(a, c), div_dn(a, d), div_dn(b, c), div_dn(b, d))
        hi = max(div_up(a, c), div_up(a, d), div_up(b, c), div_up(b, d))
        return Interval(lo, hi)

    def __rtruediv__(self, other: "IntervalLike") -> "Interval":
        return as_interval(other) / self

    def sqr(self) -> "Interval":
        """Enclosure of x**2, tighter than self*self when 0 is inside."""
        m = max(abs(self.lo), abs(self.hi))
        hi = mul_up(m, m)
        if self.lo <= 0.0 <= self.hi:
            return Interval(0.0, hi)
        d = min(abs(self.lo), abs(self.hi))
        # mul_dn can nudge an underflowed product below zero; a square never is
        return Interval(max(0.0, mul_dn(d, d)), hi)

    def abs_enclosure(self) -> "Interval":
        if self.lo <= 0.0 <= self.hi:
            return Interval(0.0, max(-self.lo, self.hi))
        if self.hi < 0.0:
            return Interval(-self.hi, -self.lo)
        return Interval(self.lo, self.hi)

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


IntervalLike = Union[Interval, float, int]


def as_interval(x: IntervalLike) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(float(x))


@dataclass(frozen=True, slots=True)
class ComplexInterval:
    """Rectangle re x im in the complex plane, both sides real intervals."""

    re: Interval
    im: Interval

    @staticmethod
    def point(z: complex) -> "ComplexInterval":
        z = complex(z)
        return ComplexInterval(Interval.point(z.real), Interval.point(z.imag))

    @staticmethod
    def zero() -> "ComplexInterval":
        return ComplexInterval(Interval.point(0.0), Interval.point(0.0))

    def contains(self, z: complex) -> bool:
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def encloses(self, other: "ComplexInterval") -> bool:
        return self.re.encloses(other.re) and self.im.encloses(other.im)

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def __add__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        other = as_complex_interval(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __sub__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        other = as_complex_interval(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        return as_complex_interval(other) - self

    def __mul__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        other = as_complex_interval(other)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return ComplexInterval(re, im)

    __rmul__ = __mul__

    def __truediv__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        other = as_complex_interval(other)
        den = other.re.sqr() + other.im.sqr()
        if den.lo <= 0.0:
            raise DivByZeroInterval("divisor rectangle touches zero modulus")
        num = self * other.conj()
        return ComplexInterval(num.re / den, num.im / den)

    def __rtruediv__(self, other: "ComplexIntervalLike") -> "ComplexInterval":
        return as_complex_interval(other) / self

    def abs_upper(self) -> float:
        mr = max(abs(self.re.lo), abs(self.re.hi))
        mi = max(abs(self.im.lo), abs(self.im.hi))
        return sqrt_up(add_up(mul_up(mr, mr), mul_up(mi, mi)))

    def abs_lower(self) -> float:
        r = self.re.abs_enclosure().lo
        i = self.im.abs_enclosure().lo
        # directed rounding can push an underflowed sum of squares below zero
        return sqrt_dn(max(0.0, add_dn(mul_dn(r, r), mul_dn(i, i))))

    def abs_enclosure(self) -> Interval:
        return Interval(self.abs_lower(), self.abs_upper())

    def __repr__(self) -> str:
        return f"ComplexInterval({self.re!r}, {self.im!r})"


ComplexIntervalLike = Union[ComplexInterval, Interval, complex, float, int]


def as_complex_interval(z: ComplexIntervalLike) -> ComplexInterval:
    if isinstance(z, ComplexInterval):
        return z
    if isinstance(z, Interval):
        return ComplexInterval(z, Interval.point(0.0))
    return ComplexInterval.point(complex(z))


def pi_enclosure() -> Interval:
    return Interval(_dn(math.pi), _up(math.pi))


def sqrt_enclosure(x: Interval) -> Interval:
    if x.lo < 0.0:
        raise DomainError(f"sqrt domain requires lo >= 0, got {x.lo}")
    return Interval(sqrt_dn(x.lo), sqrt_up(x.hi))


def exp_enclosure(x: Interval) -> Interval:
    """Enclosure of exp over the interval; exp is increasing so endpoints do it."""
    if x.hi > _EXP_ARG_MAX:
        raise ExpOverflow(f"exp argument upper bound {x.hi} would overflow")
    lo = max(0.0, _dn2(math.exp(x.lo)))
    hi = _up2(math.exp(x.hi))
    return Interval(lo, hi)


def expm1_enclosure(x: Interval) -> Interval:
    if x.hi > _EXP_ARG_MAX:
        raise ExpOverflow(f"expm1 argument upper bound {x.hi} would overflow")
    lo = 0.0 if x.lo == 0.0 else max(-1.0, _dn2(math.expm1(x.lo)))
    hi = 0.0 if x.hi == 0.0 else _up2(math.expm1(x.hi))
    return Interval(lo, hi)


def expm1_over(omega_t: Interval, omega: Interval, t: float) -> Interval:
    """Enclosure of (exp(omega*t) - 1) / omega for omega in its interval.

    ``omega_t`` is the caller's enclosure of the product omega*t.  The map
    omega -> (exp(omega*t) - 1)/omega is increasing in omega for t >= 0, with
    limit t at omega -> 0, so endpoint evaluation gives the enclosure.
    """
    if omega.lo < 0.0:
        raise DomainError(f"growth rate must be nonnegative, got lower bound {omega.lo}")
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if omega_t.hi > _EXP_ARG_MAX:
        raise ExpOverflow(f"exp argument upper bound {omega_t.hi} would overflow")
    if t == 0.0:
        return Interval(0.0, 0.0)
    if omega.hi == 0.0:
        # the quantity is the integral of exp(omega*s) over [0, t], exactly t here
        return Interval(t, t)
    if omega.lo == 0.0:
        lo = _dn(t)
    else:
        num_lo = max(0.0, _dn2(math.expm1(omega_t.lo)))
        lo = max(0.0, div_dn(num_lo, omega.lo))
    hi = div_up(_up2(math.expm1(omega_t.hi)), omega.hi)
    return Interval(min(lo, hi), max(lo, hi))


def erfc_upper(x: float) -> float:
    """Rigorous upper bound for erfc(x), x >= 0.

    Uses the classical tail bound erfc(x) <= exp(-x^2) / (x sqrt(pi)) for
    x >= 1 and the trivial bound 1 below that.
    """
    if x < 0.0:
        raise DomainError(f"erfc tail bound requires x >= 0, got {x}")
    if x < 1.0:
        return 1.0
    neg_x_sq = -mul_dn(x, x)
    num = _up2(math.exp(neg_x_sq))
    sqrt_pi_dn = sqrt_dn(_dn(math.pi))
    den = mul_dn(x, sqrt_pi_dn)
    return min(1.0, div_up(num, den))


def _sin_cos_enclosure(x: Interval, fn, half: float) -> Interval:
    """Shared core for sin/cos: endpoint values plus interior critical points.

    Critical points sit at (k + half)*pi with value (-1)**k: half = 1/2 for
    sin, half = 0 for cos.  Any critical point whose pi-enclosure overlaps the
    argument interval widens the result to the corresponding extreme, which
    can only make the enclosure larger, never unsound.
    """
    if x.hi - x.lo >= 7.0 or max(abs(x.lo), abs(x.hi)) > 1e15:
        return Interval(-1.0, 1.0)
    lo_v = min(_dn2(fn(x.lo)), _dn2(fn(x.hi)))
    hi_v = max(_up2(fn(x.lo)), _up2(fn(x.hi)))
    pi_iv = pi_enclosure()
    lo_k = math.floor(x.lo / math.pi) - 2
    hi_k = math.ceil(x.hi / math.pi) + 2
    for k in range(lo_k, hi_k + 1):
        c = Interval.point(k + half) * pi_iv
        if c.hi < x.lo or c.lo > x.hi:
            continue
        if k % 2 == 0:
            hi_v = 1.0
        else:
            lo_v = -1.0
    return Interval(max(-1.0, lo_v), min(1.0, hi_v))


def sin_enclosure(x: Interval) -> Interval:
    return _sin_cos_enclosure(x, math.sin, 0.5)


def cos_enclosure(x: Interval) -> Interval:
    return _sin_cos_enclosure(x, math.cos, 0.0)


def unit_complex_enclosure(theta: IntervalLike) -> ComplexInterval:
    """Rectangle containing exp(i*theta) = cos(theta) + i sin(theta)."""
    t = as_interval(theta)
    return ComplexInterval(cos_enclosure(t), sin_enclosure(t))


def sum_enclosure(intervals: Iterable[Interval]) -> Interval:
    """Tight enclosure of a sum of intervals via correctly rounded fsum."""
    los: list[float] = []
    his: list[float] = []
    for iv in intervals:
        los.append(iv.lo)
        his.append(iv.hi)
    return Interval(fsum_dn(los), fsum_up(his))
