"""Rigorous tail bounds for coefficient mass beyond a truncation cutoff.

Each kind packages a closed-form upper bound for the l2 mass of the exact
initial coefficients with |k| > N, evaluated with outward rounding so the
result is a true upper bound for every N:

- gaussian_erfc: prefactor * sqrt(erfc(N / (scale * sqrt(2)))), the tail of a
  Gaussian coefficient profile.
- geometric: sqrt(2 / (ratio^2 - 1)) * ratio^(-N), the tail of |a_k| = r^(-|k|).
- explicit_list: finitely many known |a_k| upper bounds, zero beyond them.
- custom_upper: a constant the user asserts on their own authority.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .interval import (
    _up,
    div_dn,
    div_up,
    erfc_upper,
    fsum_up,
    mul_dn,
    mul_up,
    sqrt_up,
    sub_dn,
)

_KINDS = ("gaussian_erfc", "geometric", "explicit_list", "custom_upper")


def _pow_dn(base: float, n: int) -> float:
    p = 1.0
    for _ in range(n):
        p = mul_dn(p, base)
    return p


@dataclass(frozen=True, slots=True)
class TailBound:
    kind: str
    prefactor: float = 0.0
    scale: float = 0.0
    ratio: float = 0.0
    value: float = 0.0
    entries: tuple[tuple[int, float], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError(f"unknown tail bound kind {self.kind!r}")

    @staticmethod
    def gaussian_erfc(prefactor: float, scale: float) -> "TailBound":
        if prefactor < 0.0 or scale <= 0.0:
            raise DomainError("gaussian_erfc needs prefactor >= 0 and scale > 0")
        return TailBound(kind="gaussian_erfc", prefactor=prefactor, scale=scale)

    @staticmethod
    def geometric(ratio: float) -> "TailBound":
        if ratio <= 1.0:
            raise DomainError(f"geometric tail needs ratio > 1, got {ratio}")
        return TailBound(kind="geometric", ratio=ratio)

    @staticmethod
    def explicit_list(entries: "tuple[tuple[int, float], ...] | list") -> "TailBound":
        frozen = tuple((int(k), float(a)) for k, a in entries)
        if any(a < 0.0 for _, a in frozen):
            raise DomainError("explicit_list magnitudes must be nonnegative")
        return TailBound(kind="explicit_list", entries=frozen)

    @staticmethod
    def custom_upper(value: float) -> "TailBound":
        if value < 0.0 or not math.isfinite(value):
            raise DomainError(f"custom tail bound must be finite and >= 0, got {value}")
        return TailBound(kind="custom_upper", value=value)

    def evaluate(self, N: int) -> float:
        """Upper bound of the l2 coefficient mass beyond |k| = N."""
        if N < 0:
            raise DomainError(f"cutoff must be nonnegative, got {N}")
        if self.kind == "gaussian_erfc":
            # rounding x down makes erfc(x), and hence the bound, larger
            sqrt2_up = _up(math.sqrt(2.0))
            x_dn = div_dn(float(N), mul_up(self.scale, sqrt2_up))
            return mul_up(self.prefactor, sqrt_up(erfc_upper(x_dn)))
        if self.kind == "geometric":
            den = sub_dn(mul_dn(self.ratio, self.ratio), 1.0)
            pref = sqrt_up(div_up(2.0, den))
            return div_up(pref, _pow_dn(self.ratio, N))
        if self.kind == "explicit_list":
            squares = [mul_up(a, a) for k, a in self.entries if abs(k) > N]
            if not squares:
                return 0.0
            return sqrt_up(fsum_up(squares))
        return self.value
