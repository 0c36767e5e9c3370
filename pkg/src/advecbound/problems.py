"""Built-in and user-defined problem definitions.

A problem bundles interval enclosures of the velocity's Fourier coefficients,
a provider for interval enclosures of the initial coefficients up to any
cutoff, a tail bound for the initial mass beyond the cutoff, and an optional
user-asserted time period.

The three built-ins are classic benchmark setups:

- example1: c(x) = 0.51 + sin^2(x - 1) with a Gaussian coefficient profile
  initial state (modes damped like e^{-k^2/400} with phase e^{-ik}).
- example2: c(x) = 1 + 0.49 cos 2x with u0(x) = 3 / (5 + 4 cos x), whose
  coefficients (-2)^{-|k|} are exact in binary floating point.
- example3: c(x) = -1 + 0.3 sin 3x - 0.19 cos 2x with the same initial state
  as example2.

Decimal constants like 0.49 are parsed into enclosing intervals rather than
trusted as binary floats, so every certified quantity downstream accounts
for the representation error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional, Union

from .errors import DomainError, ParseError
from .interval import (
    ComplexInterval,
    Interval,
    div_dn,
    div_up,
    exp_enclosure,
    pi_enclosure,
    sqrt_enclosure,
    unit_complex_enclosure,
)
from .seq import CoeffSeq, validate_hermitian
from .tails import TailBound

A0Provider = Callable[[int], list[ComplexInterval]]


@dataclass(frozen=True, slots=True)
class ProblemSpec:
    name: str
    c: CoeffSeq
    a0_provider: A0Provider
    tail: TailBound
    asserted_period: Optional[float] = None


def _mirror(upper_half: list[ComplexInterval]) -> list[ComplexInterval]:
    """Assemble indices -N..N from 0..N using conjugate symmetry."""
    lower = [z.conj() for z in upper_half[1:]]
    lower.reverse()
    return lower + upper_half


def example1() -> ProblemSpec:
    """Velocity 0.51 + sin^2(x - 1); Gaussian initial coefficient profile."""
    quarter_phase = unit_complex_enclosure(Interval.point(2.0))
    c_minus2 = ComplexInterval(
        quarter_phase.re * -0.25, quarter_phase.im * -0.25
    )
    c = CoeffSeq.from_dict(
        {
            0: ComplexInterval(Interval.from_decimal("1.01"), Interval.point(0.0)),
            -2: c_minus2,
            2: c_minus2.conj(),
        }
    )

    def a0(N: int) -> list[ComplexInterval]:
        # a_k(0) = (1 / (20 sqrt(pi))) e^{-k^2/400} e^{-ik}
        prefactor = 1.0 / (sqrt_enclosure(pi_enclosure()) * 20.0)
        upper = []
        for k in range(N + 1):
            kk = float(k * k)
            exponent = -Interval(div_dn(kk, 400.0), div_up(kk, 400.0))
            gauss = prefactor * exp_enclosure(exponent)
            phase = unit_complex_enclosure(Interval.point(-float(k)))
            upper.append(ComplexInterval(gauss * phase.re, gauss * phase.im))
        return _mirror(upper)

    return ProblemSpec(
        name="example1",
        c=c,
        a0_provider=a0,
        tail=TailBound.gaussian_erfc(prefactor=0.5, scale=10.0),
    )


def _poisson_a0(N: int) -> list[ComplexInterval]:
    # coefficients of 3 / (5 + 4 cos x): a_k = (-2)^{-|k|}, exact dyadic values
    upper = []
    sign = 1.0
    value = 1.0
    for _ in range(N + 1):
        upper.append(ComplexInterval.point(complex(sign * value, 0.0)))
        sign = -sign
        value *= 0.5
    return _mirror(upper)


def example2() -> ProblemSpec:
    """Velocity 1 + 0.49 cos 2x; initial state 3 / (5 + 4 cos x)."""
    half_amp = Interval.from_decimal("0.245")
    c = CoeffSeq.from_dict(
        {
            0: ComplexInterval(Interval.point(1.0), Interval.point(0.0)),
            -2: ComplexInterval(half_amp, Interval.point(0.0)),
            2: ComplexInterval(half_amp, Interval.point(0.0)),
        }
    )
    return ProblemSpec(
        name="example2",
        c=c,
        a0_provider=_poisson_a0,
        tail=TailBound.geometric(ratio=2.0),
    )


def example3() -> ProblemSpec:
    """Velocity -1 + 0.3 sin 3x - 0.19 cos 2x; initial state as example2."""
    cos_half = Interval.from_decimal("-0.095")
    sin_half = Interval.from_decimal("-0.15")
    c = CoeffSeq.from_dict(
        {
            0: ComplexInterval(Interval.point(-1.0), Interval.point(0.0)),
            -2: ComplexInterval(cos_half, Interval.point(0.0)),
            2: ComplexInterval(cos_half, Interval.point(0.0)),
            # 0.3 sin 3x contributes 0.3/(2i) = -0.15i at k = -3
            -3: ComplexInterval(Interval.point(0.0), sin_half),
            3: ComplexInterval(Interval.point(0.0), -sin_half),
        }
    )
    return ProblemSpec(
        name="example3",
        c=c,
        a0_provider=_poisson_a0,
        tail=TailBound.geometric(ratio=2.0),
    )


_BUILTINS: Mapping[str, Callable[[], ProblemSpec]] = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def get(name_or_path: str) -> ProblemSpec:
    """Look up a built-in by name, or load a custom definition from a path."""
    if name_or_path in _BUILTINS:
        return _BUILTINS[name_or_path]()
    return custom(name_or_path)


_KEY_RE = re.compile(r"^[A-Za-z0-9_.+-]+$")


def _parse_config_text(text: str, origin: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{origin}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not _KEY_RE.match(key):
            raise ParseError(f"{origin}:{lineno}: bad key {key!r}")
        if key in entries:
            raise ParseError(f"{origin}:{lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _parse_complex_pair(value: str, where: str) -> ComplexInterval:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 2:
        raise ParseError(f"{where}: expected 're, im', got {value!r}")
    try:
        re_part = Interval.from_decimal(parts[0])
        im_part = Interval.from_decimal(parts[1])
    except DomainError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    return ComplexInterval(re_part, im_part)


def _parse_decimal(value: str, where: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ParseError(f"{where}: not a number: {value!r}") from exc


def _collect_indexed(
    entries: Mapping[str, str], prefix: str, origin: str
) -> dict[int, ComplexInterval]:
    out: dict[int, ComplexInterval] = {}
    for key, value in entries.items():
        if not key.startswith(prefix + "."):
            continue
        index_text = key[len(prefix) + 1 :]
        try:
            k = int(index_text)
        except ValueError as exc:
            raise ParseError(f"{origin}: bad index in key {key!r}") from exc
        out[k] = _parse_complex_pair(value, f"{origin}: key {key!r}")
    return out


def _parse_tail(entries: Mapping[str, str], origin: str, a0_entries: Mapping[int, ComplexInterval]) -> TailBound:
    kind = entries.get("tail.kind", "explicit_list").strip().lower()
    try:
        if kind == "gaussian_erfc":
            return TailBound.gaussian_erfc(
                prefactor=_parse_decimal(entries["tail.prefactor"], origin),
                scale=_parse_decimal(entries["tail.scale"], origin),
            )
        if kind == "geometric":
            return TailBound.geometric(
                ratio=_parse_decimal(entries["tail.ratio"], origin)
            )
        if kind == "custom_upper":
            return TailBound.custom_upper(
                value=_parse_decimal(entries["tail.value"], origin)
            )
        if kind == "explicit_list":
            listed = tuple(
                (k, z.abs_upper()) for k, z in sorted(a0_entries.items())
            )
            return TailBound.explicit_list(listed)
    except KeyError as exc:
        raise ParseError(f"{origin}: tail kind {kind!r} is missing {exc}") from exc
    except DomainError as exc:
        raise ParseError(f"{origin}: {exc}") from exc
    raise ParseError(f"{origin}: unknown tail.kind {kind!r}")


def custom(config: Union[str, Path, Mapping[str, str]]) -> ProblemSpec:
    """Build a problem from a flat key-value definition.

    Accepts a path to a text file (or the mapping itself) with entries:

        name = my-problem
        c.<k> = <re decimal>, <im decimal>     # velocity coefficients
        a0.<k> = <re decimal>, <im decimal>    # initial coefficients
        tail.kind = explicit_list | geometric | gaussian_erfc | custom_upper
        tail.ratio / tail.prefactor / tail.scale / tail.value = <decimal>
        period = <decimal>                     # optional asserted period

    Decimal strings become enclosing intervals, so entered values are honored
    exactly, not as their nearest binary floats.
    """
    if isinstance(config, Mapping):
        entries = dict(config)
        origin = "<config>"
    else:
        path = Path(config)
        origin = str(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read problem file {origin}: {exc}") from exc
        entries = _parse_config_text(text, origin)

    c_entries = _collect_indexed(entries, "c", origin)
    if not c_entries:
        raise ParseError(f"{origin}: no velocity coefficients (keys 'c.<k>')")
    a0_entries = _collect_indexed(entries, "a0", origin)
    if not a0_entries:
        raise ParseError(f"{origin}: no initial coefficients (keys 'a0.<k>')")

    known_prefixes = ("c.", "a0.", "tail.")
    for key in entries:
        if key in ("name", "period"):
            continue
        if not key.startswith(known_prefixes):
            raise ParseError(f"{origin}: unknown key {key!r}")

    c = CoeffSeq.from_dict(c_entries)
    validate_hermitian(c, f"{origin}: velocity coefficients")

    tail = _parse_tail(entries, origin, a0_entries)
    period = None
    if "period" in entries:
        period = _parse_decimal(entries["period"], origin)
        if period <= 0.0:
            raise ParseError(f"{origin}: period must be positive, got {period}")

    def a0(N: int) -> list[ComplexInterval]:
        zero = ComplexInterval.zero()
        return [a0_entries.get(k, zero) for k in range(-N, N + 1)]

    return ProblemSpec(
        name=str(entries.get("name", "custom")),
        c=c,
        a0_provider=a0,
        tail=tail,
        asserted_period=period,
    )
