"""Adaptive Dormand-Prince 5(4) integration with dense output.

This is the classical explicit embedded pair behind ode45: seven stages with
the first-same-as-last property, a fifth-order propagated solution, a
fourth-order error estimator, PI step-size control, and the standard
quartic-in-theta continuous extension for evaluation between steps.

A hand-rolled integrator is used instead of a library one because the
verification pipeline benefits from driving tolerances toward the roundoff
floor, below the relative-tolerance floor general-purpose libraries enforce.
Library integrators still appear in the test suite as independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, StiffnessError

# nodes and stage coefficients of the Dormand-Prince 5(4) pair
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# error weights: difference between the 5th- and 4th-order solutions
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# weights of the continuous extension's theta^2-and-up term
_D = np.array(
    [
        -12715105075 / 11282082432,
        0.0,
        87487479700 / 32700410799,
        -10690763975 / 1880347072,
        701980252875 / 199316789632,
        -1453857185 / 822651844,
        69997945 / 29380423,
    ]
)

_SAFETY = 0.9
_BETA = 0.04
_EXPO1 = 0.2 - 0.75 * _BETA
_MAX_GROW = 10.0
_MAX_SHRINK = 5.0
_MAX_STEPS = 10_000_000

RHS = Callable[[float, np.ndarray], np.ndarray]


def _rms(v: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.abs(v) ** 2)))


def _stages(f: RHS, t: float, y: np.ndarray, h: float, k1: np.ndarray) -> list[np.ndarray]:
    k = [k1]
    for i in range(1, 7):
        yi = y + h * sum(aij * kj for aij, kj in zip(_A[i], k))
        k.append(f(t + _C[i] * h, yi))
    return k


def _dense_coeffs(
    y_old: np.ndarray, y_new: np.ndarray, h: float, k: Sequence[np.ndarray]
) -> np.ndarray:
    dy = y_new - y_old
    r1 = y_old
    r2 = dy
    r3 = h * k[0] - dy
    r4 = dy - h * k[6] - r3
    r5 = h * sum(d * ki for d, ki in zip(_D, k))
    return np.stack([r1, r2, r3, r4, r5])


def _dense_eval(rcont: np.ndarray, theta: float) -> np.ndarray:
    r1, r2, r3, r4, r5 = rcont
    return r1 + theta * (r2 + (1.0 - theta) * (r3 + theta * (r4 + (1.0 - theta) * r5)))


def _initial_step(
    f: RHS, t0: float, y0: np.ndarray, f0: np.ndarray, t_end: float, rtol: float, atol: float
) -> float:
    span = t_end - t0
    sc = atol + rtol * np.abs(y0)
    d0 = _rms(y0 / sc)
    d1 = _rms(f0 / sc)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + h0 * f0
    f1 = f(t0 + h0, y1)
    d2 = _rms((f1 - f0) / sc) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, span)


@dataclass(frozen=True, eq=False)
class DenseTrajectory:
    """Piecewise interpolant of an accepted-step sequence on [t0, t_end]."""

    t0: float
    t_end: float
    ts: np.ndarray
    rconts: np.ndarray
    n_steps: int
    n_rhs_evals: int

    def __call__(self, t: float) -> np.ndarray:
        if not self.t0 <= t <= self.t_end:
            raise DomainError(f"query time {t} outside [{self.t0}, {self.t_end}]")
        idx = int(np.searchsorted(self.ts, t, side="right")) - 1
        idx = min(max(idx, 0), self.n_steps - 1)
        h = self.ts[idx + 1] - self.ts[idx]
        theta = (t - self.ts[idx]) / h if h > 0.0 else 0.0
        return _dense_eval(self.rconts[idx], theta)

    def at_times(self, ts: Sequence[float]) -> np.ndarray:
        return np.stack([self(float(t)) for t in ts])


@dataclass(frozen=True, eq=False)
class SolveResult:
    t_end: float
    y_end: np.ndarray
    n_steps: int
    n_rhs_evals: int
    trajectory: Optional[DenseTrajectory]
    t_hit: Optional[np.ndarray]
    y_hit: Optional[np.ndarray]


def solve(
    f: RHS,
    t0: float,
    t_end: float,
    y0: Sequence[complex],
    rtol: float,
    atol: float,
    t_eval: Optional[Sequence[float]] = None,
    max_steps: int = _MAX_STEPS,
) -> SolveResult:
    """Integrate y' = f(t, y) from t0 to t_end with error-controlled steps.

    With t_eval the interpolant is evaluated on the fly at those times and
    only the values are kept; without it every step's dense coefficients are
    stored so the result supports arbitrary later queries.
    """
    if t_end <= t0:
        raise DomainError(f"need t_end > t0, got [{t0}, {t_end}]")
    if rtol <= 0.0 or atol < 0.0:
        raise DomainError("tolerances must be positive (rtol) and nonnegative (atol)")
    y = np.asarray(y0, dtype=complex).copy()
    dim = y.size

    keep_segments = t_eval is None
    if t_eval is not None:
        queries = np.asarray(t_eval, dtype=float)
        if queries.size and (queries.min() < t0 or queries.max() > t_end):
            raise DomainError("t_eval points must lie inside [t0, t_end]")
        order = np.argsort(queries, kind="stable")
        hits = np.empty((queries.size, dim), dtype=complex)
        next_q = 0
    ts: list[float] = [t0]
    rconts: list[np.ndarray] = []

    t = t0
    k1 = f(t, y)
    n_evals = 1
    h = _initial_step(f, t0, y, k1, t_end, rtol, atol)
    n_evals += 1
    facold = 1e-4
    n_steps = 0
    rejected = False

    while t < t_end:
        if n_steps >= max_steps:
            raise StiffnessError(f"step budget {max_steps} exhausted at t={t}")
        last = h >= t_end - t
        if last:
            h = t_end - t
        elif h <= abs(t) * 1e-15 or h <= 1e-290:
            raise StiffnessError(f"step size underflow at t={t} (h={h})")
        k = _stages(f, t, y, h, k1)
        n_evals += 6
        y_new = y + h * sum(bj * kj for bj, kj in zip(_A[6], k[:6]))
        k7 = f(t + h, y_new)
        n_evals += 1
        k.append(k7)
        err_vec = h * sum(ej * kj for ej, kj in zip(_E, k))
        sc = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = _rms(err_vec / sc)

        fac11 = err**_EXPO1 if err > 0.0 else 0.0
        fac = fac11 / (facold**_BETA)
        fac = max(1.0 / _MAX_GROW, min(_MAX_SHRINK, fac / _SAFETY))
        h_new = h / fac

        if err <= 1.0:
            facold = max(err, 1e-4)
            rcont = _dense_coeffs(y, y_new, h, k)
            if keep_segments:
                rconts.append(rcont)
            else:
                while next_q < queries.size and queries[order[next_q]] <= t + h:
                    tq = queries[order[next_q]]
                    theta = (tq - t) / h
                    hits[order[next_q]] = _dense_eval(rcont, theta)
                    next_q += 1
            t = t_end if last else t + h
            ts.append(t)
            y = y_new
            k1 = k7
            n_steps += 1
            if rejected:
                h_new = min(h_new, h)
            rejected = False
        else:
            rejected = True
            h_new = h / min(_MAX_SHRINK, fac11 / _SAFETY)
        h = h_new

    trajectory = None
    t_hit = None
    y_hit = None
    if keep_segments:
        trajectory = DenseTrajectory(
            t0=t0,
            t_end=t,
            ts=np.array(ts),
            rconts=np.stack(rconts) if rconts else np.zeros((0, 5, dim), dtype=complex),
            n_steps=n_steps,
            n_rhs_evals=n_evals,
        )
    else:
        # a query equal to t_end can be left over by floating-point drift
        while next_q < queries.size:
            hits[order[next_q]] = y
            next_q += 1
        t_hit = queries
        y_hit = hits
    return SolveResult(
        t_end=t,
        y_end=y,
        n_steps=n_steps,
        n_rhs_evals=n_evals,
        trajectory=trajectory,
        t_hit=t_hit,
        y_hit=y_hit,
    )


def step_once(
    f: RHS, t: float, y: np.ndarray, h: float, k1: Optional[np.ndarray] = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One fixed step: returns (y_new, error_estimate_vector, k7).

    Exposed for convergence-order measurements with the adaptive controller
    switched off.
    """
    if k1 is None:
        k1 = f(t, y)
    k = _stages(f, t, y, h, k1)
    y_new = y + h * sum(bj * kj for bj, kj in zip(_A[6], k[:6]))
    k7 = f(t + h, y_new)
    k.append(k7)
    err_vec = h * sum(ej * kj for ej, kj in zip(_E, k))
    return y_new, err_vec, k7
