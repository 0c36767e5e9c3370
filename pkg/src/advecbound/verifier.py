"""Rigorous a-posteriori error bounds for the fitted Galerkin solution.

The total bound composes three certified ingredients:

- the initial error: the l2 distance between exact and fitted coefficients
  at t = 0 (interval arithmetic) plus a tail bound for modes beyond N;
- the residual: an upper bound, valid for every time in [0, t_max], of the
  l2 norm of the defect obtained by inserting the fitted solution into the
  exact coefficient ODE system; and
- the semigroup growth estimate, which converts those two numbers into a
  sup-in-time bound e^{omega t} z0 + ((e^{omega t} - 1)/omega) r.

The residual splits into three blocks: rows |k| <= N (time-derivative plus
convolution), overflow rows N < |k| <= 2N produced by the convolution, and the
contribution of velocity coefficients beyond the split cutoff.  All three are
evaluated in outward-rounded interval arithmetic over interval lifts of the
fitted Chebyshev coefficients, vectorized over the mode/degree table.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import chebyshev, galerkin, semigroup
from ._varith import (
    vabs_upper,
    vadd_dn,
    vadd_up,
    vmul_dn,
    vmul_up,
    vprod,
    vscale,
    vsub_dn,
    vsub_up,
)
from .errors import AdvecBoundError, CoefficientMismatch, DomainError
from .galerkin import ApproxSolution
from .interval import (
    ComplexInterval,
    Interval,
    _up2,
    add_up,
    as_interval,
    div_dn,
    div_up,
    exp_enclosure,
    expm1_over,
    fsum_up,
    mul_up,
    sqrt_up,
)
from .problems import ProblemSpec
from .seq import CoeffSeq, split
from .semigroup import SemigroupCert
from .tails import TailBound

A0Like = Union[Callable[[int], list[ComplexInterval]], Sequence[ComplexInterval]]


@dataclass(frozen=True, slots=True)
class VerificationReport:
    problem: str
    N: int
    n: int
    t_max: float
    tol: float
    omega: Optional[Interval]
    initial_error: float
    residual: float
    total_error: float
    periodic_total_error: Optional[float]
    period: Optional[float]
    approx_seconds: float
    verify_seconds: float
    verified: bool
    failure: Optional[str] = None

    @property
    def exec_seconds(self) -> float:
        return self.approx_seconds + self.verify_seconds

    @property
    def time_ratio(self) -> float:
        if self.approx_seconds <= 0.0:
            return math.inf
        return self.exec_seconds / self.approx_seconds


def _a0_values(a0_exact: A0Like, N: int) -> list[ComplexInterval]:
    values = a0_exact(N) if callable(a0_exact) else list(a0_exact)
    if len(values) != 2 * N + 1:
        raise DomainError(
            f"initial coefficients must cover |k| <= {N} ({2 * N + 1} entries), "
            f"got {len(values)}"
        )
    return values


def initial_error_bound(
    a0_exact: A0Like, approx: ApproxSolution, tail: TailBound
) -> float:
    """Upper bound of the l2 initial-coefficient error plus the tail mass."""
    values = _a0_values(a0_exact, approx.N)
    squares = []
    for idx, exact in enumerate(values):
        fitted = ComplexInterval.point(chebyshev.evaluate(approx.modes[idx], 0.0))
        gap = (exact - fitted).abs_upper()
        squares.append(mul_up(gap, gap))
    grid_part = sqrt_up(fsum_up(squares))
    return add_up(grid_part, tail.evaluate(approx.N))


def initial_rounding_bound(problem: ProblemSpec, N: int) -> float:
    """Initial-error bound for the best float representation of the data.

    This is the quantity the truncation sweep plots: the interval-width l2
    mass of rounding the exact coefficients to their midpoints, plus the
    tail beyond N.  No differential equation is solved.
    """
    values = _a0_values(problem.a0_provider, N)
    squares = []
    for exact in values:
        mid = ComplexInterval.point(complex(exact.re.mid, exact.im.mid))
        gap = (exact - mid).abs_upper()
        squares.append(mul_up(gap, gap))
    grid_part = sqrt_up(fsum_up(squares))
    return add_up(grid_part, problem.tail.evaluate(N))


def _lift_tables(approx: ApproxSolution) -> tuple[np.ndarray, np.ndarray]:
    coeff = approx.coeff_matrix()
    return np.real(coeff).copy(), np.imag(coeff).copy()


def _derivative_tables(
    a_re: np.ndarray, a_im: np.ndarray, t_max: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Interval Chebyshev-derivative coefficients for every mode row.

    Vectorized over rows; performs the same directed-rounding steps as
    chebyshev.derivative_enclosure applied to point coefficients, so the
    two agree endpoint for endpoint.
    """
    rows, cols = a_re.shape
    n = cols - 1
    b_re_lo = np.zeros((rows, cols + 1))
    b_re_hi = np.zeros((rows, cols + 1))
    b_im_lo = np.zeros((rows, cols + 1))
    b_im_hi = np.zeros((rows, cols + 1))
    for l in range(n, 0, -1):
        s = 2.0 * l
        b_re_lo[:, l - 1] = vadd_dn(b_re_lo[:, l + 1], vmul_dn(a_re[:, l], s))
        b_re_hi[:, l - 1] = vadd_up(b_re_hi[:, l + 1], vmul_up(a_re[:, l], s))
        b_im_lo[:, l - 1] = vadd_dn(b_im_lo[:, l + 1], vmul_dn(a_im[:, l], s))
        b_im_hi[:, l - 1] = vadd_up(b_im_hi[:, l + 1], vmul_up(a_im[:, l], s))
    b_re_lo[:, 0], b_re_hi[:, 0] = vscale(b_re_lo[:, 0], b_re_hi[:, 0], 0.5, 0.5)
    b_im_lo[:, 0], b_im_hi[:, 0] = vscale(b_im_lo[:, 0], b_im_hi[:, 0], 0.5, 0.5)
    f_lo, f_hi = div_dn(2.0, t_max), div_up(2.0, t_max)
    d_re_lo = np.zeros((rows, cols))
    d_re_hi = np.zeros((rows, cols))
    d_im_lo = np.zeros((rows, cols))
    d_im_hi = np.zeros((rows, cols))
    d_re_lo[:, :n], d_re_hi[:, :n] = vscale(
        b_re_lo[:, :n], b_re_hi[:, :n], f_lo, f_hi
    )
    d_im_lo[:, :n], d_im_hi[:, :n] = vscale(
        b_im_lo[:, :n], b_im_hi[:, :n], f_lo, f_hi
    )
    return d_re_lo, d_re_hi, d_im_lo, d_im_hi


def _shift_rows(src: np.ndarray, j: int) -> np.ndarray:
    """Row shift with zero fill: result[k] = src[k - j]."""
    out = np.zeros_like(src)
    if j == 0:
        return src.copy()
    if j > 0:
        out[j:] = src[:-j]
    else:
        out[:j] = src[-j:]
    return out


def _extended_defect_tables(
    approx: ApproxSolution, head: CoeffSeq
) -> tuple[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray], slice]:
    """Interval tables of every defect row the truncated system produces.

    Returns (re_lo, re_hi, im_lo, im_hi) with one row per Fourier index
    k in [-(N+J), N+J], J being the widest head offset, at index k+N+J,
    together with the slice selecting the centre band |k| <= N.  Centre
    rows hold d/dt coefficients plus the convolution; rows beyond are
    convolution overflow with no derivative counterpart.
    """
    N = approx.N
    a_re, a_im = _lift_tables(approx)
    m = np.arange(-N, N + 1, dtype=float)[:, None]
    # i m a = (-m im(a)) + i (m re(a)); point inputs give one-ulp rectangles
    w_re_lo = vmul_dn(-m, a_im)
    w_re_hi = vmul_up(-m, a_im)
    w_im_lo = vmul_dn(m, a_re)
    w_im_hi = vmul_up(m, a_re)

    offsets = [j for j, _ in head.support()]
    half = N + max((abs(j) for j in offsets), default=0)
    cols = a_re.shape[1]
    acc_re_lo = np.zeros((2 * half + 1, cols))
    acc_re_hi = np.zeros((2 * half + 1, cols))
    acc_im_lo = np.zeros((2 * half + 1, cols))
    acc_im_hi = np.zeros((2 * half + 1, cols))
    centre = slice(half - N, half + N + 1)

    d_re_lo, d_re_hi, d_im_lo, d_im_hi = _derivative_tables(
        a_re, a_im, approx.t_max
    )
    acc_re_lo[centre] = d_re_lo
    acc_re_hi[centre] = d_re_hi
    acc_im_lo[centre] = d_im_lo
    acc_im_hi[centre] = d_im_hi

    for j, cj in head.support():
        p_lo, p_hi = cj.re.lo, cj.re.hi
        q_lo, q_hi = cj.im.lo, cj.im.hi
        # (w_re + i w_im)(p + i q): real part w_re p - w_im q, imag w_re q + w_im p
        rp_lo, rp_hi = vscale(w_re_lo, w_re_hi, p_lo, p_hi)
        iq_lo, iq_hi = vscale(w_im_lo, w_im_hi, q_lo, q_hi)
        rq_lo, rq_hi = vscale(w_re_lo, w_re_hi, q_lo, q_hi)
        ip_lo, ip_hi = vscale(w_im_lo, w_im_hi, p_lo, p_hi)
        c_re_lo = vsub_dn(rp_lo, iq_hi)
        c_re_hi = vsub_up(rp_hi, iq_lo)
        c_im_lo = vadd_dn(rq_lo, ip_lo)
        c_im_hi = vadd_up(rq_hi, ip_hi)
        # row k = k2 + j receives c_j * w_{k2}; k2 spans [-N, N]
        dst = slice(half + j - N, half + j + N + 1)
        acc_re_lo[dst] = vadd_dn(acc_re_lo[dst], c_re_lo)
        acc_re_hi[dst] = vadd_up(acc_re_hi[dst], c_re_hi)
        acc_im_lo[dst] = vadd_dn(acc_im_lo[dst], c_im_lo)
        acc_im_hi[dst] = vadd_up(acc_im_hi[dst], c_im_hi)
    return (acc_re_lo, acc_re_hi, acc_im_lo, acc_im_hi), centre


def _check_same_c(approx: ApproxSolution, c: CoeffSeq) -> None:
    if approx.c_used != c:
        raise CoefficientMismatch(
            "solution was built with a different velocity coefficient sequence"
        )


def residual_bound(approx: ApproxSolution, c: CoeffSeq, split_N: int) -> float:
    """Upper bound, uniform on [0, t_max], of the l2 defect of the fit."""
    _check_same_c(approx, c)
    parts = split(c, split_N)

    tables, centre = _extended_defect_tables(approx, parts.head)
    cell_upper = vabs_upper(*tables)
    row_sums = [fsum_up(cell_upper[i, :]) for i in range(cell_upper.shape[0])]
    inner = row_sums[centre]
    outer = row_sums[: centre.start] + row_sums[centre.stop :]

    # block 1: rows |k| <= N, sup over time bounded by the coefficient 1-norm
    block1 = sqrt_up(fsum_up(mul_up(s, s) for s in inner))

    # block 2: convolution overflow rows beyond |k| = N
    block2 = sqrt_up(fsum_up(mul_up(s, s) for s in outer)) if outer else 0.0

    # block 3: velocity coefficients beyond the split cutoff
    if parts.tail_l1_upper == 0.0:
        block3 = 0.0
    else:
        a_re, a_im = _lift_tables(approx)
        weights = []
        for i in range(a_re.shape[0]):
            k = abs(i - approx.N)
            coeff_sum = fsum_up(
                _up2(abs(complex(a_re[i, l], a_im[i, l])))
                for l in range(a_re.shape[1])
            )
            weights.append(mul_up(float(k), coeff_sum))
        norm = sqrt_up(fsum_up(mul_up(w, w) for w in weights))
        block3 = mul_up(parts.tail_l1_upper, norm)

    return add_up(add_up(block1, block2), block3)


def residual_pointwise_profile(
    approx: ApproxSolution,
    c: CoeffSeq,
    split_N: int,
    ts: Sequence["float | Interval"],
) -> list[float]:
    """Upper bounds of the l2 defect norm at each listed time.

    Used to confirm that the uniform residual bound dominates pointwise
    evaluations; it shares the interval defect tables with residual_bound
    but Clenshaw-evaluates every defect row at each time instead of
    summing coefficient magnitudes.  The tables are built once, so probing
    many times costs little more than probing one.
    """
    _check_same_c(approx, c)
    parts = split(c, split_N)
    (re_lo, re_hi, im_lo, im_hi), _ = _extended_defect_tables(approx, parts.head)
    rows, cols = re_lo.shape
    ivs = [as_interval(t) for t in ts]
    for t_iv in ivs:
        if t_iv.lo < 0.0 or t_iv.hi > approx.t_max:
            raise DomainError(f"evaluation time outside [0, {approx.t_max}]")
    t_lo = np.array([z.lo for z in ivs])
    t_hi = np.array([z.hi for z in ivs])
    f_lo, f_hi = div_dn(2.0, approx.t_max), div_up(2.0, approx.t_max)
    s_lo, s_hi = vprod(t_lo, t_hi, f_lo, f_hi)
    tau_lo, tau_hi = vsub_dn(s_lo, 1.0), vsub_up(s_hi, 1.0)
    tt_lo, tt_hi = vprod(tau_lo, tau_hi, 2.0, 2.0)

    # Clenshaw over all rows and all times at once; state shape (rows, nt)
    nt = t_lo.size
    shape = (rows, nt)
    b1_re_lo = np.zeros(shape)
    b1_re_hi = np.zeros(shape)
    b1_im_lo = np.zeros(shape)
    b1_im_hi = np.zeros(shape)
    b2_re_lo = np.zeros(shape)
    b2_re_hi = np.zeros(shape)
    b2_im_lo = np.zeros(shape)
    b2_im_hi = np.zeros(shape)
    for l in range(cols - 1, 0, -1):
        s_re_lo, s_re_hi = vprod(b1_re_lo, b1_re_hi, tt_lo[None, :], tt_hi[None, :])
        s_im_lo, s_im_hi = vprod(b1_im_lo, b1_im_hi, tt_lo[None, :], tt_hi[None, :])
        n_re_lo = vsub_dn(vadd_dn(re_lo[:, l : l + 1], s_re_lo), b2_re_hi)
        n_re_hi = vsub_up(vadd_up(re_hi[:, l : l + 1], s_re_hi), b2_re_lo)
        n_im_lo = vsub_dn(vadd_dn(im_lo[:, l : l + 1], s_im_lo), b2_im_hi)
        n_im_hi = vsub_up(vadd_up(im_hi[:, l : l + 1], s_im_hi), b2_im_lo)
        b2_re_lo, b2_re_hi = b1_re_lo, b1_re_hi
        b2_im_lo, b2_im_hi = b1_im_lo, b1_im_hi
        b1_re_lo, b1_re_hi = n_re_lo, n_re_hi
        b1_im_lo, b1_im_hi = n_im_lo, n_im_hi
    s_re_lo, s_re_hi = vprod(b1_re_lo, b1_re_hi, tau_lo[None, :], tau_hi[None, :])
    s_im_lo, s_im_hi = vprod(b1_im_lo, b1_im_hi, tau_lo[None, :], tau_hi[None, :])
    v_re_lo = vsub_dn(vadd_dn(re_lo[:, 0:1], s_re_lo), b2_re_hi)
    v_re_hi = vsub_up(vadd_up(re_hi[:, 0:1], s_re_hi), b2_re_lo)
    v_im_lo = vsub_dn(vadd_dn(im_lo[:, 0:1], s_im_lo), b2_im_hi)
    v_im_hi = vsub_up(vadd_up(im_hi[:, 0:1], s_im_hi), b2_im_lo)
    uppers = vabs_upper(v_re_lo, v_re_hi, v_im_lo, v_im_hi)
    squares = vmul_up(uppers, uppers)
    return [sqrt_up(fsum_up(squares[:, i])) for i in range(nt)]


def residual_pointwise_upper(
    approx: ApproxSolution, c: CoeffSeq, split_N: int, t: "float | Interval"
) -> float:
    """Upper bound of the l2 defect norm at one time (all defect rows)."""
    return residual_pointwise_profile(approx, c, split_N, [t])[0]


def _check_bound_inputs(z0: float, r: float) -> None:
    for name, value in (("initial error", z0), ("residual", r)):
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"{name} must be finite and nonnegative, got {value}")


def total_error_bound(cert: SemigroupCert, z0: float, r: float, t_max: float) -> float:
    """Upper end of e^{omega t_max} z0 + ((e^{omega t_max}-1)/omega) r."""
    _check_bound_inputs(z0, r)
    if t_max < 0.0:
        raise DomainError(f"t_max must be nonnegative, got {t_max}")
    omega_t = cert.omega * Interval.point(t_max)
    growth = exp_enclosure(omega_t)
    duhamel = expm1_over(omega_t, cert.omega, t_max)
    return add_up(mul_up(growth.hi, z0), mul_up(duhamel.hi, r))


def total_error_bound_periodic(
    cert: SemigroupCert, z0: float, r: float, t: float
) -> float:
    """Periodic refinement: growth restarts after each whole period.

    Evaluates e^{omega (t - nT)} z0 + (e^{-omega nT}/omega)(e^{omega t} - 1) r
    with n = floor(t/T) whole periods elapsed.
    """
    _check_bound_inputs(z0, r)
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    growth = semigroup.growth_factor_periodic(cert, t)
    assert cert.period is not None
    n = semigroup.periods_elapsed(t, cert.period)
    omega_t = cert.omega * Interval.point(t)
    duhamel = expm1_over(omega_t, cert.omega, t)
    nT = Interval.point(float(n)) * Interval.point(cert.period)
    damp = exp_enclosure(-(cert.omega * nT))
    return add_up(mul_up(growth.hi, z0), mul_up((damp * duhamel).hi, r))


def verify(
    problem: ProblemSpec,
    N: int,
    n: Optional[int],
    t_max: float,
    tol: float = 1e-12,
    period: Optional[float] = None,
) -> VerificationReport:
    """Full pipeline: solve, certify, and bound, with wall-clock timings.

    Any library error raised along the way is converted into a report marked
    unverified with the failing stage recorded, so parameter sweeps keep
    going; callers that want exceptions can re-raise from the report.
    """
    if period is None:
        period = problem.asserted_period
    stage = "certify"
    omega: Optional[Interval] = None
    approx_seconds = 0.0
    t_start = time.perf_counter()
    try:
        cert = semigroup.certify(problem.c, period=period)
        omega = cert.omega

        stage = "approximate solve"
        t_solve = time.perf_counter()
        a0_values = problem.a0_provider(N)
        a0_mid = np.array(
            [complex(z.re.mid, z.im.mid) for z in a0_values], dtype=complex
        )
        approx = galerkin.build_solution(problem.c, a0_mid, N, n, t_max, tol)
        approx_seconds = time.perf_counter() - t_solve

        stage = "initial error bound"
        z0 = initial_error_bound(problem.a0_provider, approx, problem.tail)

        stage = "residual bound"
        r = residual_bound(approx, problem.c, approx.N)

        stage = "total error bound"
        total = total_error_bound(cert, z0, r, t_max)
        periodic_total = None
        if period is not None:
            periodic_total = total_error_bound_periodic(cert, z0, r, t_max)
    except AdvecBoundError as exc:
        elapsed = time.perf_counter() - t_start
        return VerificationReport(
            problem=problem.name,
            N=N,
            n=n if n is not None else -1,
            t_max=t_max,
            tol=tol,
            omega=omega,
            initial_error=math.inf,
            residual=math.inf,
            total_error=math.inf,
            periodic_total_error=None,
            period=period,
            approx_seconds=approx_seconds,
            verify_seconds=max(elapsed - approx_seconds, 0.0),
            verified=False,
            failure=f"{stage}: {exc}",
        )
    elapsed = time.perf_counter() - t_start
    return VerificationReport(
        problem=problem.name,
        N=approx.N,
        n=approx.n,
        t_max=t_max,
        tol=tol,
        omega=omega,
        initial_error=z0,
        residual=r,
        total_error=total,
        periodic_total_error=periodic_total,
        period=period,
        approx_seconds=approx_seconds,
        verify_seconds=max(elapsed - approx_seconds, 0.0),
        verified=True,
    )
