"""Command-line front end.

Verbs:

- verify: run the full pipeline for every combination of the given N, n,
  t_max values, print a results table, optionally write a JSON report.
- sweep-initial: initial-error bound versus N, written as CSV.
- sweep-residual: residual bound versus Chebyshev degree and time span, CSV.
- export-grid: the real part of the approximate solution on a space-time
  grid, CSV with x values in the header row and times in the first column.
- list-problems: names of the built-in problems.

Exit status is 0 only if every requested verification succeeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import chebyshev, galerkin, verifier
from .errors import AdvecBoundError
from .galerkin import ApproxSolution
from .interval import Interval
from .problems import ProblemSpec, builtin_names, get as get_problem
from .verifier import VerificationReport

REPORT_SCHEMA = "advecbound-report-v1"


@dataclass(frozen=True, slots=True)
class RunConfig:
    problem: str
    N_list: tuple[int, ...]
    n_list: tuple[Optional[int], ...]
    t_max_list: tuple[float, ...]
    tol: float = 1e-12
    period: Optional[float] = None
    report_path: Optional[str] = None
    jobs: int = 1

    def tuples(self) -> list[tuple[int, Optional[int], float]]:
        combos = [
            (N, n, t_max)
            for N in self.N_list
            for n in self.n_list
            for t_max in self.t_max_list
        ]
        combos.sort(key=lambda c: (c[2], c[0], -1 if c[1] is None else c[1]))
        return combos


def _parse_int_list(text: str) -> tuple[int, ...]:
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ":" in chunk:
            parts = chunk.split(":")
            if len(parts) not in (2, 3):
                raise argparse.ArgumentTypeError(f"bad range {chunk!r}")
            start, stop = int(parts[0]), int(parts[1])
            step = int(parts[2]) if len(parts) == 3 else 1
            values.extend(range(start, stop + 1, step))
        else:
            values.append(int(chunk))
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"need nonnegative integers, got {text!r}")
    return tuple(values)


def _parse_degree_list(text: str) -> tuple[Optional[int], ...]:
    if text.strip().lower() == "auto":
        return (None,)
    return _parse_int_list(text)


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(chunk) for chunk in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc
    if not values or any(not math.isfinite(v) or v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"need positive numbers, got {text!r}")
    return values


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"grid must look like 200x100, got {text!r}")
    nx, nt = int(parts[0]), int(parts[1])
    if nx < 2 or nt < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per axis")
    return nx, nt


def _report_row(report: VerificationReport) -> dict:
    return {
        "problem": report.problem,
        "N": report.N,
        "n": report.n,
        "t_max": report.t_max,
        "tol": report.tol,
        "omega_lo": None if report.omega is None else report.omega.lo,
        "omega_hi": None if report.omega is None else report.omega.hi,
        "initial_error": report.initial_error,
        "residual": report.residual,
        "total_error": report.total_error,
        "periodic_total_error": report.periodic_total_error,
        "period": report.period,
        "approx_seconds": report.approx_seconds,
        "verify_seconds": report.verify_seconds,
        "verified": report.verified,
        "failure": report.failure,
    }


def _row_to_report(row: dict) -> VerificationReport:
    omega = None
    if row.get("omega_lo") is not None:
        omega = Interval(row["omega_lo"], row["omega_hi"])
    return VerificationReport(
        problem=row["problem"],
        N=row["N"],
        n=row["n"],
        t_max=row["t_max"],
        tol=row["tol"],
        omega=omega,
        initial_error=row["initial_error"],
        residual=row["residual"],
        total_error=row["total_error"],
        periodic_total_error=row.get("periodic_total_error"),
        period=row.get("period"),
        approx_seconds=row["approx_seconds"],
        verify_seconds=row["verify_seconds"],
        verified=row["verified"],
        failure=row.get("failure"),
    )


def write_report(reports: Sequence[VerificationReport], path: str) -> None:
    payload = {
        "schema": REPORT_SCHEMA,
        "rows": [_report_row(r) for r in reports],
    }
    Path(path).write_text(json.dumps(payload, indent=2, allow_nan=True) + "\n")


def load_report(path: str) -> list[VerificationReport]:
    payload = json.loads(Path(path).read_text())
    if payload.get("schema") != REPORT_SCHEMA:
        raise AdvecBoundError(f"unexpected report schema in {path}")
    return [_row_to_report(row) for row in payload["rows"]]


def _format_table(reports: Sequence[VerificationReport]) -> str:
    headers = (
        "t_max",
        "N",
        "n",
        "initial error",
        "residual",
        "error",
        "app. time",
        "exec. time",
        "ratio",
    )
    rows = []
    for r in reports:
        if r.verified:
            rows.append(
                (
                    f"{r.t_max:g}",
                    str(r.N),
                    str(r.n),
                    f"{r.initial_error:.4e}",
                    f"{r.residual:.4e}",
                    f"{r.total_error:.4e}",
                    f"{r.approx_seconds:.4f}",
                    f"{r.exec_seconds:.4f}",
                    f"{r.time_ratio:.3f}",
                )
            )
        else:
            rows.append(
                (
                    f"{r.t_max:g}",
                    str(r.N),
                    str(r.n),
                    "-",
                    "-",
                    f"unverified ({r.failure})",
                    "-",
                    "-",
                    "-",
                )
            )
    widths = [
        max(len(headers[i]), max((len(row[i]) for row in rows), default=0))
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def _verify_tuple(args: tuple[str, int, Optional[int], float, float, Optional[float]]) -> VerificationReport:
    problem_ref, N, n, t_max, tol, period = args
    problem = get_problem(problem_ref)
    return verifier.verify(problem, N, n, t_max, tol=tol, period=period)


def run(config: RunConfig) -> int:
    """Run every (N, n, t_max) combination; return a process exit status."""
    combos = config.tuples()
    work = [
        (config.problem, N, n, t_max, config.tol, config.period)
        for N, n, t_max in combos
    ]
    if config.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_verify_tuple, work))
    else:
        reports = [_verify_tuple(item) for item in work]
    print(_format_table(reports))
    if config.report_path:
        write_report(reports, config.report_path)
    failures = [r for r in reports if not r.verified]
    for r in failures:
        print(
            f"verification failed for N={r.N} n={r.n} t_max={r.t_max}: {r.failure}",
            file=sys.stderr,
        )
    return 1 if failures else 0


def export_grid(approx: ApproxSolution, nx: int, nt: int) -> tuple[list[list[float]], float]:
    """Real part of the solution field on a uniform space-time grid.

    Returns (rows, imag_defect) where rows[0] is the x header prefixed by a
    label slot and each later row starts with its time; imag_defect is the
    largest imaginary part met while evaluating, a conjugate-symmetry
    diagnostic that should sit at roundoff scale for real solutions.
    """
    if nx < 2 or nt < 2:
        raise AdvecBoundError("grid needs nx >= 2 and nt >= 2")
    N = approx.N
    xs = 2.0 * np.pi * np.arange(nx) / nx
    ts = np.linspace(0.0, approx.t_max, nt)
    k = np.arange(-N, N + 1)
    phases = np.exp(1j * np.outer(k, xs))
    coeff_rows = np.stack(
        [chebyshev.evaluate_many(s, ts) for s in approx.modes]
    )
    field = coeff_rows.T @ phases
    imag_defect = float(np.max(np.abs(field.imag))) if field.size else 0.0
    rows: list[list[float]] = [[float("nan"), *map(float, xs)]]
    for i, t in enumerate(ts):
        rows.append([float(t), *map(float, field[i].real)])
    return rows, imag_defect


def sweep_initial_error(problem: ProblemSpec, N_list: Sequence[int]) -> list[tuple[int, float]]:
    return [(N, verifier.initial_rounding_bound(problem, N)) for N in N_list]


def sweep_residual(
    problem: ProblemSpec,
    N: int,
    n_list: Sequence[int],
    t_max_list: Sequence[float],
    tol: float = 1e-12,
) -> list[tuple[int, float, float]]:
    """Rows (n, t_max, residual bound), integrating once per t_max."""
    rows = []
    for t_max in sorted(t_max_list):
        a0_values = problem.a0_provider(N)
        a0_mid = np.array(
            [complex(z.re.mid, z.im.mid) for z in a0_values], dtype=complex
        )
        traj = galerkin.integrate(problem.c, a0_mid, N, t_max, tol)
        for n in sorted(n_list):
            samples = traj.at_times(chebyshev.cheb_points(n, t_max))
            modes = tuple(
                chebyshev.fit(samples[:, i], t_max) for i in range(samples.shape[1])
            )
            approx = ApproxSolution(
                N=N, n=n, t_max=t_max, modes=modes, c_used=problem.c
            )
            rows.append((n, t_max, verifier.residual_bound(approx, problem.c, N)))
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="advecbound",
        description=(
            "Verified sup-in-time error bounds for spectral solutions of the "
            "periodic advection equation"
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p: argparse.ArgumentParser, *, with_n: bool = True) -> None:
        p.add_argument("--problem", required=True, help="built-in name or config path")
        p.add_argument("--N", type=_parse_int_list, required=True, help="mode cutoff(s)")
        if with_n:
            p.add_argument(
                "--n",
                type=_parse_degree_list,
                default=(None,),
                help="Chebyshev degree(s), or 'auto'",
            )
        p.add_argument(
            "--t-max", type=_parse_float_list, default=(1.0,), help="time span(s)"
        )
        p.add_argument("--tol", type=float, default=1e-12, help="integrator tolerance")

    p_verify = sub.add_parser("verify", help="run the verification pipeline")
    add_common(p_verify)
    p_verify.add_argument("--period", type=float, default=None, help="asserted period")
    p_verify.add_argument("--out", default=None, help="JSON report path")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel workers")

    p_init = sub.add_parser("sweep-initial", help="initial-error bound vs N")
    p_init.add_argument("--problem", required=True)
    p_init.add_argument("--N", type=_parse_int_list, required=True)
    p_init.add_argument("--out", required=True, help="CSV output path")

    p_res = sub.add_parser("sweep-residual", help="residual bound vs n and t_max")
    add_common(p_res)
    p_res.add_argument("--out", required=True, help="CSV output path")

    p_grid = sub.add_parser("export-grid", help="solution field on a grid")
    add_common(p_grid)
    p_grid.add_argument("--grid", type=_parse_grid, default=(128, 65), help="NXxNT")
    p_grid.add_argument("--out", required=True, help="CSV output path")

    sub.add_parser("list-problems", help="names of built-in problems")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "list-problems":
            for name in builtin_names():
                print(name)
            return 0
        if args.verb == "verify":
            config = RunConfig(
                problem=args.problem,
                N_list=args.N,
                n_list=args.n,
                t_max_list=args.t_max,
                tol=args.tol,
                period=args.period,
                report_path=args.out,
                jobs=args.jobs,
            )
            return run(config)
        if args.verb == "sweep-initial":
            problem = get_problem(args.problem)
            rows = sweep_initial_error(problem, args.N)
            _write_csv(args.out, ("N", "initial_error_bound"), rows)
            return 0
        if args.verb == "sweep-residual":
            problem = get_problem(args.problem)
            n_list = [n for n in args.n if n is not None]
            if not n_list:
                parser.error("sweep-residual needs explicit --n values")
            rows = sweep_residual(
                problem, args.N[0], n_list, args.t_max, tol=args.tol
            )
            _write_csv(args.out, ("n", "t_max", "residual_bound"), rows)
            return 0
        if args.verb == "export-grid":
            problem = get_problem(args.problem)
            n = args.n[0]
            a0_values = problem.a0_provider(args.N[0])
            a0_mid = np.array(
                [complex(z.re.mid, z.im.mid) for z in a0_values], dtype=complex
            )
            approx = galerkin.build_solution(
                problem.c, a0_mid, args.N[0], n, args.t_max[0], args.tol
            )
            nx, nt = args.grid
            rows, imag_defect = export_grid(approx, nx, nt)
            header = ["t"] + [f"{x:.12g}" for x in rows[0][1:]]
            _write_csv(args.out, header, rows[1:])
            print(f"conjugate-symmetry defect: max |imag| = {imag_defect:.3e}")
            return 0
    except AdvecBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown verb {args.verb!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
