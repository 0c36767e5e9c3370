#!/usr/bin/env python3
"""Render figures from the verification CLI's CSV exports.

Standalone on purpose: this script reads only the CSV artifacts written by
`advecbound export-grid`, `advecbound sweep-initial`, and
`advecbound sweep-residual`, never the library itself, so the main package's
test suite stays runnable without any plotting dependencies.

Kinds and their expected CSV schemas:

- profile        grid CSV (header `t,x0,x1,...`): solution profiles u(x) at
                 the first and last exported times
- field          grid CSV: space-time heatmap of u(x, t)
- initial_decay  sweep CSV `N,initial_error_bound`: bound vs cutoff, log y
- residual_decay sweep CSV `n,t_max,residual_bound`: one curve per t_max,
                 bound vs Chebyshev degree, log y

Outputs are byte-deterministic: fixed canvas size and dpi, no timestamps,
and the PNG Software tag is stripped, so re-rendering the same CSV produces
an identical file.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

KINDS = ("profile", "field", "initial_decay", "residual_decay")

_SWEEP_SCHEMAS = {
    "initial_decay": ["N", "initial_error_bound"],
    "residual_decay": ["n", "t_max", "residual_bound"],
}


class SchemaMismatch(Exception):
    """Input CSV columns do not match what the figure kind expects."""

    def __init__(self, kind: str, expected: Sequence[str], found: Sequence[str]):
        self.expected = list(expected)
        self.found = list(found)
        missing = [c for c in expected if c not in found]
        extra = [c for c in found if c not in expected]
        super().__init__(
            f"{kind} expects columns {self.expected}, found {self.found} "
            f"(missing {missing}, unexpected {extra})"
        )


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise SchemaMismatch("any", ["<nonempty header>"], [])
    return rows[0], rows[1:]


def check_schema(kind: str, header: Sequence[str]) -> None:
    if kind in _SWEEP_SCHEMAS:
        expected = _SWEEP_SCHEMAS[kind]
        if list(header) != expected:
            raise SchemaMismatch(kind, expected, header)
        return
    # grid kinds: a time column followed by at least two x columns
    if len(header) < 3 or header[0] != "t":
        raise SchemaMismatch(kind, ["t", "<x values...>"], header)


def _grid_arrays(header, rows):
    xs = np.array([float(c) for c in header[1:]])
    ts = np.array([float(r[0]) for r in rows])
    values = np.array([[float(c) for c in r[1:]] for r in rows])
    return xs, ts, values


def build_figure(
    kind: str,
    header: Sequence[str],
    rows: Sequence[Sequence[str]],
    log_y: Optional[bool] = None,
    title: Optional[str] = None,
):
    """Build the matplotlib Figure for one job; caller owns saving/closing."""
    if kind not in KINDS:
        raise ValueError(f"unknown figure kind {kind!r}")
    check_schema(kind, header)
    if log_y is None:
        log_y = kind in ("initial_decay", "residual_decay")

    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=100)

    if kind == "profile":
        xs, ts, values = _grid_arrays(header, rows)
        ax.plot(xs, values[0], label=f"t = {ts[0]:g}")
        if len(ts) > 1:
            ax.plot(xs, values[-1], label=f"t = {ts[-1]:g}")
        ax.set_xlabel("x")
        ax.set_ylabel("u")
        ax.legend()
        if log_y:
            ax.set_yscale("log")
    elif kind == "field":
        xs, ts, values = _grid_arrays(header, rows)
        mesh = ax.pcolormesh(xs, ts, values, shading="auto")
        fig.colorbar(mesh, ax=ax, label="u")
        ax.set_xlabel("x")
        ax.set_ylabel("t")
    elif kind == "initial_decay":
        ns = [int(r[0]) for r in rows]
        vals = [float(r[1]) for r in rows]
        ax.plot(ns, vals, marker="o")
        ax.set_xlabel("N")
        ax.set_ylabel("initial error bound")
        if log_y:
            ax.set_yscale("log")
    else:  # residual_decay
        series: dict[float, list[tuple[int, float]]] = {}
        for r in rows:
            series.setdefault(float(r[1]), []).append((int(r[0]), float(r[2])))
        for t_max in sorted(series):
            pts = sorted(series[t_max])
            ax.plot(
                [p[0] for p in pts],
                [p[1] for p in pts],
                marker="o",
                label=f"t_max = {t_max:g}",
            )
        ax.set_xlabel("n")
        ax.set_ylabel("residual bound")
        ax.legend()
        if log_y:
            ax.set_yscale("log")

    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def render(kind, input_csv, output_image, log_y=None, title=None) -> None:
    header, rows = read_csv(input_csv)
    fig = build_figure(kind, header, rows, log_y=log_y, title=title)
    # dropping the Software tag leaves no environment-dependent bytes in the PNG
    fig.savefig(output_image, metadata={"Software": None})
    plt.close(fig)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figures.py",
        description="Render figures from verification CSV exports",
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="input", required=True, help="input CSV path")
    parser.add_argument("--out", dest="output", required=True, help="output image path")
    parser.add_argument(
        "--log-y",
        action="store_true",
        default=None,
        help="force log-scale y axis (decay kinds default to it; line plots only)",
    )
    parser.add_argument("--title", default=None, help="figure title")
    args = parser.parse_args(argv)
    try:
        render(args.kind, args.input, args.output, log_y=args.log_y, title=args.title)
    except SchemaMismatch as exc:
        print(f"schema mismatch: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
