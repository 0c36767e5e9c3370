"""Tests for the command-line interface: verbs, CSV/JSON artifacts, exits.

Most cases drive main() in-process for speed; one subprocess smoke test
checks the installed entry points end to end.  The exported-field oracle is
the closed form u0(x) = 3/(5+4 cos x) of the rational initial state, which
the t = 0 grid row must reproduce.
"""

import csv
import json
import math
import shutil
import subprocess
import sys

import numpy as np
import pytest

from advecbound.cli import (
    RunConfig,
    _parse_degree_list,
    _parse_float_list,
    _parse_grid,
    _parse_int_list,
    load_report,
    main,
    write_report,
)
from advecbound.errors import AdvecBoundError

BAD_PROBLEM = """\
name = coupled-strong
c.0 = 1.0, 0
c.1 = 0.3, 0
c.-1 = 0.3, 0
a0.0 = 1.0, 0
tail.kind = custom_upper
tail.value = 0
"""


def read_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


class TestParseHelpers:
    def test_int_list_with_ranges(self):
        assert _parse_int_list("10,20") == (10, 20)
        assert _parse_int_list("10:40:10") == (10, 20, 30, 40)
        assert _parse_int_list("1:3") == (1, 2, 3)

    def test_int_list_rejects_negative_and_empty(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            _parse_int_list("-3")
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_int_list("1:2:3:4")

    def test_degree_list_auto(self):
        assert _parse_degree_list("auto") == (None,)
        assert _parse_degree_list("8,16") == (8, 16)

    def test_float_list_positive_only(self):
        import argparse

        assert _parse_float_list("0.1,0.5") == (0.1, 0.5)
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_float_list("0.0")
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_float_list("nope")

    def test_grid(self):
        import argparse

        assert _parse_grid("128x65") == (128, 65)
        assert _parse_grid("16X5") == (16, 5)
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_grid("128")
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_grid("1x5")

    def test_run_config_ordering(self):
        cfg = RunConfig(
            problem="example1",
            N_list=(20, 10),
            n_list=(8, None),
            t_max_list=(0.5, 0.1),
        )
        combos = cfg.tuples()
        assert combos[0] == (10, None, 0.1)
        assert combos == sorted(
            combos, key=lambda c: (c[2], c[0], -1 if c[1] is None else c[1])
        )


class TestListProblems:
    def test_prints_sorted_builtins(self, capsys):
        assert main(["list-problems"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines() == ["example1", "example2", "example3"]


class TestVerifyVerb:
    def test_report_round_trip(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        code = main(
            [
                "verify", "--problem", "example2", "--N", "6", "--n", "8",
                "--t-max", "0.25", "--tol", "1e-10", "--out", str(report),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "residual" in out and "error" in out  # table header
        rows = load_report(str(report))
        assert len(rows) == 1
        rep = rows[0]
        assert rep.verified and rep.problem == "example2"
        assert rep.N == 6 and rep.n == 8 and rep.t_max == 0.25
        assert 0.0 < rep.total_error < 0.1
        # byte-stable round trip through the JSON schema
        second = tmp_path / "again.json"
        write_report(rows, str(second))
        assert second.read_bytes() == report.read_bytes()

    def test_failing_problem_exits_one(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text(BAD_PROBLEM)
        code = main(
            [
                "verify", "--problem", str(cfg), "--N", "4", "--n", "6",
                "--t-max", "0.2",
            ]
        )
        assert code == 1
        captured = capsys.readouterr()
        assert "verification failed" in captured.err
        assert "unverified" in captured.out

    def test_jobs_parallel_matches_serial(self, tmp_path):
        args = [
            "verify", "--problem", "example2", "--N", "6", "--n", "8",
            "--t-max", "0.2,0.25", "--tol", "1e-10",
        ]
        serial = tmp_path / "serial.json"
        parallel = tmp_path / "parallel.json"
        assert main(args + ["--out", str(serial), "--jobs", "1"]) == 0
        assert main(args + ["--out", str(parallel), "--jobs", "2"]) == 0
        a = json.loads(serial.read_text())["rows"]
        b = json.loads(parallel.read_text())["rows"]
        assert len(a) == len(b) == 2
        for ra, rb in zip(a, b):
            for key in ra:
                if key.endswith("_seconds"):
                    continue
                assert ra[key] == rb[key], key

    def test_schema_guard_on_load(self, tmp_path):
        path = tmp_path / "weird.json"
        path.write_text(json.dumps({"schema": "other", "rows": []}))
        with pytest.raises(AdvecBoundError, match="schema"):
            load_report(str(path))


class TestSweepInitial:
    def test_csv_header_and_monotone_decay(self, tmp_path):
        out = tmp_path / "initial.csv"
        code = main(
            ["sweep-initial", "--problem", "example1", "--N", "10,40,80,120",
             "--out", str(out)]
        )
        assert code == 0
        header, rows = read_csv(str(out))
        assert header == ["N", "initial_error_bound"]
        ns = [int(r[0]) for r in rows]
        vals = [float(r[1]) for r in rows]
        assert ns == [10, 40, 80, 120]
        assert vals == sorted(vals, reverse=True)
        assert vals[-1] <= 1e-15


class TestSweepResidual:
    def test_rows_sorted_and_decreasing_in_degree(self, tmp_path):
        out = tmp_path / "residual.csv"
        code = main(
            [
                "sweep-residual", "--problem", "example1", "--N", "40",
                "--n", "6,10,14", "--t-max", "0.25,0.2", "--tol", "1e-12",
                "--out", str(out),
            ]
        )
        assert code == 0
        header, rows = read_csv(str(out))
        assert header == ["n", "t_max", "residual_bound"]
        parsed = [(int(r[0]), float(r[1]), float(r[2])) for r in rows]
        assert [(p[0], p[1]) for p in parsed] == [
            (6, 0.2), (10, 0.2), (14, 0.2), (6, 0.25), (10, 0.25), (14, 0.25),
        ]
        for t in (0.2, 0.25):
            series = [p[2] for p in parsed if p[1] == t]
            assert series[0] > series[1] > series[2]

    def test_requires_explicit_degrees(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(
                ["sweep-residual", "--problem", "example1", "--N", "40",
                 "--out", str(tmp_path / "x.csv")]
            )
        assert exc.value.code == 2


class TestExportGrid:
    def test_constant_mode_gives_unit_field(self, tmp_path, capsys):
        out = tmp_path / "field.csv"
        code = main(
            [
                "export-grid", "--problem", "example2", "--N", "0", "--n", "2",
                "--t-max", "0.5", "--grid", "8x3", "--out", str(out),
            ]
        )
        assert code == 0
        assert "conjugate-symmetry defect" in capsys.readouterr().out
        header, rows = read_csv(str(out))
        assert header[0] == "t"
        assert len(header) == 9 and len(rows) == 3
        for row in rows:
            for cell in row[1:]:
                assert abs(float(cell) - 1.0) <= 1e-12

    def test_initial_row_matches_closed_form(self, tmp_path, capsys):
        out = tmp_path / "field.csv"
        code = main(
            [
                "export-grid", "--problem", "example2", "--N", "40", "--n", "8",
                "--t-max", "0.3", "--grid", "16x5", "--out", str(out),
            ]
        )
        assert code == 0
        header, rows = read_csv(str(out))
        assert float(rows[0][0]) == 0.0
        xs = 2.0 * np.pi * np.arange(16) / 16
        u0 = 3.0 / (5.0 + 4.0 * np.cos(xs))
        got = np.array([float(c) for c in rows[0][1:]])
        assert np.max(np.abs(got - u0)) <= 1e-10

    def test_reported_imag_defect_small(self, tmp_path, capsys):
        out = tmp_path / "field.csv"
        main(
            [
                "export-grid", "--problem", "example2", "--N", "8", "--n", "8",
                "--t-max", "0.3", "--grid", "8x3", "--out", str(out),
            ]
        )
        line = [
            l for l in capsys.readouterr().out.splitlines() if "defect" in l
        ][0]
        defect = float(line.split("=")[1])
        assert defect <= 1e-10


class TestArgparseBehavior:
    def test_unknown_verb_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_argument_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--N", "6"])
        assert exc.value.code == 2


class TestSubprocessSmoke:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "advecbound.cli", "list-problems"],
            capture_output=True, text=True, timeout=60,
        )
        assert proc.returncode == 0
        assert "example1" in proc.stdout

    @pytest.mark.skipif(
        shutil.which("advecbound") is None, reason="console script not on PATH"
    )
    def test_console_script(self):
        proc = subprocess.run(
            ["advecbound", "list-problems"], capture_output=True, text=True, timeout=60
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == ["example1", "example2", "example3"]
