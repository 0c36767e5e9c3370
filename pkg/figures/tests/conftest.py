"""Fixtures: load the plotting script as a module and export real CSVs.

The CSV fixtures shell out to the installed verification CLI, so these tests
exercise exactly the artifact hand-off the script is meant for.
"""

import importlib.util
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPT = Path(__file__).resolve().parents[1] / "figures.py"


@pytest.fixture(scope="session")
def figures_mod():
    spec = importlib.util.spec_from_file_location("figures_script", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def run_script(*args):
    return subprocess.run(
        [sys.executable, str(SCRIPT), *args], capture_output=True, text=True, timeout=120
    )


@pytest.fixture(scope="session")
def script_runner():
    return run_script


def _cli(*args, cwd):
    proc = subprocess.run(
        [sys.executable, "-m", "advecbound.cli", *args],
        capture_output=True, text=True, timeout=600, cwd=cwd,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """Grid and sweep CSVs for example1, produced by the real CLI."""
    out = tmp_path_factory.mktemp("csv")
    _cli(
        "export-grid", "--problem", "example1", "--N", "40", "--n", "12",
        "--t-max", "0.5", "--grid", "48x17", "--out", str(out / "grid.csv"),
        cwd=out,
    )
    _cli(
        "sweep-initial", "--problem", "example1", "--N", "10:160:10",
        "--out", str(out / "initial.csv"),
        cwd=out,
    )
    _cli(
        "sweep-residual", "--problem", "example1", "--N", "40",
        "--n", "6,10,14,18", "--t-max", "0.1,0.2,0.3,0.4,0.5,0.6",
        "--out", str(out / "residual.csv"),
        cwd=out,
    )
    return out
