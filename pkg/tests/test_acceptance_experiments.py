"""Every bundled experiment passes end to end through the command line."""

import csv
import json
import tempfile
from pathlib import Path

import pytest
from click.testing import CliRunner

from warpkit.cli import cli
from warpkit.experiments import bundled_configs

EXPERIMENTS = [
    "prop38_suite",
    "gaussian_oracle",
    "cutoff_independence",
    "iteration_bound",
    "intertwiner",
    "wavefront_calibration",
    "wavefront_inclusion",
    "field_npoints",
    "warp_laws",
    "twopoint_rigidity",
    "musc_geometry",
    "vacuum_musc",
]


@pytest.fixture
def out_dir():
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


def run_bundled(name: str, out: Path):
    result = CliRunner().invoke(cli, ["experiment", "run", "--config", name, "--out", str(out)])
    return result, json.loads((out / "results.json").read_text())


def test_every_experiment_is_bundled():
    assert sorted(EXPERIMENTS) == bundled_configs()


@pytest.mark.parametrize("name", EXPERIMENTS)
def test_bundled_experiment_passes(name, out_dir):
    result, saved = run_bundled(name, out_dir)
    assert result.exit_code == 0, result.stderr
    assert saved["status"]["status"] == "PASSED"
    assert [c["name"] for c in saved["checks"]] == [name]
    for artifact in saved["checks"][0]["artifacts"]:
        assert (out_dir / artifact).stat().st_size > 0


def test_prop38_table_within_tolerance(out_dir):
    _, saved = run_bundled("prop38_suite", out_dir)
    with open(out_dir / "prop38_suite.csv") as f:
        rows = list(csv.DictReader(f))
    assert len({row["symbol"] for row in rows}) >= 10
    metrics = saved["checks"][0]["result"]["metrics"]
    assert metrics["max_relative_error_cutoff"] <= 1e-4
    assert metrics["max_relative_error_regularized"] <= 1e-3


def test_twopoint_rigidity_deltas(out_dir):
    _, saved = run_bundled("twopoint_rigidity", out_dir)
    with open(out_dir / "twopoint_rigidity.csv") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 5
    assert all(float(row["relative_delta"]) <= 1e-4 for row in rows)
    assert saved["seed"] == 20240613


def test_vacuum_musc_plots_wavefront(out_dir):
    _, saved = run_bundled("vacuum_musc", out_dir)
    check = saved["checks"][0]
    assert "vacuum_musc_vacuum_two_point.png" in check["artifacts"]
    assert check["result"]["metrics"]["verdict"] == "PASS"
    assert check["result"]["metrics"]["warped_verdict"] == "PASS"
