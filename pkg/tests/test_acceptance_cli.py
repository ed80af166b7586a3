"""Command-line wiring, exit codes and reproducibility of experiment runs."""

import json
import tempfile
from pathlib import Path

import pytest
from click.testing import CliRunner

from warpkit import __version__
from warpkit.cli import cli

QUICK = {"name": "musc_geometry", "params": {"n_pairs": 30, "n_singletons": 10, "n_trials": 20}}


@pytest.fixture
def workdir():
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


def write(workdir: Path, name: str, content) -> Path:
    path = workdir / name
    path.write_text(content if isinstance(content, str) else json.dumps(content))
    return path


def run(*argv: str):
    return CliRunner().invoke(cli, list(argv))


class TestCommandTree:
    def test_groups(self):
        result = run("--help")
        assert result.exit_code == 0
        for group in ("experiment", "musc", "oscint", "qft", "symbol", "warp", "wf"):
            assert group in result.stdout

    def test_version(self):
        assert __version__ in run("--version").stdout

    def test_command_help_expands_includes(self):
        result = run("experiment", "run", "--help")
        assert result.exit_code == 0
        assert "Common flags" in result.stdout
        assert "{{include" not in result.stdout


class TestExperimentExitCodes:
    @pytest.mark.parametrize(
        "content",
        [
            "{not json",
            {"experiment": "x", "checks": []},
            {"experiment": "x", "checks": [QUICK], "unexpected": 1},
            {"experiment": "x", "checks": [QUICK], "randomized": True},
            {"experiment": "x", "checks": [{"name": "no_such_check"}]},
            {"experiment": "x", "checks": [{"name": "musc_geometry", "params": {"n_pairs": 0}}]},
            {"experiment": "x", "checks": [{"name": "musc_geometry", "params": {"bogus": 1}}]},
        ],
    )
    def test_malformed_config_exits_2(self, workdir, content):
        config = write(workdir, "bad.json", content)
        out = workdir / "out"
        result = run("experiment", "run", "--config", str(config), "--out", str(out))
        assert result.exit_code == 2
        assert json.loads(result.stdout)["kind"] == "invalid"
        assert not (out / "results.json").exists()

    def test_missing_config_exits_2(self, workdir):
        result = run("experiment", "run", "--config", str(workdir / "absent.json"))
        assert result.exit_code == 2

    def test_failing_check_exits_1_with_failing_list(self, workdir):
        rigid = {"name": "twopoint_rigidity", "params": {"n_pairs": 1, "separation": 1e30}}
        config = write(workdir, "mixed.json", {"experiment": "mixed", "seed": 4, "checks": [rigid, QUICK]})
        result = run("experiment", "run", "--config", str(config), "--out", str(workdir / "out"))
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        assert [c["passed"] for c in report["checks"]] == [False, True]
        assert any(e.startswith("twopoint_rigidity:") for e in report["status"]["errors"])

    def test_passing_run_exits_0(self, workdir):
        config = write(workdir, "quick.json", {"experiment": "quick", "randomized": True, "seed": 9, "checks": [QUICK]})
        result = run("experiment", "run", "--config", str(config), "--out", str(workdir / "out"))
        assert result.exit_code == 0
        assert (workdir / "out" / "musc_geometry.csv").exists()


class TestReproducibility:
    def test_same_seed_same_bytes(self, workdir):
        config = write(workdir, "quick.json", {"experiment": "quick", "randomized": True, "seed": 11, "checks": [QUICK]})
        for out in ("a", "b"):
            assert run("experiment", "run", "--config", str(config), "--out", str(workdir / out)).exit_code == 0
        for artifact in ("results.json", "musc_geometry.csv"):
            assert (workdir / "a" / artifact).read_bytes() == (workdir / "b" / artifact).read_bytes()

    def test_seed_flag_overrides_config(self, workdir):
        config = write(workdir, "quick.json", {"experiment": "quick", "randomized": True, "seed": 11, "checks": [QUICK]})
        result = run("experiment", "run", "--config", str(config), "--out", str(workdir / "c"), "--seed", "12")
        assert result.exit_code == 0
        assert json.loads((workdir / "c" / "results.json").read_text())["seed"] == 12
