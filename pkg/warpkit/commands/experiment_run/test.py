import json
import tempfile
from pathlib import Path

import pytest

from .lib import ExperimentRunArgs, experiment_run

QUICK = {"name": "musc_geometry", "params": {"n_pairs": 20, "n_singletons": 5, "n_trials": 10}}


def write_config(tmp: str, checks: list[dict], name: str = "quick", **extra) -> Path:
    path = Path(tmp) / name
    path.write_text(json.dumps({"experiment": "quick", "checks": checks, **extra}))
    return path


def test_run_writes_results():
    with tempfile.TemporaryDirectory() as tmp:
        config = write_config(tmp, [QUICK], randomized=True, seed=3, name="quick.json")
        out = Path(tmp) / "out"
        report = experiment_run(ExperimentRunArgs(config=str(config), out=out))
        saved = json.loads((out / "results.json").read_text())
        assert (out / "musc_geometry.csv").exists()
    assert report.status.is_passed()
    assert report.seed == 3
    assert saved["checks"][0]["name"] == "musc_geometry"
    assert saved["checks"][0]["artifacts"] == ["musc_geometry.csv"]


def test_failing_check_does_not_stop_the_rest():
    rigid = {"name": "twopoint_rigidity", "params": {"n_pairs": 1, "separation": 1e30}}
    with tempfile.TemporaryDirectory() as tmp:
        config = write_config(tmp, [rigid, QUICK], seed=0, name="mixed.json")
        report = experiment_run(ExperimentRunArgs(config=str(config), out=Path(tmp) / "out"))
    assert not report.status.is_passed()
    assert report.failing == ["twopoint_rigidity"]
    assert report.checks[1].passed


def test_config_found_from_working_directory(monkeypatch):
    with tempfile.TemporaryDirectory() as tmp:
        write_config(tmp, [QUICK], seed=1, name="warpkit_config.json")
        nested = Path(tmp) / "a" / "b"
        nested.mkdir(parents=True)
        monkeypatch.chdir(nested)
        report = experiment_run(ExperimentRunArgs(out=Path(tmp) / "out"))
    assert report.experiment == "quick"


def test_unknown_check_is_rejected_before_running():
    with tempfile.TemporaryDirectory() as tmp:
        config = write_config(tmp, [QUICK, {"name": "no_such_check"}], name="bad.json")
        out = Path(tmp) / "out"
        with pytest.raises(ValueError, match="Unknown check 'no_such_check'"):
            experiment_run(ExperimentRunArgs(config=str(config), out=out))
        assert not out.exists()


def test_missing_config():
    with pytest.raises(FileNotFoundError, match="no bundled experiment"):
        experiment_run(ExperimentRunArgs(config="definitely_not_an_experiment"))
