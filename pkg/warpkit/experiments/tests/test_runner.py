"""Tests for the experiment runner."""

import json
import tempfile
from pathlib import Path

import pytest
from pydantic import BaseModel, ValidationError

from warpkit.config import ExperimentConfig
from warpkit.experiments import runner
from warpkit.experiments.models import CheckResult, CheckTable
from warpkit.harness.registry import Registry
from warpkit.microloc.wavefront import WavefrontEntry, WavefrontEstimate


class SampledArgs(BaseModel):
    value: float = 1.0
    tolerance: float = 0.5
    seed: int = 0


def sampled(args: SampledArgs) -> CheckResult:
    result = CheckResult(table=CheckTable(columns=["value", "seed"]))
    result.table.add(args.value, args.seed)
    result.status.check(args.value <= args.tolerance, f"value {args.value} above {args.tolerance}")
    result.metrics = {"value": args.value, "tolerance": args.tolerance, "seed": args.seed}
    return result


def untoleranced(value: float = 0.0) -> CheckResult:
    return CheckResult(metrics={"value": value})


def plotted(value: float = 0.0) -> CheckResult:
    wf = WavefrontEstimate(entries=[WavefrontEntry(base_point=[0.0], direction=[1.0], n_fit=0.2, verdict="singular")])
    return CheckResult(wavefronts={"spike": wf})


def crashing(value: float = 0.0) -> CheckResult:
    raise RuntimeError("solver exploded")


@pytest.fixture
def checks(monkeypatch):
    registry = Registry("check")
    for func in (sampled, untoleranced, plotted, crashing):
        registry.register(func)
    monkeypatch.setattr(runner, "CHECKS", registry)
    return registry


@pytest.fixture
def out_dir():
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


def config(*checks: dict, **extra) -> ExperimentConfig:
    return ExperimentConfig.model_validate({"experiment": "sampled", "checks": list(checks), **extra})


class TestResolveParams:
    def test_config_values_fill_gaps(self, checks):
        params = runner.resolve_params(
            config({"name": "sampled"}, {"name": "sampled", "params": {"seed": 5}}, seed=2, tolerance=0.25)
        )
        assert params == [{"seed": 2, "tolerance": 0.25}, {"seed": 5, "tolerance": 0.25}]

    def test_command_line_overrides(self, checks):
        params = runner.resolve_params(config({"name": "sampled", "params": {"seed": 5, "tolerance": 0.1}}), seed=7, tolerance=3.0)
        assert params == [{"seed": 7, "tolerance": 3.0}]

    def test_only_accepted_fields(self, checks):
        assert runner.resolve_params(config({"name": "untoleranced"}, seed=1, tolerance=0.5)) == [{}]

    def test_unknown_check(self, checks):
        with pytest.raises(ValueError, match="Unknown check 'missing'"):
            runner.resolve_params(config({"name": "sampled"}, {"name": "missing"}))

    def test_bad_params(self, checks):
        with pytest.raises(ValidationError):
            runner.resolve_params(config({"name": "sampled", "params": {"value": "many"}}))


class TestRunExperiment:
    def test_artifacts_and_report(self, checks, out_dir):
        report = runner.run_experiment(config({"name": "sampled", "params": {"value": 0.1}}, {"name": "plotted"}), out=out_dir)
        assert report.status.is_passed()
        assert report.checks[0].artifacts == ["sampled.csv"]
        assert report.checks[1].artifacts == ["plotted_spike.png"]
        assert (out_dir / "sampled.csv").read_text().splitlines() == ["value,seed", "0.10000000000000001,0"]
        saved = json.loads((out_dir / runner.RESULTS_FILENAME).read_text())
        assert saved["checks"][0]["result"]["metrics"]["value"] == 0.1

    def test_failures_are_collected(self, checks, out_dir):
        report = runner.run_experiment(
            config({"name": "sampled", "params": {"value": 2.0}}, {"name": "crashing"}, {"name": "untoleranced"}), out=out_dir
        )
        assert report.failing == ["sampled", "crashing"]
        assert report.checks[1].error.kind == "failed"
        assert "solver exploded" in report.checks[1].error.error
        assert report.status.errors[0] == "sampled: value 2.0 above 0.5"
        assert report.checks[2].passed

    def test_tolerance_override_changes_verdict(self, checks, out_dir):
        experiment = config({"name": "sampled", "params": {"value": 2.0}})
        assert not runner.run_experiment(experiment, out=out_dir).status.is_passed()
        assert runner.run_experiment(experiment, out=out_dir, tolerance=3.0).status.is_passed()

    def test_default_output_dir(self, checks, out_dir, monkeypatch):
        monkeypatch.chdir(out_dir)
        runner.run_experiment(config({"name": "untoleranced"}))
        assert (out_dir / "runs" / "sampled" / "results.json").exists()

    def test_validation_precedes_running(self, checks, out_dir):
        with pytest.raises(ValueError):
            runner.run_experiment(config({"name": "sampled"}, {"name": "missing"}), out=out_dir / "never")
        assert not (out_dir / "never").exists()
