"""Run an experiment config: validate every check, run them in order and write the artifacts."""

import logging
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from warpkit import jsonio
from warpkit.config import ExperimentConfig
from warpkit.experiments.checks import CHECKS
from warpkit.experiments.models import CheckOutcome, CheckResult, ExperimentReport
from warpkit.harness.library import FunctionLibrary
from warpkit.harness.models import OperationError
from warpkit.microloc.plots import plot_wavefront

logger = logging.getLogger(__name__)

console = Console(stderr=True)

RESULTS_FILENAME = "results.json"


def resolve_params(
    config: ExperimentConfig, seed: int | None = None, tolerance: float | None = None
) -> list[dict[str, Any]]:
    """Parameters of every check with the run's seed and tolerance filled in.

    Command-line values override the check's own; config-level values only fill
    gaps. Raises ValueError for unknown checks and pydantic.ValidationError for
    bad parameters, before anything runs.
    """
    resolved = []
    for entry in config.checks:
        desc = CHECKS.get(entry.name)
        if desc is None:
            raise ValueError(f"Unknown check '{entry.name}'; registered checks: {', '.join(CHECKS.names())}")
        params = dict(entry.params)
        for field, override, default in (("seed", seed, config.seed), ("tolerance", tolerance, config.tolerance)):
            if not desc.accepts(field):
                continue
            if override is not None:
                params[field] = override
            elif default is not None:
                params.setdefault(field, default)
        desc.validate_and_parse_args(params)
        resolved.append(params)
    return resolved


def write_artifacts(name: str, result: CheckResult, out: Path) -> list[str]:
    artifacts = []
    if result.table is not None:
        jsonio.write_csv(out / f"{name}.csv", result.table.columns, result.table.rows)
        artifacts.append(f"{name}.csv")
    for key, wf in sorted(result.wavefronts.items()):
        plot_wavefront(wf, out / f"{name}_{key}.png", title=f"{name}: {key}")
        artifacts.append(f"{name}_{key}.png")
    return artifacts


def run_experiment(
    config: ExperimentConfig,
    out: Path | None = None,
    seed: int | None = None,
    tolerance: float | None = None,
    progress: bool = False,
) -> ExperimentReport:
    """Run the checks of ``config`` in order; a failing check never stops the others."""
    params = resolve_params(config, seed, tolerance)
    out = config.resolve_output_dir(out)
    out.mkdir(parents=True, exist_ok=True)
    library = FunctionLibrary(registry=CHECKS)
    report = ExperimentReport(experiment=config.experiment, seed=seed if seed is not None else config.seed)
    logger.info(f"Running {config.experiment}: {len(config.checks)} checks into {out}")

    for entry, args in zip(config.checks, params, strict=True):
        if progress and CHECKS.get(entry.name).accepts("progress"):
            args = {**args, "progress": True}
        console.print(f"[bold]{entry.name}[/bold] ...")
        result = library.call(entry.name, args)
        if isinstance(result, OperationError):
            outcome = CheckOutcome(name=entry.name, passed=False, error=result)
            report.status.error(f"{entry.name}: {result.error}")
        else:
            outcome = CheckOutcome(
                name=entry.name,
                passed=result.status.is_passed(),
                result=result,
                artifacts=write_artifacts(entry.name, result, out),
            )
            for error in result.status.errors:
                report.status.error(f"{entry.name}: {error}")
        report.checks.append(outcome)
        console.print(f"  {'[green]PASS' if outcome.passed else '[red]FAIL'}[/] {entry.name}")

    jsonio.write_json(out / RESULTS_FILENAME, report)
    print_summary(report)
    return report


def print_summary(report: ExperimentReport) -> None:
    table = Table(title=f"{report.experiment} (seed {report.seed})")
    table.add_column("check")
    table.add_column("status")
    table.add_column("detail", overflow="fold")
    for outcome in report.checks:
        if outcome.error is not None:
            detail = outcome.error.error
        elif outcome.result.status.errors:
            detail = outcome.result.status.errors[0]
        else:
            detail = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}" for k, v in outcome.result.metrics.items())
        table.add_row(outcome.name, "[green]PASS[/]" if outcome.passed else "[red]FAIL[/]", detail)
    console.print(table)
    passed = len(report.checks) - len(report.failing)
    console.print(f"Passed {passed}/{len(report.checks)}")
