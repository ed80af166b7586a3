"""Acceptance experiments: registered checks, bundled configs and the runner."""

from pathlib import Path

from warpkit.config import ExperimentConfig
from warpkit.experiments.checks import CHECKS, check
from warpkit.experiments.models import CheckOutcome, CheckResult, CheckTable, ExperimentReport
from warpkit.experiments.runner import RESULTS_FILENAME, run_experiment

CONFIG_DIR = Path(__file__).parent / "configs"


def bundled_configs() -> list[str]:
    return sorted(p.stem for p in CONFIG_DIR.glob("*.json"))


def load_config(name_or_path: str | Path) -> ExperimentConfig:
    """Load a config file, or a bundled config by experiment name."""
    path = Path(name_or_path)
    if not path.exists() and str(name_or_path) in bundled_configs():
        path = CONFIG_DIR / f"{name_or_path}.json"
    if not path.exists():
        raise FileNotFoundError(f"No config file {path} and no bundled experiment named '{name_or_path}'")
    return ExperimentConfig.load_from_file(path)


__all__ = [
    "CHECKS",
    "CONFIG_DIR",
    "RESULTS_FILENAME",
    "CheckOutcome",
    "CheckResult",
    "CheckTable",
    "ExperimentReport",
    "bundled_configs",
    "check",
    "load_config",
    "run_experiment",
]
