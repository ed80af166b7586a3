"""Run bundled or user experiment configs."""

import logging
from pathlib import Path

from pydantic import BaseModel, Field

from warpkit.config import MAX_SEED, find_config
from warpkit.experiments import ExperimentReport, load_config, run_experiment
from warpkit.harness import module_dir, read_help, register

logger = logging.getLogger(__name__)


class ExperimentRunArgs(BaseModel):
    """Arguments for experiment run."""

    config: str | None = Field(None, description="Config file or bundled experiment name")
    out: Path | None = Field(None, description="Artifact directory")
    seed: int | None = Field(None, ge=0, le=MAX_SEED, description="Seed of every randomized check")
    tolerance: float | None = Field(None, gt=0, description="Tolerance of every check that takes one")
    progress: bool = Field(False, description="Show progress bars of long checks")


@register(doc=read_help(module_dir(__file__) / "help.md"))
def experiment_run(args: ExperimentRunArgs) -> ExperimentReport:
    """Run an acceptance experiment."""
    if args.config is None:
        path = find_config(Path.cwd())
        if path is None:
            raise FileNotFoundError("No --config given and no warpkit_config.json found")
        logger.info(f"Using {path}")
        config = load_config(path)
    else:
        config = load_config(args.config)
    return run_experiment(config, out=args.out, seed=args.seed, tolerance=args.tolerance, progress=args.progress)
