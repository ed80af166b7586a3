"""Experiment configuration files and the per-module settings blocks they carry."""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from warpkit.fockfield.lattice import FockBasis, ModeLattice
from warpkit.microloc.wavefront import WavefrontSpec
from warpkit.musc.feasibility import SearchSpec
from warpkit.oscint.cutoff import CutoffSpec
from warpkit.oscint.regularize import RegularizationSpec
from warpkit.symbolkit.seminorms import SamplingSpec

CONFIG_FILENAME = "warpkit_config.json"
MAX_SEED = 2**64 - 1

__all__ = [
    "CONFIG_FILENAME",
    "CheckConfig",
    "CutoffSpec",
    "ExperimentConfig",
    "FockBasis",
    "ModeLattice",
    "RegularizationSpec",
    "SamplingSpec",
    "SearchSpec",
    "WavefrontSpec",
    "find_config",
]


class CheckConfig(BaseModel):
    """One acceptance check and its parameters."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(description="Registered check name")
    params: dict[str, Any] = Field(default_factory=dict, description="Validated against the check's argument model")


class ExperimentConfig(BaseModel):
    """A reproducible experiment: an ordered list of checks sharing a seed and an output directory."""

    model_config = ConfigDict(extra="forbid")

    experiment: str = Field(description="Experiment id; also the default output subdirectory")
    description: str = ""
    randomized: bool = Field(False, description="The checks draw random inputs and need a seed")
    seed: int | None = Field(None, ge=0, le=MAX_SEED)
    tolerance: float | None = Field(None, gt=0, description="Overrides the tolerance of every check that takes one")
    output_dir: Path | None = Field(None, description="Where artifacts go; defaults to runs/<experiment>")
    checks: list[CheckConfig] = Field(min_length=1)

    @model_validator(mode="after")
    def _seed_for_randomized(self):
        if self.randomized and self.seed is None:
            raise ValueError(f"Experiment {self.experiment!r} is randomized and needs a seed")
        return self

    def resolve_output_dir(self, override: Path | None = None) -> Path:
        if override is not None:
            return Path(override)
        return self.output_dir or Path("runs") / self.experiment

    @classmethod
    def load_from_file(cls, config_path: Path) -> "ExperimentConfig":
        """Load configuration from a JSON file."""
        args = json.loads(Path(config_path).read_text())
        return cls.model_validate(args)

    def save_to_file(self, config_path: Path) -> None:
        """Save configuration to a JSON file."""
        data = self.model_dump(mode="json", exclude_none=True)
        Path(config_path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")

    @classmethod
    def find_config(cls, start_path: Path) -> "ExperimentConfig | None":
        """Find warpkit_config.json by searching up the directory tree."""
        path = find_config(start_path)
        return cls.load_from_file(path) if path else None


def find_config(start_path: Path) -> Path | None:
    current = Path(start_path).resolve()
    while True:
        config_file = current / CONFIG_FILENAME
        if config_file.exists():
            return config_file
        if current == current.parent:
            return None
        current = current.parent

