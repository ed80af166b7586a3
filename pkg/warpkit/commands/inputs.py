"""Input documents shared by the commands: forms, test functions, grids and Fock settings.

Relative file paths inside a document resolve against the document's directory.
"""

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpkit import jsonio
from warpkit.fockfield.lattice import FockBasis, ModeLattice
from warpkit.fockfield.twopoint import TwoPointGridSpec, vacuum_two_point_grid
from warpkit.jsonio import JsonComplex
from warpkit.microloc.grid import GridDistribution
from warpkit.symbolkit.expr import CompiledExpression, VariableSet, parse_expression
from warpkit.symbolkit.symbols import BilinearForm
from warpkit.symbolkit.testfunction import TestFunction

logger = logging.getLogger(__name__)

Matrix = list[list[float]]


def read_document(path: Path) -> dict:
    """Load a JSON object; malformed JSON surfaces as ValueError."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError(f"{path} must hold a JSON object")
    return data


def bilinear_form(matrix: Matrix | None, k: int) -> BilinearForm:
    """The given matrix, or the Euclidean pairing on R^k."""
    return BilinearForm.euclidean(k) if matrix is None else BilinearForm(np.array(matrix, dtype=float))


def load_test_function(data: dict) -> TestFunction:
    """``{"bump": {"center", "radius", "mass"?}}`` or ``{"s", "expr", "center", "radius"}``."""
    if "bump" in data:
        bump = data["bump"]
        return TestFunction.bump(bump["center"], float(bump["radius"]), bump.get("mass"))
    return TestFunction.from_config(data)


def profile_function(node: Any, s: int):
    """Compile an x-only grammar node into a function of (..., s) points."""
    variables = VariableSet(k=0, s=s)
    compiled = CompiledExpression(parse_expression(node, variables).expr, variables)
    zeros = (0,) * s
    return lambda x: compiled(zeros, *np.moveaxis(np.asarray(x, dtype=float), -1, 0))


class FockInput(BaseModel):
    """Lattice, truncation and state of a Fock-space computation."""

    model_config = ConfigDict(extra="forbid")

    lattice: ModeLattice = Field(default_factory=ModeLattice)
    n_max: int = Field(2, ge=1, description="Occupation cutoff per mode")
    n_total: int = Field(4, ge=1, description="Cutoff on the total particle number")
    state: dict[str, Any] = Field(default_factory=lambda: {"vacuum": True})

    def basis(self) -> FockBasis:
        return FockBasis.for_lattice(self.lattice, self.n_max, self.n_total)

    def psi(self, basis: FockBasis) -> np.ndarray:
        return basis.state_from_config(self.state)


class ExpressionGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["expression"]
    expr: Any = Field(description="Grammar node over the x variables")
    center: list[float]
    half_widths: float | list[float]
    resolution: int


class PointMassGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["point_masses"]
    locations: Matrix
    weights: list[JsonComplex]
    center: list[float]
    half_widths: float | list[float]
    resolution: int


class FileGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["file"]
    path: Path = Field(description="Binary samples; the box metadata is read from the JSON sidecar")


class VacuumTwoPointGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["vacuum_two_point"]
    spec: TwoPointGridSpec = Field(default_factory=TwoPointGridSpec)


GridSource = Annotated[
    ExpressionGrid | PointMassGrid | FileGrid | VacuumTwoPointGrid, Field(discriminator="source")
]


def load_grid(source: GridSource, base_dir: Path) -> GridDistribution:
    if isinstance(source, ExpressionGrid):
        fn = profile_function(source.expr, len(source.center))
        return GridDistribution.from_function(fn, source.center, source.half_widths, source.resolution)
    if isinstance(source, PointMassGrid):
        return GridDistribution.point_masses(
            source.locations, source.weights, source.center, source.half_widths, source.resolution
        )
    if isinstance(source, FileGrid):
        return GridDistribution.load(resolve(source.path, base_dir))
    return vacuum_two_point_grid(source.spec)


def resolve(path: Path, base_dir: Path) -> Path:
    path = Path(path)
    return path if path.is_absolute() else Path(base_dir) / path


def write_result(out: Path | None, name: str, result: BaseModel) -> Path | None:
    """Write ``<out>/<name>.json`` when an output directory was given."""
    if out is None:
        return None
    path = jsonio.write_json(Path(out) / f"{name}.json", result)
    logger.info(f"Wrote {path}")
    return path
