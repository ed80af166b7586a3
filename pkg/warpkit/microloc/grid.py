"""Grid-sampled distributions on a box in R^s, localization by bumps and binary I/O."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from warpkit.errors import WarpkitError
from warpkit.jsonio import JsonComplex, read_complex64, sidecar_path, write_complex64, write_json
from warpkit.oscint.cutoff import mollifier

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 16

Kind = Literal["function", "point_masses"]


class DomainError(WarpkitError):
    """A bump or point mass leaves the grid box."""


class BumpSpec(BaseModel):
    """Standard mollifier phi(x) = psi(|x - x0| / r): 1 at x0, 0 outside radius r."""

    center: list[float]
    radius: float = Field(gt=0)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        c = np.asarray(self.center, dtype=float)
        return mollifier(np.linalg.norm(np.asarray(x, dtype=float) - c, axis=-1) / self.radius)


class GridSidecar(BaseModel):
    dimension: int
    center: list[float]
    half_widths: list[float]
    resolution: int
    kind: Kind
    locations: list[list[float]] = Field(default_factory=list)
    weights: list[JsonComplex] = Field(default_factory=list)


@dataclass(frozen=True)
class GridDistribution:
    """Samples of a distribution on the periodic grid x_j = c - w + j (2w / N).

    ``kind="point_masses"`` keeps (location, weight) pairs and rasterizes them
    as weight / cell-volume spikes on the nearest cell.
    """

    center: np.ndarray
    half_widths: np.ndarray
    resolution: int
    kind: Kind = "function"
    samples: np.ndarray | None = field(default=None, repr=False)
    locations: np.ndarray | None = None
    weights: np.ndarray | None = None

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float))
        half = np.broadcast_to(np.asarray(self.half_widths, dtype=float), center.shape).copy()
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "half_widths", half)
        if np.any(half <= 0):
            raise ValueError(f"Half-widths must be positive, got {half.tolist()}")
        n = self.resolution
        if n < MIN_RESOLUTION or n & (n - 1):
            raise ValueError(f"Resolution must be a power of two >= {MIN_RESOLUTION}, got {n}")
        if self.kind == "function":
            if self.samples is None or self.samples.shape != (n,) * self.dimension:
                raise ValueError(f"Function samples must have shape {(n,) * self.dimension}")
            if not np.all(np.isfinite(self.samples)):
                raise ValueError("Samples must be finite")
        else:
            locations = np.asarray(self.locations, dtype=float).reshape(-1, self.dimension)
            weights = np.asarray(self.weights, dtype=complex).reshape(-1)
            if len(locations) != len(weights):
                raise ValueError("Point masses need one weight per location")
            lo, hi = self.bounds
            if np.any(locations < lo) or np.any(locations >= hi):
                raise DomainError("Point mass outside the grid box", locations=locations.tolist())
            object.__setattr__(self, "locations", locations)
            object.__setattr__(self, "weights", weights)

    @classmethod
    def from_function(
        cls, fn: Callable[[np.ndarray], np.ndarray], center, half_widths, resolution: int
    ) -> "GridDistribution":
        """Sample fn on the grid; fn maps (..., s) points to values."""
        center = np.atleast_1d(np.asarray(center, dtype=float))
        blank = cls(center, half_widths, resolution, samples=np.zeros((resolution,) * len(center), dtype=complex))
        samples = np.asarray(fn(blank.mesh()), dtype=complex)
        return blank.with_samples(np.broadcast_to(samples, blank.shape).copy())

    @classmethod
    def point_masses(cls, locations, weights, center, half_widths, resolution: int) -> "GridDistribution":
        return cls(center, half_widths, resolution, "point_masses", locations=locations, weights=weights)

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.resolution,) * self.dimension

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.center - self.half_widths, self.center + self.half_widths

    @property
    def spacing(self) -> np.ndarray:
        return 2 * self.half_widths / self.resolution

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def nyquist(self) -> np.ndarray:
        """Per-axis Nyquist frequency pi / dx."""
        return np.pi / self.spacing

    def axes(self) -> list[np.ndarray]:
        lo, _ = self.bounds
        return [lo[i] + self.spacing[i] * np.arange(self.resolution) for i in range(self.dimension)]

    def mesh(self) -> np.ndarray:
        grids = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack(grids, axis=-1)

    def _cells(self, locations: np.ndarray) -> np.ndarray:
        lo, _ = self.bounds
        idx = np.rint((locations - lo) / self.spacing).astype(int)
        return np.clip(idx, 0, self.resolution - 1)

    def dense(self) -> np.ndarray:
        """Function samples; point masses rasterized as weight / cell volume."""
        if self.kind == "function":
            return self.samples
        out = np.zeros(self.shape, dtype=complex)
        for cell, w in zip(self._cells(self.locations), self.weights, strict=True):
            out[tuple(cell)] += w / self.cell_volume
        return out

    def with_samples(self, samples: np.ndarray) -> "GridDistribution":
        return GridDistribution(self.center, self.half_widths, self.resolution, "function", samples=samples)

    def modulate(self, zeta0) -> "GridDistribution":
        """Multiply by e^{i x . zeta0}."""
        zeta0 = np.asarray(zeta0, dtype=float)
        if self.kind == "point_masses":
            phases = np.exp(1j * self.locations @ zeta0)
            return GridDistribution.point_masses(
                self.locations, self.weights * phases, self.center, self.half_widths, self.resolution
            )
        return self.with_samples(self.samples * np.exp(1j * self.mesh() @ zeta0))

    def save(self, path: Path) -> Path:
        """Write samples as <c8 and the box metadata to a JSON sidecar."""
        path = Path(path)
        write_complex64(path, self.dense())
        sidecar = GridSidecar(
            dimension=self.dimension,
            center=self.center.tolist(),
            half_widths=self.half_widths.tolist(),
            resolution=self.resolution,
            kind=self.kind,
            locations=self.locations.tolist() if self.kind == "point_masses" else [],
            weights=list(self.weights) if self.kind == "point_masses" else [],
        )
        write_json(sidecar_path(path), sidecar)
        return path

    @classmethod
    def load(cls, path: Path) -> "GridDistribution":
        path = Path(path)
        sidecar = GridSidecar.model_validate_json(sidecar_path(path).read_text())
        if sidecar.kind == "point_masses":
            return cls.point_masses(
                sidecar.locations, sidecar.weights, sidecar.center, sidecar.half_widths, sidecar.resolution
            )
        samples = read_complex64(path, (sidecar.resolution,) * sidecar.dimension)
        return cls(sidecar.center, sidecar.half_widths, sidecar.resolution, "function", samples=samples)


def default_bump(u: GridDistribution, x0, fraction: float = 0.25) -> BumpSpec:
    return BumpSpec(center=[float(c) for c in np.atleast_1d(x0)], radius=fraction * float(u.half_widths.min()))


def localize(u: GridDistribution, bump: BumpSpec) -> GridDistribution:
    """Pointwise product with the bump; point masses keep their kind."""
    center = np.asarray(bump.center, dtype=float)
    if center.shape != (u.dimension,):
        raise DomainError(f"Bump center has dimension {center.size}, grid has {u.dimension}")
    lo, hi = u.bounds
    slack = 1e-12 * float(u.half_widths.max())
    if np.any(center - bump.radius < lo - slack) or np.any(center + bump.radius > hi + slack):
        raise DomainError(
            f"Bump at {bump.center} with radius {bump.radius} leaves the box",
            center=bump.center,
            radius=bump.radius,
        )
    if u.kind == "point_masses":
        return GridDistribution.point_masses(
            u.locations, u.weights * bump(u.locations), u.center, u.half_widths, u.resolution
        )
    return u.with_samples(u.samples * bump(u.mesh()))
