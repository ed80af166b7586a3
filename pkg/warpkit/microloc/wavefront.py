"""Wavefront estimates: localize at base points, transform, classify directions by decay."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from warpkit.microloc.grid import BumpSpec, GridDistribution, default_bump, localize
from warpkit.microloc.spectrum import (
    NOISE_FLOOR,
    default_radii,
    direction_grid,
    directional_spectrum,
)

logger = logging.getLogger(__name__)

Verdict = Literal["singular", "regular"]


class WavefrontSpec(BaseModel):
    """Bump, direction set and decay-fit parameters of the wavefront estimator."""

    n_directions: int | None = Field(None, ge=1, description="Directions per base point; 32 in 2D and 64 above")
    fit_low: float = Field(0.05, gt=0, lt=1, description="Lower fit radius as a fraction of the Nyquist frequency")
    fit_high: float = Field(0.5, gt=0, lt=1, description="Upper fit radius as a fraction of the Nyquist frequency")
    n_radii: int = Field(24, ge=3, description="Log-spaced fit radii")
    n_reg: float = Field(4.0, description="Directions with N_fit below this are singular")
    bump_fraction: float = Field(0.25, gt=0, le=0.25, description="Bump radius over the smallest box half-width")
    bump_radius: float | None = Field(None, gt=0, description="Explicit bump radius; overrides bump_fraction")
    noise_floor: float = Field(NOISE_FLOOR, gt=0, description="Relative floor below which the spectrum counts as decayed")
    seed: int = Field(0, description="Seed for direction sets above two dimensions")
    workers: int = Field(1, ge=1, description="Threads across base points")

    def bump(self, u: GridDistribution, x0) -> BumpSpec:
        if self.bump_radius is not None:
            return BumpSpec(center=[float(c) for c in np.atleast_1d(x0)], radius=self.bump_radius)
        return default_bump(u, x0, self.bump_fraction)

    def radii(self, u: GridDistribution) -> np.ndarray:
        return default_radii(u, self.fit_low, self.fit_high, self.n_radii)


class WavefrontEntry(BaseModel):
    base_point: list[float]
    direction: list[float] = Field(description="Unit covector; the entry stands for the ray through it")
    n_fit: float | None = Field(description="Fitted decay exponent; None when the localization decays to the noise floor")
    verdict: Verdict


class WavefrontEstimate(BaseModel):
    entries: list[WavefrontEntry] = Field(default_factory=list)
    spec: WavefrontSpec = Field(default_factory=WavefrontSpec)
    fit_radii: list[float] = Field(default_factory=list)

    def singular(self) -> list[WavefrontEntry]:
        return [e for e in self.entries if e.verdict == "singular"]

    def singular_points(self) -> list[tuple[float, ...]]:
        return sorted({tuple(e.base_point) for e in self.singular()})

    def at(self, x0) -> list[WavefrontEntry]:
        key = [float(c) for c in np.atleast_1d(x0)]
        return [e for e in self.entries if np.allclose(e.base_point, key)]


def classify(n_fit: float | None, n_reg: float) -> Verdict:
    return "singular" if n_fit is not None and n_fit < n_reg else "regular"


def base_point_lattice(u: GridDistribution, radius: float, spacing: float | None = None) -> np.ndarray:
    """Base points on a lattice inside the box, keeping every bump of the given radius inside."""
    spacing = spacing or radius
    axes = []
    for c, w in zip(u.center, u.half_widths, strict=True):
        reach = w - radius
        n = int(np.floor(reach / spacing + 1e-9))
        axes.append(c + spacing * np.arange(-n, n + 1))
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _entries_at(
    u: GridDistribution, x0: np.ndarray, directions: np.ndarray, radii: np.ndarray, spec: WavefrontSpec
) -> list[WavefrontEntry]:
    u_loc = localize(u, spec.bump(u, x0))
    table = directional_spectrum(u_loc, directions, radii, spec.noise_floor)
    return [
        WavefrontEntry(
            base_point=[float(c) for c in x0],
            direction=row.direction,
            n_fit=row.n_fit,
            verdict=classify(row.n_fit, spec.n_reg),
        )
        for row in table
    ]


def estimate_wavefront(
    u: GridDistribution,
    base_points=None,
    direction_set=None,
    fit_range: tuple[float, float] | None = None,
    n_reg: float | None = None,
    spec: WavefrontSpec | None = None,
) -> WavefrontEstimate:
    """Classify every (base point, direction) pair of u.

    ``fit_range`` is an absolute (t_min, t_max) window that replaces the
    Nyquist-relative default; ``n_reg`` overrides ``spec.n_reg``.
    """
    spec = spec or WavefrontSpec()
    if n_reg is not None:
        spec = spec.model_copy(update={"n_reg": float(n_reg)})
    points = base_point_lattice(u, spec.bump(u, u.center).radius) if base_points is None else base_points
    points = np.asarray(points, dtype=float).reshape(-1, u.dimension)
    directions = (
        direction_grid(u.dimension, spec.n_directions, spec.seed)
        if direction_set is None
        else np.asarray(direction_set, dtype=float).reshape(-1, u.dimension)
    )
    if fit_range is not None:
        lo, hi = fit_range
        if not 0 < lo < hi:
            raise ValueError(f"Fit range must satisfy 0 < t_min < t_max, got {fit_range}")
        radii = np.geomspace(lo, hi, spec.n_radii)
    else:
        radii = spec.radii(u)
    logger.info(f"Wavefront estimate: {len(points)} base points x {len(directions)} directions")
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        per_point = list(pool.map(lambda x0: _entries_at(u, x0, directions, radii, spec), points))
    entries = [e for group in per_point for e in group]
    estimate = WavefrontEstimate(entries=entries, spec=spec, fit_radii=radii.tolist())
    logger.info(f"{len(estimate.singular())} singular entries at {len(estimate.singular_points())} base points")
    return estimate


def project_covectors(wf: WavefrontEstimate, decimals: int = 12) -> set[tuple[float, ...]]:
    """Directions appearing in any singular entry."""
    return {tuple(float(v) for v in np.round(e.direction, decimals)) for e in wf.singular()}
