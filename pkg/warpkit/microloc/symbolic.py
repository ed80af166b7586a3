"""Wavefront estimates for symbolic distributions and for x -> I_eta(u(x))."""

import logging

import numpy as np
from pydantic import BaseModel, Field
from tqdm import tqdm

from warpkit.microloc.grid import GridDistribution
from warpkit.microloc.spectrum import continuum_transform, direction_grid, directional_decay
from warpkit.microloc.wavefront import (
    WavefrontEntry,
    WavefrontEstimate,
    WavefrontSpec,
    base_point_lattice,
    classify,
)
from warpkit.oscint.cutoff import CutoffSpec
from warpkit.oscint.distribution import Method, evaluate
from warpkit.oscint.regularize import RegularizationSpec
from warpkit.symbolkit.extended import ExtendedSymbol
from warpkit.symbolkit.seminorms import SamplingSpec, sample_points
from warpkit.symbolkit.symbols import BilinearForm, multi_index

logger = logging.getLogger(__name__)

SYMBOL_SAMPLING = SamplingSpec(n_radii=6, r_min=0.1, r_max=10.0, n_angles=8, n_mix=3)


class IndexedWavefront(BaseModel):
    alpha: list[int]
    beta: list[int]
    estimate: WavefrontEstimate


class SymbolicWavefrontReport(BaseModel):
    """Wavefront of a symbolic distribution with |.| replaced by one semi-norm per index."""

    label: str
    sampling: SamplingSpec
    indices: list[IndexedWavefront] = Field(default_factory=list)

    def union(self) -> set[tuple[tuple[float, ...], tuple[float, ...]]]:
        return {
            (tuple(e.base_point), tuple(np.round(e.direction, 12)))
            for item in self.indices
            for e in item.estimate.singular()
        }


def _weighted_fibers(
    u: ExtendedSymbol, grid: GridDistribution, alpha, beta, sampling: SamplingSpec
) -> np.ndarray:
    """(P, *grid.shape) array of D^alpha_xi D^beta_theta u(x)(z_p) (1 + |z_p|)^{rho |alpha + beta| - m}."""
    theta, xi, radius = sample_points(sampling, u.k)
    lead = (len(theta),) + (1,) * grid.dimension
    x = grid.mesh()[None]
    values = u.partial(x, theta.reshape(lead + (u.k,)), xi.reshape(lead + (u.k,)), alpha, beta)
    n = sum(alpha) + sum(beta)
    weight = (1.0 + radius) ** (u.rho * n - u.order)
    values = np.broadcast_to(values, (len(theta),) + grid.shape)
    return values * (-1j) ** n * weight.reshape(lead)


def estimate_symbolic_wavefront(
    u: ExtendedSymbol,
    center,
    half_widths,
    resolution: int,
    base_points=None,
    indices=None,
    sampling: SamplingSpec | None = None,
    spec: WavefrontSpec | None = None,
) -> SymbolicWavefrontReport:
    """Per semi-norm index (alpha, beta): sup over sampled (theta, xi) of the weighted localized transform.

    A direction is regular for the index when that supremum decays with
    exponent at least n_reg.
    """
    spec = spec or WavefrontSpec()
    sampling = sampling or SYMBOL_SAMPLING
    indices = indices or [((0,) * u.k, (0,) * u.k)]
    grid = GridDistribution.from_function(lambda x: np.zeros(x.shape[:-1]), center, half_widths, resolution)
    if grid.dimension != u.s:
        raise ValueError(f"Grid dimension {grid.dimension} does not match the base space R^{u.s}")
    points = base_point_lattice(grid, spec.bump(grid, grid.center).radius) if base_points is None else base_points
    points = np.asarray(points, dtype=float).reshape(-1, grid.dimension)
    directions = direction_grid(grid.dimension, spec.n_directions, spec.seed)
    radii = spec.radii(grid)
    report = SymbolicWavefrontReport(label=u.label, sampling=sampling)
    mesh = grid.mesh()
    for alpha, beta in indices:
        alpha, beta = multi_index(alpha, u.k), multi_index(beta, u.k)
        fibers = _weighted_fibers(u, grid, alpha, beta, sampling)
        entries = []
        for x0 in points:
            bump = spec.bump(grid, x0)
            modulus = np.abs(continuum_transform(fibers * bump(mesh), grid)).max(axis=0)
            for row in directional_decay(modulus, grid, directions, radii, spec.noise_floor):
                entries.append(
                    WavefrontEntry(
                        base_point=x0.tolist(),
                        direction=row.direction,
                        n_fit=row.n_fit,
                        verdict=classify(row.n_fit, spec.n_reg),
                    )
                )
        estimate = WavefrontEstimate(entries=entries, spec=spec, fit_radii=radii.tolist())
        logger.info(f"Index alpha={list(alpha)} beta={list(beta)}: {len(estimate.singular())} singular entries")
        report.indices.append(IndexedWavefront(alpha=list(alpha), beta=list(beta), estimate=estimate))
    return report


def oscillated_profile_grid(
    u: ExtendedSymbol,
    eta: BilinearForm,
    center,
    half_widths,
    resolution: int,
    method: Method = "cutoff",
    *,
    cutoff: CutoffSpec | None = None,
    regularization: RegularizationSpec | None = None,
    progress: bool = False,
) -> GridDistribution:
    """Samples of x -> I_eta(u(x)); separable u = g(x) s needs one evaluation."""
    if u.is_separable:
        value = evaluate(u.base, eta, method, cutoff=cutoff, regularization=regularization).value
        return GridDistribution.from_function(lambda x: value * u.profile(x), center, half_widths, resolution)
    blank = GridDistribution.from_function(lambda x: np.zeros(x.shape[:-1]), center, half_widths, resolution)
    points = blank.mesh().reshape(-1, blank.dimension)
    values = [
        evaluate(u.fiber(x), eta, method, cutoff=cutoff, regularization=regularization).value
        for x in tqdm(points, desc="fibers", disable=not progress, leave=False)
    ]
    return blank.with_samples(np.asarray(values, dtype=complex).reshape(blank.shape))
