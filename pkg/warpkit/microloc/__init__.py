"""Wavefront-set estimation for grid-sampled and symbolic distributions."""

from warpkit.microloc.grid import BumpSpec, DomainError, GridDistribution, GridSidecar, localize
from warpkit.microloc.plots import plot_wavefront
from warpkit.microloc.spectrum import (
    DirectionDecay,
    FrequencyRangeError,
    continuum_transform,
    direction_grid,
    directional_spectrum,
    frequency_axes,
)
from warpkit.microloc.symbolic import (
    SymbolicWavefrontReport,
    estimate_symbolic_wavefront,
    oscillated_profile_grid,
)
from warpkit.microloc.wavefront import (
    WavefrontEntry,
    WavefrontEstimate,
    WavefrontSpec,
    base_point_lattice,
    estimate_wavefront,
    project_covectors,
)

__all__ = [
    "BumpSpec",
    "DirectionDecay",
    "DomainError",
    "FrequencyRangeError",
    "GridDistribution",
    "GridSidecar",
    "SymbolicWavefrontReport",
    "WavefrontEntry",
    "WavefrontEstimate",
    "WavefrontSpec",
    "base_point_lattice",
    "continuum_transform",
    "direction_grid",
    "directional_spectrum",
    "estimate_symbolic_wavefront",
    "estimate_wavefront",
    "frequency_axes",
    "localize",
    "oscillated_profile_grid",
    "plot_wavefront",
    "project_covectors",
]
