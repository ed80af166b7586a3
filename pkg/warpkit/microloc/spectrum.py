"""Continuum-normalized DFT of grid distributions and directional decay fits."""

import logging

import numpy as np
from pydantic import BaseModel, Field
from scipy.interpolate import RegularGridInterpolator

from warpkit.errors import WarpkitError
from warpkit.microloc.grid import GridDistribution
from warpkit.symbolkit.seminorms import sphere_grid

logger = logging.getLogger(__name__)

# Relative to the spectrum maximum; values below count as decayed.
NOISE_FLOOR = 1e-13


class FrequencyRangeError(WarpkitError):
    """Sampling radii beyond the frequencies the grid resolves."""


class DirectionDecay(BaseModel):
    direction: list[float]
    radii: list[float]
    magnitudes: list[float]
    n_fit: float | None = Field(description="Fitted decay exponent; None when the spectrum sinks below the noise floor")


def frequency_axes(u: GridDistribution) -> list[np.ndarray]:
    """Ascending frequency axes matching ``continuum_transform``: n * 2 pi / (N dx), n in [-N/2, N/2)."""
    n = u.resolution
    return [2 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, d=dx)) for dx in u.spacing]


def continuum_transform(samples: np.ndarray, u: GridDistribution) -> np.ndarray:
    """u~(zeta) = int u(x) e^{i x . zeta} dx as a cell-volume weighted sum, on ``frequency_axes``.

    Leading axes of ``samples`` beyond the grid dimension are batch axes.
    """
    s = u.dimension
    grid_axes = tuple(range(samples.ndim - s, samples.ndim))
    n_total = u.resolution**s
    # sum_j u_j e^{+2 pi i j n / N} = N^s ifft(u)_n; the grid origin contributes e^{i x_0 . zeta}
    spectrum = n_total * np.fft.ifftn(samples, axes=grid_axes) * u.cell_volume
    spectrum = np.fft.fftshift(spectrum, axes=grid_axes)
    lo, _ = u.bounds
    freqs = frequency_axes(u)
    phase = np.exp(1j * sum(np.meshgrid(*[lo[i] * freqs[i] for i in range(s)], indexing="ij")))
    return spectrum * phase


def resolvable_radius(u: GridDistribution, direction: np.ndarray) -> float:
    """Largest t with t * direction inside the positive half of every frequency axis."""
    top = np.array([f[-1] for f in frequency_axes(u)])
    with np.errstate(divide="ignore"):
        limits = np.where(np.abs(direction) > 0, top / np.abs(direction), np.inf)
    return float(limits.min())


def default_radii(u: GridDistribution, low: float = 0.05, high: float = 0.5, n: int = 24) -> np.ndarray:
    """Log-spaced radii over [low, high] times the smallest axis Nyquist frequency."""
    nyquist = float(u.nyquist.min())
    return np.geomspace(low * nyquist, high * nyquist, n)


def right_sup_envelope(values: np.ndarray) -> np.ndarray:
    """env[i] = max(values[i:]); monotone and immune to zeros of an oscillating transform."""
    return np.maximum.accumulate(values[::-1])[::-1]


def fit_decay(radii: np.ndarray, magnitudes: np.ndarray, floor: float) -> float | None:
    """-slope of log env against log t over the radii above the floor; None if fewer than three remain."""
    env = right_sup_envelope(np.asarray(magnitudes, dtype=float))
    keep = env > floor
    if keep.sum() < 3:
        return None
    slope, _ = np.polyfit(np.log(radii[keep]), np.log(env[keep]), 1)
    return float(-slope)


def _interpolator(modulus: np.ndarray, u: GridDistribution):
    axes = frequency_axes(u)
    if u.dimension == 1:
        return lambda pts: np.interp(pts[:, 0], axes[0], modulus)
    return RegularGridInterpolator(axes, modulus, method="linear", bounds_error=True)


def directional_decay(
    modulus: np.ndarray,
    u: GridDistribution,
    directions: np.ndarray,
    radii: np.ndarray,
    noise_floor: float = NOISE_FLOOR,
) -> list[DirectionDecay]:
    """Sample |u~(t zeta)| along each unit direction and fit the decay exponent."""
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    radii = np.asarray(radii, dtype=float)
    if directions.shape[-1] != u.dimension:
        raise ValueError(f"Directions must have {u.dimension} components, got shape {directions.shape}")
    if np.any(radii <= 0):
        raise FrequencyRangeError("Sampling radii must be positive", radii=radii.tolist())
    norms = np.linalg.norm(directions, axis=-1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("Directions must be nonzero")
    directions = directions / norms
    for d in directions:
        limit = resolvable_radius(u, d)
        if radii.max() > limit:
            raise FrequencyRangeError(
                f"Radius {radii.max():.4g} exceeds the resolvable {limit:.4g} along {d.tolist()}",
                direction=d.tolist(),
                limit=limit,
            )
    interp = _interpolator(modulus, u)
    floor = noise_floor * float(modulus.max()) if modulus.size else 0.0
    out = []
    for d in directions:
        values = np.asarray(interp(radii[:, None] * d[None, :]), dtype=float)
        n_fit = fit_decay(radii, values, floor) if floor > 0 else None
        out.append(DirectionDecay(direction=d.tolist(), radii=radii.tolist(), magnitudes=values.tolist(), n_fit=n_fit))
    return out


def directional_spectrum(
    u_loc: GridDistribution,
    directions: np.ndarray,
    radii: np.ndarray | None = None,
    noise_floor: float = NOISE_FLOOR,
) -> list[DirectionDecay]:
    """Decay table of |u~| along unit covectors, one fit per direction."""
    radii = default_radii(u_loc) if radii is None else np.asarray(radii, dtype=float)
    modulus = np.abs(continuum_transform(u_loc.dense(), u_loc))
    table = directional_decay(modulus, u_loc, directions, radii, noise_floor)
    logger.debug(
        f"Directional spectrum over t in [{radii.min():.4g}, {radii.max():.4g}]: "
        f"{sum(1 for row in table if row.n_fit is not None)} of {len(table)} directions above the floor"
    )
    return table


def direction_grid(dim: int, n: int | None = None, seed: int = 0) -> np.ndarray:
    """{+1, -1} in 1D, n uniform angles (default 32) in 2D, axes plus seeded points (default 64) above."""
    return sphere_grid(dim, n or (32 if dim == 2 else 64), seed)
