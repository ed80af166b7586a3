"""Grid samples of the vacuum two-point function in the difference variable x - y."""

import logging
import math

import numpy as np
from pydantic import BaseModel, Field

from warpkit.microloc.grid import GridDistribution
from warpkit.oscint.cutoff import mollifier

logger = logging.getLogger(__name__)


class TwoPointGridSpec(BaseModel):
    """Dense momentum lattice behind the sampled two-point function.

    The lattice period 2 pi / spacing in space must exceed the box width so
    that periodic images of the light cone stay outside the grid.
    """

    mass: float = Field(1.0, gt=0)
    spacing: float = Field(2 * math.pi / 16, gt=0, description="Momentum lattice spacing")
    half_width: float = Field(2.0, gt=0, description="Half-width of the (t, x) box")
    resolution: int = Field(512, ge=16)
    taper: float = Field(1.0, gt=0, le=1, description="Momenta are tapered to zero at this fraction of the Nyquist frequency")


def vacuum_two_point_grid(spec: TwoPointGridSpec | None = None) -> GridDistribution:
    """W(t, x) = sum_p dp / (2 pi) psi(|p| / p_max) e^{-i (omega_p t - p x)} / (2 omega_p).

    psi is the standard mollifier, so the only singularity the grid sees is
    the light cone |t| = |x|.
    """
    spec = spec or TwoPointGridSpec()
    if 2 * math.pi / spec.spacing <= 2 * spec.half_width:
        raise ValueError(
            f"Momentum spacing {spec.spacing:.4g} repeats the light cone inside the box of half-width {spec.half_width}"
        )
    blank = GridDistribution.from_function(lambda x: np.zeros(x.shape[:-1]), [0.0, 0.0], spec.half_width, spec.resolution)
    p_max = spec.taper * float(blank.nyquist.min())
    n = int(np.floor(p_max / spec.spacing))
    p = spec.spacing * np.arange(-n, n + 1)
    omega = np.sqrt(p**2 + spec.mass**2)
    weights = spec.spacing / (2 * math.pi) * mollifier(p / p_max) / (2 * omega)
    t_axis, x_axis = blank.axes()
    # e^{-i omega t} and e^{i p x} factor, so the grid is one matrix product
    in_time = np.exp(-1j * np.outer(t_axis, omega))
    in_space = weights[:, None] * np.exp(1j * np.outer(p, x_axis))
    samples = in_time @ in_space
    logger.info(f"Vacuum two-point grid: {len(p)} momenta up to {p_max:.4g}, {spec.resolution}^2 samples")
    return blank.with_samples(samples)
