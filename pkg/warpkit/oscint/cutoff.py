"""Cutoff-and-extrapolate evaluation of the oscillatory integral I_eta."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator
from tqdm import tqdm

from warpkit.oscint.result import DivergenceError, OscDiagnostics, OscResult, extrapolate
from warpkit.symbolkit.symbols import BilinearForm, Symbol

logger = logging.getLogger(__name__)


def mollifier(t: np.ndarray) -> np.ndarray:
    """psi(t) = exp(1 - 1/(1 - t^2)) on |t| < 1, zero outside; psi(0) = 1."""
    t2 = np.minimum(np.asarray(t, dtype=float) ** 2, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(t2 < 1.0, np.exp(1.0 - 1.0 / (1.0 - t2)), 0.0)


class CutoffSpec(BaseModel):
    """Cutoff chi, eps schedule and quadrature resolution for eval_cutoff."""

    profile: Literal["product", "radial"] = Field(
        "product", description="Product of 1D mollifiers, or a mollifier of |(theta, xi)|"
    )
    radius: float = Field(1.0, gt=0, description="Support radius of chi")
    eps0: float = Field(0.5, gt=0, description="Largest eps of the schedule")
    ratio: float = Field(0.5, gt=0, lt=1, description="Geometric ratio of the eps schedule")
    n_terms: int = Field(6, ge=2, description="Number of eps values")
    depth: int = Field(4, ge=0, description="Richardson depth in powers of eps^2")
    aliasing_margin: float = Field(400.0, gt=0, description="Frequency margin for the cutoff spectrum, scaled by 1/R")
    bandwidth: float = Field(8.0, ge=0, description="Frequency margin for the symbol's own spectrum")
    tolerance: float = Field(1e-8, gt=0, description="Relative spread above which a warning is recorded")
    chunk_size: int = Field(1_000_000, ge=1, description="Integrand samples evaluated per block")
    workers: int = Field(1, ge=1, description="Threads used across eps values")

    @model_validator(mode="after")
    def _check_depth(self):
        if self.depth > self.n_terms - 1:
            raise ValueError(f"Richardson depth {self.depth} needs at least {self.depth + 1} terms")
        return self

    @classmethod
    def for_dimension(cls, k: int, **overrides) -> "CutoffSpec":
        """Defaults tuned for k = 1; higher k trades depth for grid size."""
        if k == 1:
            return cls(**overrides)
        defaults = dict(eps0=0.125, ratio=2**-0.5, n_terms=3, depth=2, aliasing_margin=100.0, tolerance=1e-5)
        defaults.update(overrides)
        return cls(**defaults)

    def schedule(self) -> list[float]:
        return [self.eps0 * self.ratio**n for n in range(self.n_terms)]

    def chi(self, z: np.ndarray) -> np.ndarray:
        """chi on stacked points z of shape (..., 2k)."""
        z = np.asarray(z, dtype=float) / self.radius
        if self.profile == "radial":
            return mollifier(np.linalg.norm(z, axis=-1))
        return np.prod(mollifier(z), axis=-1)


def _grid(spec: CutoffSpec, eta: BilinearForm, eps: float) -> tuple[np.ndarray, float]:
    """1D trapezoid nodes covering supp chi(eps .), resolved against the phase."""
    big_r = spec.radius / eps
    m = np.abs(eta.matrix)
    omega = max(m.sum(axis=0).max(), m.sum(axis=1).max()) * big_r
    h = 2 * math.pi / (omega + spec.aliasing_margin / big_r + spec.bandwidth)
    n = math.ceil(big_r / h)
    step = big_r / n
    # chi vanishes with all derivatives at +-R, so the end nodes drop out.
    return step * np.arange(-n + 1, n), step


def _tensor(nodes: np.ndarray, k: int) -> np.ndarray:
    mesh = np.meshgrid(*([nodes] * k), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=-1)


def cutoff_integral(
    s: Symbol, eta: BilinearForm, spec: CutoffSpec, eps: float, *, progress: bool = False
) -> complex:
    """(2 pi)^{-k} int e^{-i eta(theta, xi)} chi(eps theta, eps xi) s(theta, xi) by the trapezoid rule."""
    k = s.k
    nodes, step = _grid(spec, eta, eps)
    points = _tensor(nodes, k)
    n = len(points)
    tm = points @ eta.matrix
    chi_1d = None
    if spec.profile == "product":
        chi_1d = np.prod(mollifier(eps * points / spec.radius), axis=-1)
    rows = max(1, spec.chunk_size // n)
    total = 0j
    blocks = range(0, n, rows)
    for start in tqdm(blocks, desc=f"eps={eps:.4g}", disable=not progress, leave=False):
        theta = points[start : start + rows]
        phase = np.exp(-1j * (tm[start : start + rows] @ points.T))
        values = s.partial(theta[:, None, :], points[None, :, :], (0,) * k, (0,) * k)
        if chi_1d is not None:
            weight = chi_1d[start : start + rows, None] * chi_1d[None, :]
        else:
            z = np.concatenate(np.broadcast_arrays(theta[:, None, :], points[None, :, :]), axis=-1)
            weight = spec.chi(eps * z)
        total += complex(np.sum(phase * weight * values))
    result = total * step ** (2 * k) / (2 * math.pi) ** k
    if not np.isfinite(result):
        raise DivergenceError(f"Cutoff integral of {s.label} is not finite at eps={eps}", eps=eps)
    logger.debug(f"eps={eps:.4g}: {n * n} samples, value {result}")
    return result


def eval_cutoff(
    s: Symbol,
    eta: BilinearForm,
    spec: CutoffSpec | None = None,
    *,
    progress: bool = False,
) -> OscResult:
    """I_eta(s) as the Richardson limit eps -> 0 of cutoff integrals."""
    if s.k != eta.dimension:
        raise ValueError(f"Symbol has k={s.k} but the form acts on R^{eta.dimension}")
    spec = spec or CutoffSpec.for_dimension(s.k)
    eps = spec.schedule()
    logger.info(f"Cutoff evaluation of {s.label or '<anonymous>'}: k={s.k}, eps down to {eps[-1]:.4g}")
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        values = list(pool.map(lambda e: cutoff_integral(s, eta, spec, e, progress=progress), eps))
    value, error, diagonal = extrapolate(values, eps, spec.depth)
    converged = error <= spec.tolerance * max(1.0, abs(value))
    diagnostics = OscDiagnostics(eps=eps, partial_values=values, extrapolants=diagonal)
    if not converged:
        note = f"Richardson spread {error:.3g} above tolerance {spec.tolerance:.3g}"
        diagnostics.notes.append(note)
        logger.warning(f"{s.label or '<anonymous>'}: {note}")
    return OscResult(
        value=value,
        error_estimate=error,
        method="cutoff",
        converged=converged,
        diagnostics=diagnostics,
    )
