"""Sampled semi-norms p_{alpha,beta} and symbol-class membership scans."""

import logging
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, Field

from warpkit.errors import WarpkitError
from warpkit.symbolkit.symbols import (
    FD_CEILING,
    MultiIndex,
    Symbol,
    SymbolEvaluationError,
    UnsupportedOrderError,
    multi_index,
    multi_indices,
    partial_derivative,
)

logger = logging.getLogger(__name__)


class InvalidSamplingError(WarpkitError):
    """A sampling spec that yields no sample points."""

    invalid_input = True


class SamplingSpec(BaseModel):
    """Radial x angular sampling of R^k x R^k used for semi-norm suprema."""

    n_radii: int = Field(64, ge=0, description="Log-spaced radii between r_min and r_max")
    r_min: float = Field(1e-2, gt=0, description="Smallest sampled radius")
    r_max: float = Field(1e3, gt=0, description="Largest sampled radius (R_max)")
    n_angles: int = Field(32, ge=0, description="Angles per sphere factor")
    n_mix: int = Field(5, ge=1, description="Mixing angles between the theta and xi spheres (k >= 2)")
    include_origin: bool = Field(True, description="Also sample (theta, xi) = (0, 0)")
    seed: int = Field(0, description="Seed for sphere grids in k >= 3")


class SeminormEstimate(BaseModel):
    alpha: list[int]
    beta: list[int]
    value: float = Field(description="Maximum sampled ratio; a lower bound on the supremum")
    argmax_theta: list[float]
    argmax_xi: list[float]
    sampling: SamplingSpec


class MembershipEntry(BaseModel):
    alpha: list[int]
    beta: list[int]
    growth_exponent: float | None = Field(
        description="Fitted log-log slope of the ratio at large radius; None when it decays to zero"
    )
    constant: float = Field(description="Estimated C_{alpha,beta}")
    passed: bool


class MembershipReport(BaseModel):
    label: str
    k: int
    order: float
    rho: float
    up_to_order: int
    growth_tolerance: float
    passed: bool
    entries: list[MembershipEntry]

    def failures(self) -> list[MembershipEntry]:
        return [e for e in self.entries if not e.passed]


def sphere_grid(dim: int, n: int, seed: int = 0) -> np.ndarray:
    """Unit vectors on S^{dim-1}: an angle grid on the circle, seeded points plus axes above."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        phi = 2 * np.pi * np.arange(n) / n
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, dim))
    axes = np.concatenate([np.eye(dim), -np.eye(dim)])
    pts = np.concatenate([axes, pts])
    return pts / np.linalg.norm(pts, axis=-1, keepdims=True)


@lru_cache(maxsize=16)
def _directions(k: int, n_angles: int, n_mix: int, seed: int) -> np.ndarray:
    if k == 1:
        return sphere_grid(2, n_angles)
    sphere = sphere_grid(k, n_angles, seed)
    mix = np.linspace(0.0, np.pi / 2, n_mix)
    out = []
    for psi in mix:
        u = np.cos(psi) * sphere[:, None, :]
        v = np.sin(psi) * sphere[None, :, :]
        pair = np.concatenate(np.broadcast_arrays(u, v), axis=-1).reshape(-1, 2 * k)
        out.append(pair)
    dirs = np.concatenate(out)
    return np.unique(np.round(dirs, 14), axis=0)


def sample_radii(spec: SamplingSpec) -> np.ndarray:
    if spec.n_radii == 0:
        return np.zeros(0)
    return np.geomspace(spec.r_min, spec.r_max, spec.n_radii)


def sample_points(spec: SamplingSpec, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (theta, xi, radius) arrays; theta/xi have shape (n, k)."""
    radii = sample_radii(spec)
    if (spec.n_angles == 0 or radii.size == 0) and not spec.include_origin:
        raise InvalidSamplingError("Sampling spec produces no points", spec=spec.model_dump())
    points = np.zeros((0, 2 * k))
    r = np.zeros(0)
    if spec.n_angles > 0 and radii.size > 0:
        dirs = _directions(k, spec.n_angles, spec.n_mix, spec.seed)
        points = (radii[:, None, None] * dirs[None, :, :]).reshape(-1, 2 * k)
        r = np.repeat(radii, len(dirs))
    if spec.include_origin:
        points = np.concatenate([np.zeros((1, 2 * k)), points])
        r = np.concatenate([[0.0], r])
    return points[:, :k], points[:, k:], r


def _ratios(
    s: Symbol, alpha: MultiIndex, beta: MultiIndex, theta, xi, radius, ceiling: int
) -> np.ndarray:
    values = np.abs(partial_derivative(s, theta, xi, alpha, beta, ceiling=ceiling))
    if not np.all(np.isfinite(values)):
        raise SymbolEvaluationError(
            f"Symbol {s.label or '<anonymous>'} is not finite on the sampling grid",
            alpha=list(alpha),
            beta=list(beta),
        )
    weight_exp = -s.order + s.rho * (sum(alpha) + sum(beta))
    return values * (1.0 + radius) ** weight_exp


def _check_order(s: Symbol, n: int, ceiling: int) -> None:
    if n > max(s.max_derivative_order, ceiling):
        raise UnsupportedOrderError(
            f"Derivative order {n} exceeds ceiling {ceiling} for {s.label or '<anonymous>'}", order=n, ceiling=ceiling
        )


def estimate_seminorm(
    s: Symbol,
    alpha=None,
    beta=None,
    sampling: SamplingSpec | None = None,
    *,
    ceiling: int = FD_CEILING,
) -> SeminormEstimate:
    """Max over samples of |D^beta D^alpha s| (1+|(theta, xi)|)^{-m+rho(|alpha|+|beta|)}."""
    sampling = sampling or SamplingSpec()
    alpha = multi_index(alpha, s.k)
    beta = multi_index(beta, s.k)
    _check_order(s, sum(alpha) + sum(beta), ceiling)
    theta, xi, radius = sample_points(sampling, s.k)
    ratios = _ratios(s, alpha, beta, theta, xi, radius, ceiling)
    i = int(np.argmax(ratios))
    return SeminormEstimate(
        alpha=list(alpha),
        beta=list(beta),
        value=float(ratios[i]),
        argmax_theta=theta[i].tolist(),
        argmax_xi=xi[i].tolist(),
        sampling=sampling,
    )


def fit_growth(radii: np.ndarray, per_radius: np.ndarray) -> float | None:
    """Log-log slope of the per-radius maxima over the outer third of radii."""
    tail = slice(len(radii) - max(len(radii) // 3, 2), None)
    r, v = radii[tail], per_radius[tail]
    keep = (v > 0) & np.isfinite(v)
    if keep.sum() < 2:
        return None
    slope, _ = np.polyfit(np.log(r[keep]), np.log(v[keep]), 1)
    return float(slope)


def verify_membership(
    s: Symbol,
    up_to_order: int = 2,
    sampling: SamplingSpec | None = None,
    growth_tolerance: float = 0.1,
    *,
    order: float | None = None,
    rho: float | None = None,
    ceiling: int = FD_CEILING,
) -> MembershipReport:
    """Scan every (alpha, beta) with |alpha|+|beta| <= up_to_order for growth.

    ``order``/``rho`` override the symbol's declared class, which is how the
    nesting law S^m_rho within S^m'_rho' is exercised.
    """
    sampling = sampling or SamplingSpec()
    if order is not None or rho is not None:
        s = s.with_class(s.order if order is None else order, s.rho if rho is None else rho)
    _check_order(s, up_to_order, ceiling)
    theta, xi, radius = sample_points(sampling, s.k)
    radii = sample_radii(sampling)
    entries = []
    for index in multi_indices(2 * s.k, up_to_order):
        beta, alpha = index[: s.k], index[s.k :]
        ratios = _ratios(s, alpha, beta, theta, xi, radius, ceiling)
        slope = None
        if radii.size >= 2 and sampling.n_angles > 0:
            shell = ratios[radius > 0].reshape(len(radii), -1).max(axis=1)
            slope = fit_growth(radii, shell)
        passed = slope is None or slope <= growth_tolerance
        entries.append(
            MembershipEntry(
                alpha=list(alpha),
                beta=list(beta),
                growth_exponent=slope,
                constant=float(ratios.max()),
                passed=passed,
            )
        )
    report = MembershipReport(
        label=s.label,
        k=s.k,
        order=s.order,
        rho=s.rho,
        up_to_order=up_to_order,
        growth_tolerance=growth_tolerance,
        passed=all(e.passed for e in entries),
        entries=entries,
    )
    logger.info(
        f"Membership of {s.label or '<anonymous>'} in S^{s.order}_{s.rho}: "
        f"{'PASS' if report.passed else 'FAIL'} ({len(report.failures())} failing indices)"
    )
    return report
