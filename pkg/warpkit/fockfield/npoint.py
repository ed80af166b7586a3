"""n-point distributions of vector states, their oracles and state diagnostics."""

import logging
import math

import numpy as np
from pydantic import BaseModel, Field

from warpkit.errors import WarpkitError
from warpkit.fockfield.lattice import FockBasis, ModeLattice
from warpkit.fockfield.operators import (
    FockOperator,
    build_field_operator,
    on_shell_transform,
    state_momenta,
)
from warpkit.jsonio import JsonComplex
from warpkit.symbolkit.testfunction import TestFunction

logger = logging.getLogger(__name__)

SUPPORT_THRESHOLD = 1e-14


class TruncationError(WarpkitError):
    """The state has too little headroom below the cutoffs for an exact product."""


class NPointResult(BaseModel):
    value: JsonComplex
    order: int
    exact: bool = Field(description="True when the state has headroom for every intermediate vector")
    particle_headroom: int
    occupation_headroom: int
    leakage: float = Field(description="Summed leakage bounds of the field operators")


def _support(psi: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.abs(psi) > SUPPORT_THRESHOLD)


def _check_normalized(psi: np.ndarray, basis: FockBasis) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (basis.dimension,):
        raise ValueError(f"State has {psi.size} components, basis has {basis.dimension}")
    if not math.isclose(float(np.linalg.norm(psi)), 1.0, abs_tol=1e-10):
        raise ValueError(f"State must be normalized, |psi| = {np.linalg.norm(psi):.12g}")
    return psi


def npoint(
    psi: np.ndarray,
    fs: list[TestFunction],
    lattice: ModeLattice,
    basis: FockBasis,
    *,
    strict: bool = True,
    operators: list[FockOperator] | None = None,
) -> NPointResult:
    """<psi, Phi(f_1) ... Phi(f_n) psi>.

    The truncated product is exact when the support of psi stays ceil(n/2)
    below both cutoffs. Otherwise raise TruncationError, or with
    ``strict=False`` return the value flagged as inexact.
    """
    psi = _check_normalized(psi, basis)
    ops = operators if operators is not None else [build_field_operator(f, lattice, basis) for f in fs]
    need = math.ceil(len(ops) / 2)
    support = _support(psi)
    occupations = basis.occupations[support]
    particle_headroom = basis.n_total - int(occupations.sum(axis=1).max()) - need
    occupation_headroom = basis.n_max - int(occupations.max()) - need
    exact = particle_headroom >= 0 and occupation_headroom >= 0
    if not exact:
        message = (
            f"{len(ops)}-point function needs {need} free levels; headroom is "
            f"{particle_headroom} (particles) and {occupation_headroom} (occupation)"
        )
        if strict:
            raise TruncationError(
                message, particle_headroom=particle_headroom, occupation_headroom=occupation_headroom
            )
        logger.warning(message)
    vector = psi
    for op in reversed(ops):
        vector = op.apply(vector)
    return NPointResult(
        value=complex(np.vdot(psi, vector)),
        order=len(ops),
        exact=exact,
        particle_headroom=particle_headroom,
        occupation_headroom=occupation_headroom,
        leakage=float(sum(op.leakage for op in ops)),
    )


def two_point_mode_sum(f1: TestFunction, f2: TestFunction, lattice: ModeLattice) -> complex:
    """Vacuum two-point function as sum_p f1~(-k_p) f2~(k_p) / (2 omega_p)."""
    _, minus = on_shell_transform(f1, lattice)
    plus, _ = on_shell_transform(f2, lattice)
    return complex(np.sum(minus * plus / (2 * lattice.frequencies())))


def wick_four_point(fs: list[TestFunction], lattice: ModeLattice) -> complex:
    """Sum over the three pairings of the vacuum two-point function."""
    if len(fs) != 4:
        raise ValueError(f"Wick four-point oracle takes four test functions, got {len(fs)}")

    def w(i: int, j: int) -> complex:
        return two_point_mode_sum(fs[i], fs[j], lattice)

    return w(0, 1) * w(2, 3) + w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2)


class SmoothnessReport(BaseModel):
    """Every truncated vector is smooth for the translations: a -> U(a) psi is entire."""

    smooth: bool = True
    support_size: int
    max_momentum: list[float] = Field(description="Total momentum of the occupied state with the largest norm")
    momentum_bound: float = Field(description="max |P| over the occupied states")

    def derivative_bound(self, order: int) -> float:
        """|d^alpha U(a) psi| <= |P|^|alpha| |psi| with |alpha| = order."""
        return self.momentum_bound**order


def smoothness_certificate(psi: np.ndarray, lattice: ModeLattice, basis: FockBasis) -> SmoothnessReport:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    support = _support(psi)
    momenta = state_momenta(lattice, basis)[support]
    if len(momenta) == 0:
        return SmoothnessReport(support_size=0, max_momentum=[0.0, 0.0], momentum_bound=0.0)
    norms = np.linalg.norm(momenta, axis=-1)
    top = int(np.argmax(norms))
    return SmoothnessReport(
        support_size=len(support),
        max_momentum=momenta[top].tolist(),
        momentum_bound=float(norms[top]),
    )


class PositivityReport(BaseModel):
    values: list[float]
    minimum: float
    tolerance: float
    passed: bool


def positivity_scan(
    lattice: ModeLattice,
    basis: FockBasis,
    n_polynomials: int = 20,
    n_functions: int = 3,
    seed: int = 0,
    tolerance: float = 1e-10,
) -> PositivityReport:
    """<Omega, A^* A Omega> for random polynomials A of degree <= 2 in field operators."""
    rng = np.random.default_rng(seed)
    fields = [
        build_field_operator(
            TestFunction.bump(rng.uniform(-1.0, 1.0, size=2), float(rng.uniform(0.5, 1.0))), lattice, basis
        ).matrix
        for _ in range(n_functions)
    ]
    omega = basis.vacuum()
    values = []
    for _ in range(n_polynomials):
        coeffs = rng.normal(size=(1 + n_functions + n_functions**2, 2)) @ np.array([1.0, 1j])
        a = coeffs[0] * np.eye(basis.dimension, dtype=complex)
        for i, phi in enumerate(fields):
            a = a + coeffs[1 + i] * phi
            for j, chi in enumerate(fields):
                a = a + coeffs[1 + n_functions + i * n_functions + j] * (phi @ chi)
        values.append(float(np.vdot(omega, a.conj().T @ a @ omega).real))
    minimum = min(values)
    logger.info(f"Positivity scan: min <Omega, A*A Omega> = {minimum:.3g} over {n_polynomials} polynomials")
    return PositivityReport(values=values, minimum=minimum, tolerance=tolerance, passed=minimum >= -tolerance)
