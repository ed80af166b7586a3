"""Warped convolutions of Fock-space operators and warped n-point distributions."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from warpkit.fockfield.lattice import MINKOWSKI, FockBasis, ModeLattice
from warpkit.fockfield.npoint import npoint
from warpkit.fockfield.operators import FockOperator, build_field_operator, state_momenta
from warpkit.jsonio import JsonComplex
from warpkit.oscint.cutoff import CutoffSpec
from warpkit.symbolkit.seminorms import MembershipReport, SamplingSpec, verify_membership
from warpkit.symbolkit.symbols import ANALYTIC_ORDER, Symbol
from warpkit.symbolkit.testfunction import TestFunction
from warpkit.warp.deformation import DeformationMatrix
from warpkit.warp.phases import (
    PhaseMethod,
    evaluate_phase_terms,
    numeric_phase_integral,
    phase_expansion,
    pure_phase_integral,
    restricted_phase_integral,
)

logger = logging.getLogger(__name__)

Ordering = Literal["standard", "alternate"]
WarpMethod = Literal["closed-form", "cutoff"]

CERTIFICATE_SAMPLING = SamplingSpec(n_radii=16, r_min=0.1, r_max=1e3, n_angles=8, n_mix=3)


class WarpSettings(BaseModel):
    method: WarpMethod = Field("closed-form", description="Pure-phase rule, or factorized cutoff integrals per entry")
    ordering: Ordering = Field("standard", description="U(xi) after the adjoint action, or before it")
    cutoff: CutoffSpec | None = None
    workers: int = Field(1, ge=1)


def _check_context(q: DeformationMatrix, lattice: ModeLattice, basis: FockBasis) -> np.ndarray:
    if q.dimension != 2:
        raise ValueError(f"The Fock model lives in d=2, got Q on R^{q.dimension}")
    return state_momenta(lattice, basis)


def _frequencies(q: np.ndarray, momenta: np.ndarray, ordering: Ordering) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) of every matrix element, shapes (D, D, d)."""
    m = MINKOWSKI.matrix
    diff = momenta[:, None, :] - momenta[None, :, :]
    u = diff @ (q.T @ m).T
    side = momenta[None, :, :] if ordering == "standard" else momenta[:, None, :]
    v = np.broadcast_to(side @ m.T, u.shape)
    return u, v


def warp_operator(
    a: FockOperator,
    q: DeformationMatrix,
    lattice: ModeLattice,
    basis: FockBasis,
    settings: WarpSettings | None = None,
) -> FockOperator:
    """(W_Q[A])_ij = I_eta of A_ij e^{i eta(Q theta, P_i - P_j)} e^{i eta(xi, P_j)}.

    U is diagonal, so every entry is one pure-phase integral; closed form it
    is A_ij e^{i eta(Q P_j, P_i)}.
    """
    settings = settings or WarpSettings()
    momenta = _check_context(q, lattice, basis)
    u, v = _frequencies(q.matrix, momenta, settings.ordering)
    if settings.method == "closed-form":
        factors = pure_phase_integral(u, v, MINKOWSKI)
    else:
        rows, cols = np.nonzero(a.matrix)
        keys = sorted({(tuple(u[i, j]), tuple(v[i, j])) for i, j in zip(rows, cols, strict=True)})
        logger.info(f"Cutoff warp of {a.label}: {len(keys)} distinct phase terms")
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            values = list(
                pool.map(lambda key: numeric_phase_integral(np.array(key[0]), np.array(key[1]), MINKOWSKI, settings.cutoff), keys)
            )
        table = dict(zip(keys, values, strict=True))
        factors = np.zeros(a.matrix.shape, dtype=complex)
        for i, j in zip(rows, cols, strict=True):
            factors[i, j] = table[(tuple(u[i, j]), tuple(v[i, j]))]
    return FockOperator(a.matrix * factors, f"W_Q[{a.label}]", a.leakage)


def warped_symbol(
    psi1: np.ndarray,
    psi2: np.ndarray,
    f: TestFunction,
    q: DeformationMatrix,
    lattice: ModeLattice,
    basis: FockBasis,
) -> Symbol:
    """(theta, xi) -> <psi1, U(Q theta) Phi(f) U(-Q theta) U(xi) psi2>, declared in S^0_0."""
    momenta = _check_context(q, lattice, basis)
    phi = build_field_operator(f, lattice, basis).matrix
    weights = np.conj(np.asarray(psi1, dtype=complex))[:, None] * phi * np.asarray(psi2, dtype=complex)[None, :]
    rows, cols = np.nonzero(weights)
    u_all, v_all = _frequencies(q.matrix, momenta, "standard")
    coeffs = weights[rows, cols]
    u, v = u_all[rows, cols], v_all[rows, cols]

    def partial(theta, xi, alpha, beta):
        theta = np.asarray(theta, dtype=float)
        xi = np.asarray(xi, dtype=float)
        factor = coeffs * np.prod((1j * u) ** np.asarray(beta), axis=-1) * np.prod((1j * v) ** np.asarray(alpha), axis=-1)
        phase = np.exp(1j * (theta @ u.T + xi @ v.T))
        return phase @ factor

    return Symbol(
        k=2,
        order=0.0,
        rho=0.0,
        partial=partial,
        max_derivative_order=ANALYTIC_ORDER,
        label=f"<psi1, U(Q theta) Phi({f.label}) U(-Q theta) U(xi) psi2>",
    )


@dataclass(frozen=True, eq=False)
class WarpedNPointSpec:
    """<psi, W_{Q_1}[Phi(f_1)] ... W_{Q_n}[Phi(f_n)] psi>."""

    psi: np.ndarray
    factors: tuple[tuple[DeformationMatrix, TestFunction], ...]
    method: WarpMethod = "closed-form"
    cross_check: bool = False
    cutoff: CutoffSpec | None = None
    strict: bool = True
    workers: int = field(default=1)

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex).reshape(-1)
        if not self.factors:
            raise ValueError("Warped n-point functions need at least one factor")
        if not np.isclose(np.linalg.norm(psi), 1.0, atol=1e-10):
            raise ValueError(f"State must be normalized, |psi| = {np.linalg.norm(psi):.12g}")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "factors", tuple(tuple(pair) for pair in self.factors))

    @property
    def order(self) -> int:
        return len(self.factors)


class WarpedNPointResult(BaseModel):
    value: JsonComplex
    order: int
    method: WarpMethod
    exact: bool
    particle_headroom: int
    occupation_headroom: int
    leakage: float
    cross_check: JsonComplex | None = Field(None, description="Value from the other evaluation path")
    cross_check_delta: float | None = None


def warped_npoint_oracle(
    spec: WarpedNPointSpec, lattice: ModeLattice, basis: FockBasis, method: PhaseMethod = "phase-sum"
) -> complex:
    """Brute-force path sum over lattice momenta, independent of the operator products."""
    fields = [build_field_operator(f, lattice, basis).matrix for _, f in spec.factors]
    terms = phase_expansion(
        spec.psi, fields, [q.matrix for q, _ in spec.factors], state_momenta(lattice, basis), MINKOWSKI
    )
    return evaluate_phase_terms(terms, MINKOWSKI, method, cutoff=spec.cutoff, workers=spec.workers)


def warped_npoint(spec: WarpedNPointSpec, lattice: ModeLattice, basis: FockBasis) -> WarpedNPointResult:
    """Product of warped field operators; the cutoff path and cross-checks need n <= 2."""
    if (spec.method == "cutoff" or spec.cross_check) and spec.order > 2:
        raise ValueError(f"The numeric path covers n <= 2, got n = {spec.order}")
    warped = [
        warp_operator(build_field_operator(f, lattice, basis), q, lattice, basis) for q, f in spec.factors
    ]
    base = npoint(spec.psi, [f for _, f in spec.factors], lattice, basis, strict=spec.strict, operators=warped)
    closed = complex(base.value)
    numeric = warped_npoint_oracle(spec, lattice, basis, "oscint") if spec.method == "cutoff" or spec.cross_check else None
    value, other = (closed, numeric) if spec.method == "closed-form" else (numeric, closed)
    result = WarpedNPointResult(
        value=value,
        order=spec.order,
        method=spec.method,
        exact=base.exact,
        particle_headroom=base.particle_headroom,
        occupation_headroom=base.occupation_headroom,
        leakage=base.leakage,
        cross_check=other,
        cross_check_delta=abs(value - other) if other is not None else None,
    )
    logger.info(f"Warped {spec.order}-point ({spec.method}): {value}")
    return result


class AlternateFormReport(BaseModel):
    columns: list[int]
    discrepancy: float


def alternate_form_check(
    a: FockOperator, q: DeformationMatrix, lattice: ModeLattice, basis: FockBasis, seed: int = 0
) -> AlternateFormReport:
    """Max entrywise difference of the two orderings on the vacuum column and one random column."""
    column = int(np.random.default_rng(seed).integers(1, basis.dimension))
    columns = [0, column]
    standard = warp_operator(a, q, lattice, basis, WarpSettings(ordering="standard")).matrix[:, columns]
    alternate = warp_operator(a, q, lattice, basis, WarpSettings(ordering="alternate")).matrix[:, columns]
    return AlternateFormReport(columns=columns, discrepancy=float(np.max(np.abs(standard - alternate))))


class KernelRestriction(BaseModel):
    kernel_dimension: int
    constant: float = Field(description="Restricted integral divided by the full one")


def kernel_restricted_warp(
    a: FockOperator, q: DeformationMatrix, lattice: ModeLattice, basis: FockBasis
) -> tuple[FockOperator, KernelRestriction]:
    """Warp with theta restricted to ker(Q)^perp and xi to eta^{-1} ker(Q)^perp."""
    momenta = _check_context(q, lattice, basis)
    theta_basis = q.complement()
    if theta_basis.shape[1]:
        xi_basis, r = np.linalg.qr(np.linalg.solve(MINKOWSKI.matrix, theta_basis))
        constant = float(abs(np.linalg.det(r)))
    else:
        xi_basis, constant = theta_basis, 1.0
    u, v = _frequencies(q.matrix, momenta, "standard")
    factors = restricted_phase_integral(u, v, MINKOWSKI, theta_basis, xi_basis)
    report = KernelRestriction(kernel_dimension=q.dimension - theta_basis.shape[1], constant=constant)
    return FockOperator(a.matrix * factors, f"W_Q|ker[{a.label}]", a.leakage), report


class WeakIntegrabilityReport(BaseModel):
    """Finite S^0_0 semi-norm estimates of the warped integrand."""

    finite: bool
    membership: MembershipReport


def weak_integrability_certificate(
    psi1: np.ndarray,
    psi2: np.ndarray,
    f: TestFunction,
    q: DeformationMatrix,
    lattice: ModeLattice,
    basis: FockBasis,
    sampling: SamplingSpec | None = None,
    up_to_order: int = 2,
) -> WeakIntegrabilityReport:
    s = warped_symbol(psi1, psi2, f, q, lattice, basis)
    membership = verify_membership(s, up_to_order, sampling or CERTIFICATE_SAMPLING)
    finite = all(np.isfinite(e.constant) for e in membership.entries)
    return WeakIntegrabilityReport(finite=finite, membership=membership)


class DomainInvarianceReport(BaseModel):
    leakage_bound: float = Field(description="Leakage recorded on Phi(f) in the truncated space")
    measured_leakage: float = Field(description="Norm of the warped operator's block leaving the truncation")
    headroom_leakage: float = Field(description="The same block restricted to states with headroom")
    passed: bool


def domain_invariance_report(
    f: TestFunction, q: DeformationMatrix, lattice: ModeLattice, basis: FockBasis
) -> DomainInvarianceReport:
    """Warp Phi(f) on a basis one level larger and measure what leaves the original truncation."""
    bound = build_field_operator(f, lattice, basis).leakage
    large = FockBasis(n_modes=basis.n_modes, n_max=basis.n_max + 1, n_total=basis.n_total + 1)
    warped = warp_operator(build_field_operator(f, lattice, large), q, lattice, large).matrix
    inside = np.array([large.index[s] for s in basis.states])
    outside = np.setdiff1d(np.arange(large.dimension), inside)
    block = warped[np.ix_(outside, inside)]
    occupations = basis.occupations
    headroom = (basis.particle_numbers() < basis.n_total) & (occupations.max(axis=1) < basis.n_max)
    measured = float(np.linalg.norm(block))
    headroom_leakage = float(np.linalg.norm(block[:, headroom]))
    return DomainInvarianceReport(
        leakage_bound=bound,
        measured_leakage=measured,
        headroom_leakage=headroom_leakage,
        passed=measured <= bound * (1 + 1e-9) + 1e-12 and headroom_leakage <= 1e-12,
    )
