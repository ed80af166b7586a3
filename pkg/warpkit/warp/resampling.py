"""Boosts on the momentum lattice by nearest-momentum resampling, and covariance checks."""

import logging

import numpy as np
from pydantic import BaseModel, Field

from warpkit.fockfield.lattice import MINKOWSKI, FockBasis, ModeLattice
from warpkit.fockfield.operators import FockOperator, state_momenta, translation_unitary
from warpkit.warp.deformation import ConditioningError, DeformationMatrix, LorentzElement, lorentz_transport
from warpkit.warp.warping import warp_operator

logger = logging.getLogger(__name__)


class BoostResampling(BaseModel):
    permutation: list[int] = Field(description="Mode p goes to mode permutation[p]")
    error: float = Field(description="max_p |Lambda k_p - k_{permutation[p]}|")


def boost_resampling(lam: LorentzElement, lattice: ModeLattice) -> BoostResampling:
    """Send every on-shell k_p to the lattice mode nearest to Lambda k_p in spatial momentum."""
    if lam.dimension != 2:
        raise ValueError(f"The momentum lattice lives in d=2, got Lambda on R^{lam.dimension}")
    k = lattice.on_shell()
    moved = lam.apply(k)
    momenta = lattice.momenta()
    targets = np.argmin(np.abs(moved[:, 1:2] - momenta[None, :]), axis=1)
    if len(set(targets.tolist())) != len(targets):
        raise ConditioningError(
            "Boost is too large for the lattice: nearest-momentum resampling is not a bijection",
            targets=targets.tolist(),
        )
    error = float(np.max(np.linalg.norm(moved - k[targets], axis=-1)))
    logger.debug(f"Boost resampling {targets.tolist()} with error {error:.3g}")
    return BoostResampling(permutation=targets.tolist(), error=error)


def boost_unitary(lam: LorentzElement, lattice: ModeLattice, basis: FockBasis) -> tuple[FockOperator, BoostResampling]:
    """Permutation of occupation tuples induced by the resampled mode permutation."""
    basis.check_lattice(lattice)
    resampling = boost_resampling(lam, lattice)
    perm = resampling.permutation
    matrix = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for j, state in enumerate(basis.states):
        moved = [0] * basis.n_modes
        for p, n in enumerate(state):
            moved[perm[p]] = n
        matrix[basis.index[tuple(moved)], j] = 1.0
    return FockOperator(matrix, "U(Lambda)"), resampling


class CovarianceReport(BaseModel):
    discrepancy: float
    tolerance: float
    resampling_error: float
    passed: bool


def covariance_report(
    a: FockOperator,
    q: DeformationMatrix,
    lattice: ModeLattice,
    basis: FockBasis,
    translation=None,
    boost: LorentzElement | None = None,
) -> CovarianceReport:
    """Compare U W_Q[A] U^{-1} with W_{Lambda Q Lambda^{T_eta}}[U A U^{-1}] for U = U(a) U(Lambda).

    Translations are exact; the boost error of the resampled lattice enters the
    tolerance through the phase bound |Q'| (2 delta (P_max + delta) + delta^2).
    """
    u = FockOperator.identity(basis)
    moved_q = q
    resampling_error = 0.0
    if boost is not None:
        u, resampling = boost_unitary(boost, lattice, basis)
        resampling_error = resampling.error
        moved_q = lorentz_transport(q, boost)
    if translation is not None:
        u = translation_unitary(translation, lattice, basis) @ u
    u_inv = u.adjoint()
    lhs = (u @ warp_operator(a, q, lattice, basis) @ u_inv).matrix
    rhs = warp_operator(u @ a @ u_inv, moved_q, lattice, basis).matrix
    discrepancy = float(np.max(np.abs(lhs - rhs)))
    delta = basis.n_total * resampling_error
    p_max = float(np.max(np.linalg.norm(state_momenta(lattice, basis), axis=-1)))
    q_norm = float(np.linalg.norm(moved_q.matrix.T @ MINKOWSKI.matrix, 2))
    tolerance = float(np.max(np.abs(a.matrix))) * q_norm * (2 * delta * (p_max + delta) + delta**2) + 1e-12
    return CovarianceReport(
        discrepancy=discrepancy,
        tolerance=tolerance,
        resampling_error=resampling_error,
        passed=discrepancy <= tolerance,
    )
