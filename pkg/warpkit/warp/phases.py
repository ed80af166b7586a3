"""Oscillatory integrals of pure phases and the path-sum expansion of warped n-point functions."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
from pydantic import BaseModel

from warpkit.jsonio import JsonComplex
from warpkit.oscint.cutoff import CutoffSpec, eval_cutoff
from warpkit.symbolkit.symbols import BilinearForm, Symbol

logger = logging.getLogger(__name__)

PhaseMethod = Literal["phase-sum", "oscint"]


def pure_phase_integral(u: np.ndarray, v: np.ndarray, eta: BilinearForm) -> np.ndarray:
    """I_eta(e^{i(theta.u + xi.v)}) = e^{i v^T M^{-1} u} / |det M|, broadcast over leading axes.

    The theta integral is a delta at M xi = u, which leaves a point evaluation.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    m = eta.matrix
    solved = np.linalg.solve(m, u.reshape(-1, m.shape[0]).T).T.reshape(u.shape)
    return np.exp(1j * np.sum(v * solved, axis=-1)) / abs(np.linalg.det(m))


def restricted_phase_integral(
    u: np.ndarray, v: np.ndarray, eta: BilinearForm, theta_basis: np.ndarray, xi_basis: np.ndarray
) -> np.ndarray:
    """The same integral with theta in span(theta_basis) and xi in span(xi_basis), both orthonormal.

    With r basis vectors the normalization is (2 pi)^{-r}; r = 0 gives 1.
    """
    r = theta_basis.shape[1]
    if xi_basis.shape[1] != r:
        raise ValueError(f"Restricted subspaces have dimensions {r} and {xi_basis.shape[1]}")
    u = np.asarray(u, dtype=float)
    if r == 0:
        return np.ones(u.shape[:-1], dtype=complex)
    reduced = theta_basis.T @ eta.matrix @ xi_basis
    if abs(np.linalg.det(reduced)) <= eta.det_floor:
        raise ValueError("The form is degenerate on the restricted subspaces")
    return pure_phase_integral(u @ theta_basis, np.asarray(v, dtype=float) @ xi_basis, BilinearForm(reduced))


def phase_symbol(u: float, v: float) -> Symbol:
    return Symbol.from_expression({"phase": {"theta": [u], "xi": [v]}}, k=1, order=0.0, rho=0.0)


def phase_cutoff_spec(u: float, v: float, scale: float, base: CutoffSpec | None = None) -> CutoffSpec:
    """Cutoff schedule for e^{i(u theta + v xi)} against e^{-i scale theta xi}.

    eps0 keeps eps times the stationary point below 1/2, and the grid resolves u and v.
    """
    base = base or CutoffSpec()
    reach = max(abs(u), abs(v)) / abs(scale)
    return base.model_copy(
        update={
            "eps0": min(base.eps0, 0.5 / max(reach, 1e-12)),
            "bandwidth": base.bandwidth + abs(u) + abs(v),
        }
    )


def numeric_phase_integral(u: np.ndarray, v: np.ndarray, eta: BilinearForm, cutoff: CutoffSpec | None = None) -> complex:
    """Cutoff evaluation of one pure-phase term, factorized over the axes of a diagonal form."""
    m = eta.matrix
    if np.count_nonzero(m - np.diag(np.diag(m))):
        raise ValueError("The factorized numeric path needs a diagonal form")
    value = 1.0 + 0j
    for a in range(eta.dimension):
        scale = float(m[a, a])
        if u[a] == 0 and v[a] == 0:
            value /= abs(scale)
            continue
        spec = phase_cutoff_spec(float(u[a]), float(v[a]), scale, cutoff)
        value *= eval_cutoff(phase_symbol(float(u[a]), float(v[a])), BilinearForm(np.array([[scale]])), spec).value
    return value


class PhaseTerm(BaseModel):
    """One path i_0 -> ... -> i_n of the expansion with amplitude and per-factor frequencies."""

    path: list[int]
    amplitude: JsonComplex
    u: list[list[float]]
    v: list[list[float]]


def phase_expansion(
    psi: np.ndarray,
    operators: list[np.ndarray],
    deformations: list[np.ndarray],
    momenta: np.ndarray,
    eta: BilinearForm,
    threshold: float = 0.0,
) -> list[PhaseTerm]:
    """Expand <psi, W_1[A_1] ... W_n[A_n] psi> into phase terms.

    Factor r along a path contributes A_r[i_{r-1}, i_r] and the pure phase
    with u = Q_r^T M (P_{i_{r-1}} - P_{i_r}) and v = M P_{i_r}.
    """
    psi = np.asarray(psi, dtype=complex)
    m = eta.matrix
    support = np.flatnonzero(np.abs(psi) > threshold)
    # right to left: partial paths (i_r, ..., i_n) with their amplitudes
    paths: list[tuple[list[int], complex]] = [([j], complex(psi[j])) for j in support]
    for a in reversed(operators):
        grown = []
        for path, amp in paths:
            column = a[:, path[0]]
            for i in np.flatnonzero(np.abs(column) > threshold):
                grown.append(([int(i), *path], amp * complex(column[i])))
        paths = grown
    terms = []
    for path, amp in paths:
        amp *= complex(np.conj(psi[path[0]]))
        if amp == 0:
            continue
        us, vs = [], []
        for r, q in enumerate(deformations):
            left, right = momenta[path[r]], momenta[path[r + 1]]
            us.append((q.T @ m @ (left - right)).tolist())
            vs.append((m @ right).tolist())
        terms.append(PhaseTerm(path=path, amplitude=amp, u=us, v=vs))
    logger.debug(f"Phase expansion: {len(terms)} paths through {len(operators)} factors")
    return terms


def evaluate_phase_terms(
    terms: list[PhaseTerm],
    eta: BilinearForm,
    method: PhaseMethod = "phase-sum",
    *,
    cutoff: CutoffSpec | None = None,
    workers: int = 1,
) -> complex:
    """Sum of amplitude times the product of per-factor integrals."""
    if not terms:
        return 0j
    if method == "phase-sum":
        u = np.array([t.u for t in terms])
        v = np.array([t.v for t in terms])
        factors = pure_phase_integral(u, v, eta)
        amplitudes = np.array([t.amplitude for t in terms])
        return complex(np.sum(amplitudes * np.prod(factors, axis=-1)))
    if method != "oscint":
        raise ValueError(f"Unknown phase method: {method}")
    keys = sorted({(tuple(u), tuple(v)) for t in terms for u, v in zip(t.u, t.v, strict=True)})
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(lambda key: numeric_phase_integral(np.array(key[0]), np.array(key[1]), eta, cutoff), keys))
    table = dict(zip(keys, values, strict=True))
    total = 0j
    for t in terms:
        total += t.amplitude * np.prod([table[(tuple(u), tuple(v))] for u, v in zip(t.u, t.v, strict=True)])
    return complex(total)
