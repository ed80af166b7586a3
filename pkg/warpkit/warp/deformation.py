"""Deformation matrices Q and their orbit under proper orthochronous Lorentz transformations."""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from warpkit.errors import WarpkitError
from warpkit.symbolkit.symbols import BilinearForm

logger = logging.getLogger(__name__)

SKEW_TOLERANCE = 1e-12
METRIC_TOLERANCE = 1e-12


class ConditioningError(WarpkitError):
    """A transported matrix lost its defining symmetry to roundoff."""


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(m))))


@dataclass(frozen=True, eq=False)
class DeformationMatrix:
    """Real d x d matrix Q with eta Q antisymmetric, i.e. eta(theta, Q xi) = -eta(Q theta, xi)."""

    matrix: np.ndarray
    eta: BilinearForm | None = field(default=None, compare=False)

    def __post_init__(self):
        q = np.array(self.matrix, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"Deformation matrix must be square, got shape {q.shape}")
        eta = self.eta or BilinearForm.minkowski(q.shape[0])
        if eta.dimension != q.shape[0]:
            raise ValueError(f"Form acts on R^{eta.dimension}, Q on R^{q.shape[0]}")
        skew = eta.matrix @ q
        defect = float(np.max(np.abs(skew + skew.T)))
        if defect > SKEW_TOLERANCE * _scale(q):
            raise ValueError(f"eta Q is not antisymmetric: max |eta Q + (eta Q)^T| = {defect:.3g}")
        q.setflags(write=False)
        object.__setattr__(self, "matrix", q)
        object.__setattr__(self, "eta", eta)

    @classmethod
    def two_dimensional(cls, q: float) -> "DeformationMatrix":
        """[[0, q], [q, 0]], the general eta-antisymmetric form in signature (+, -)."""
        return cls(np.array([[0.0, q], [q, 0.0]]))

    @classmethod
    def zero(cls, d: int) -> "DeformationMatrix":
        return cls(np.zeros((d, d)))

    @classmethod
    def from_antisymmetric(cls, a: np.ndarray, eta: BilinearForm | None = None) -> "DeformationMatrix":
        """Q = eta^{-1} A for antisymmetric A."""
        a = np.asarray(a, dtype=float)
        eta = eta or BilinearForm.minkowski(a.shape[0])
        return cls(np.linalg.solve(eta.matrix, 0.5 * (a - a.T)), eta)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def kernel(self) -> np.ndarray:
        """Orthonormal columns spanning ker Q."""
        return null_space(self.matrix)

    def complement(self) -> np.ndarray:
        """Orthonormal columns spanning ker(Q)^perp = range(Q^T)."""
        return null_space(self.kernel().T) if self.kernel().size else np.eye(self.dimension)


@dataclass(frozen=True, eq=False)
class LorentzElement:
    """Lambda with Lambda^T eta Lambda = eta, det Lambda = 1 and Lambda^0_0 >= 1."""

    matrix: np.ndarray
    eta: BilinearForm | None = field(default=None, compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        eta = self.eta or BilinearForm.minkowski(m.shape[0])
        defect = float(np.max(np.abs(m.T @ eta.matrix @ m - eta.matrix)))
        if defect > METRIC_TOLERANCE * _scale(m) ** 2:
            raise ValueError(f"Matrix does not preserve the metric: defect {defect:.3g}")
        if np.linalg.det(m) < 0 or m[0, 0] < 1 - METRIC_TOLERANCE:
            raise ValueError("Lorentz element must be proper and orthochronous")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "eta", eta)

    @classmethod
    def identity(cls, d: int) -> "LorentzElement":
        return cls(np.eye(d))

    @classmethod
    def boost(cls, rapidity: float, axis: int = 1, d: int = 2) -> "LorentzElement":
        """Boost mixing time with spatial ``axis``; in d = 2, [[cosh, sinh], [sinh, cosh]]."""
        if not 1 <= axis < d:
            raise ValueError(f"Boost axis must be spatial (1..{d - 1}), got {axis}")
        m = np.eye(d)
        m[0, 0] = m[axis, axis] = np.cosh(rapidity)
        m[0, axis] = m[axis, 0] = np.sinh(rapidity)
        return cls(m)

    @classmethod
    def rotation(cls, angle: float, i: int = 1, j: int = 2, d: int = 3) -> "LorentzElement":
        if not (1 <= i < d and 1 <= j < d and i != j):
            raise ValueError(f"Rotation needs two distinct spatial axes, got ({i}, {j})")
        m = np.eye(d)
        c, s = np.cos(angle), np.sin(angle)
        m[i, i] = m[j, j] = c
        m[i, j], m[j, i] = -s, s
        return cls(m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "LorentzElement") -> "LorentzElement":
        return LorentzElement(self.matrix @ other.matrix, self.eta)

    def inverse(self) -> "LorentzElement":
        """eta^{-1} Lambda^T eta."""
        return LorentzElement(np.linalg.solve(self.eta.matrix, self.matrix.T @ self.eta.matrix), self.eta)

    def apply(self, k: np.ndarray) -> np.ndarray:
        return np.asarray(k, dtype=float) @ self.matrix.T


def lorentz_transport(q: DeformationMatrix, lam: LorentzElement) -> DeformationMatrix:
    """Lambda Q Lambda^{T_eta}, with the transpose taken under eta so that eta Q stays antisymmetric."""
    if q.dimension != lam.dimension:
        raise ValueError(f"Q acts on R^{q.dimension}, Lambda on R^{lam.dimension}")
    moved = lam.matrix @ q.matrix @ lam.inverse().matrix
    try:
        return DeformationMatrix(moved, q.eta)
    except ValueError as e:
        raise ConditioningError(f"Transported Q lost antisymmetry: {e}", rapidity_scale=_scale(lam.matrix)) from e


def random_lorentz(d: int, rng: np.random.Generator, max_rapidity: float = 1.0) -> LorentzElement:
    """A boost along a random spatial direction of random rapidity."""
    lam = LorentzElement.boost(float(rng.uniform(-max_rapidity, max_rapidity)), 1, d)
    if d <= 2:
        return lam
    for i in range(1, d):
        for j in range(i + 1, d):
            r = LorentzElement.rotation(float(rng.uniform(0, 2 * np.pi)), i, j, d)
            lam = r @ lam @ r.inverse()
    return lam


def sample_orbit(q: DeformationMatrix, n: int, seed: int = 0, max_rapidity: float = 1.0) -> list[DeformationMatrix]:
    """n members of Sigma_Q = {Lambda Q Lambda^{T_eta}}."""
    rng = np.random.default_rng(seed)
    return [lorentz_transport(q, random_lorentz(q.dimension, rng, max_rapidity)) for _ in range(n)]
