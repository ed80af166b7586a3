"""Ladder, field and translation operators on the truncated Fock space."""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from warpkit.fockfield.lattice import MINKOWSKI, FockBasis, ModeLattice
from warpkit.jsonio import read_complex64, sidecar_path, write_complex64, write_json
from warpkit.symbolkit.testfunction import TestFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FockOperator:
    """A D x D matrix acting on the whole truncated space.

    ``leakage`` bounds the norm of the part of the untruncated operator that
    maps basis states outside the truncation.
    """

    matrix: np.ndarray = field(repr=False)
    label: str = ""
    leakage: float = 0.0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Operator matrices are square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.matrix @ other.matrix, f"{self.label}{other.label}", self.leakage + other.leakage)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.matrix + other.matrix, f"{self.label}+{other.label}", self.leakage + other.leakage)

    def scaled(self, c: complex) -> "FockOperator":
        return FockOperator(c * self.matrix, f"{c}*{self.label}", abs(c) * self.leakage)

    def adjoint(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, f"({self.label})^*", self.leakage)

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(psi, dtype=complex)

    @classmethod
    def identity(cls, basis: FockBasis) -> "FockOperator":
        return cls(np.eye(basis.dimension, dtype=complex), "1")


def annihilation(basis: FockBasis, mode: int) -> np.ndarray:
    """<m| a_p |n> = sqrt(n_p) for m = n - e_p."""
    out = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for j, state in enumerate(basis.states):
        if state[mode] == 0:
            continue
        lowered = list(state)
        lowered[mode] -= 1
        out[basis.index[tuple(lowered)], j] = np.sqrt(state[mode])
    return out


def creation(basis: FockBasis, mode: int) -> np.ndarray:
    return annihilation(basis, mode).conj().T


def on_shell_transform(f: TestFunction, lattice: ModeLattice) -> tuple[np.ndarray, np.ndarray]:
    """(f~(k_p), f~(-k_p)) with f~(k) = int f(x) e^{i eta(k, x)} dx and k_p on the mass shell."""
    if f.s != 2:
        raise ValueError(f"Field test functions live on 2D spacetime, got s={f.s}")
    k = lattice.on_shell()
    values = f.fourier(np.concatenate([k, -k]), MINKOWSKI.matrix)
    return values[: len(k)], values[len(k) :]


def _leakage(basis: FockBasis, plus: np.ndarray, frequencies: np.ndarray) -> float:
    """Frobenius norm of the creation block that leaves the truncation."""
    total = 0.0
    occupations = basis.occupations
    numbers = basis.particle_numbers()
    for p in range(basis.n_modes):
        escapes = (occupations[:, p] >= basis.n_max) | (numbers >= basis.n_total)
        total += float(np.sum(occupations[escapes, p] + 1)) * abs(plus[p]) ** 2 / (2 * frequencies[p])
    return float(np.sqrt(total))


def build_field_operator(f: TestFunction, lattice: ModeLattice, basis: FockBasis) -> FockOperator:
    """Phi(f) = sum_p (2 omega_p)^{-1/2} [f~(k_p) a_p^* + f~(-k_p) a_p]."""
    basis.check_lattice(lattice)
    plus, minus = on_shell_transform(f, lattice)
    omega = lattice.frequencies()
    matrix = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for p in range(basis.n_modes):
        a = annihilation(basis, p)
        matrix += (plus[p] * a.conj().T + minus[p] * a) / np.sqrt(2 * omega[p])
    leakage = _leakage(basis, plus, omega)
    logger.debug(f"Phi({f.label}): leakage bound {leakage:.3g}")
    return FockOperator(matrix, f"Phi({f.label})", leakage)


def state_momenta(lattice: ModeLattice, basis: FockBasis) -> np.ndarray:
    """(D, 2) total on-shell momentum of every basis state."""
    basis.check_lattice(lattice)
    return basis.occupations @ lattice.on_shell()


def translation_unitary(a, lattice: ModeLattice, basis: FockBasis) -> FockOperator:
    """U(a) = diag e^{i eta(a, P_state)}."""
    a = np.asarray(a, dtype=float).reshape(2)
    phases = np.exp(1j * MINKOWSKI(a, state_momenta(lattice, basis)))
    return FockOperator(np.diag(phases), f"U({a.tolist()})")


class OperatorSidecar(BaseModel):
    shape: list[int]
    label: str
    leakage: float


def export_operator(op: FockOperator, path: Path) -> Path:
    """Write the matrix as flat <c8 and its metadata to a JSON sidecar."""
    path = Path(path)
    write_complex64(path, op.matrix)
    write_json(sidecar_path(path), OperatorSidecar(shape=list(op.matrix.shape), label=op.label, leakage=op.leakage))
    logger.info(f"Wrote {op.label} ({op.dimension}x{op.dimension}) to {path}")
    return path


def load_operator(path: Path) -> FockOperator:
    path = Path(path)
    sidecar = OperatorSidecar.model_validate_json(sidecar_path(path).read_text())
    return FockOperator(read_complex64(path, sidecar.shape), sidecar.label, sidecar.leakage)
