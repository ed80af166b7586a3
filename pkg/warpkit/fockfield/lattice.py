"""Momentum lattice and truncated occupation basis of the free field in d = 2."""

import itertools
import logging
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from warpkit.symbolkit.symbols import BilinearForm

logger = logging.getLogger(__name__)

MINKOWSKI = BilinearForm.minkowski(2)


class ModeLattice(BaseModel):
    """Spatial momenta {+-p_1, ..., +-p_M}, p_j = j * spacing, of a particle of mass m > 0."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_momenta: int = Field(2, ge=1, description="M, the number of positive momenta")
    spacing: float = Field(1.0, gt=0, description="Lattice spacing of the spatial momenta")
    mass: float = Field(1.0, gt=0, description="Particle mass; positive to avoid the 2D infrared divergence")

    @property
    def n_modes(self) -> int:
        return 2 * self.n_momenta

    def momenta(self) -> np.ndarray:
        """Ascending: -p_M, ..., -p_1, p_1, ..., p_M."""
        positive = self.spacing * np.arange(1, self.n_momenta + 1)
        return np.concatenate([-positive[::-1], positive])

    def frequencies(self) -> np.ndarray:
        p = self.momenta()
        return np.sqrt(p**2 + self.mass**2)

    def on_shell(self) -> np.ndarray:
        """(n_modes, 2) covectors k_p = (omega_p, p)."""
        return np.stack([self.frequencies(), self.momenta()], axis=-1)

    def mode_of(self, momentum: float) -> int:
        p = self.momenta()
        index = int(np.argmin(np.abs(p - momentum)))
        if not np.isclose(p[index], momentum, atol=1e-9 * self.spacing):
            raise ValueError(f"Momentum {momentum} is not on the lattice {p.tolist()}")
        return index


class FockBasis(BaseModel):
    """Occupation tuples with n_p <= n_max per mode and total number <= n_total.

    States are ordered by total number, then lexicographically; the vacuum
    is index 0.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_modes: int = Field(4, ge=1)
    n_max: int = Field(2, ge=1, description="Occupation cutoff per mode")
    n_total: int = Field(4, ge=1, description="Cutoff on the total particle number")

    @model_validator(mode="after")
    def _check_cutoffs(self):
        if self.n_max > self.n_total:
            raise ValueError(f"n_max={self.n_max} exceeds n_total={self.n_total}")
        return self

    @classmethod
    def for_lattice(cls, lattice: ModeLattice, n_max: int = 2, n_total: int = 4) -> "FockBasis":
        return cls(n_modes=lattice.n_modes, n_max=n_max, n_total=n_total)

    @cached_property
    def states(self) -> tuple[tuple[int, ...], ...]:
        tuples = [
            t
            for t in itertools.product(range(self.n_max + 1), repeat=self.n_modes)
            if sum(t) <= self.n_total
        ]
        tuples.sort(key=lambda t: (sum(t), t))
        return tuple(tuples)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.states)}

    @cached_property
    def occupations(self) -> np.ndarray:
        """(D, n_modes) integer array of the basis tuples."""
        return np.array(self.states, dtype=int).reshape(-1, self.n_modes)

    @property
    def dimension(self) -> int:
        return len(self.states)

    def particle_numbers(self) -> np.ndarray:
        return self.occupations.sum(axis=1)

    def check_lattice(self, lattice: ModeLattice) -> None:
        if lattice.n_modes != self.n_modes:
            raise ValueError(f"Basis has {self.n_modes} modes, lattice has {lattice.n_modes}")

    def vacuum(self) -> np.ndarray:
        psi = np.zeros(self.dimension, dtype=complex)
        psi[0] = 1.0
        return psi

    def basis_vector(self, occupation) -> np.ndarray:
        key = tuple(int(n) for n in occupation)
        if key not in self.index:
            raise ValueError(f"Occupation {list(key)} is outside the truncated basis")
        psi = np.zeros(self.dimension, dtype=complex)
        psi[self.index[key]] = 1.0
        return psi

    def one_particle(self, mode: int) -> np.ndarray:
        occupation = [0] * self.n_modes
        occupation[mode] = 1
        return self.basis_vector(occupation)

    def state_from_config(self, data: dict) -> np.ndarray:
        """Read ``{"vacuum": true}`` or ``{"amplitudes": [{"occupation": [...], "amplitude": [re, im]}]}``.

        The result is normalized.
        """
        if data.get("vacuum"):
            return self.vacuum()
        entries = data.get("amplitudes") or []
        if not entries:
            raise ValueError("State config needs 'vacuum' or a non-empty 'amplitudes' list")
        psi = np.zeros(self.dimension, dtype=complex)
        for entry in entries:
            amplitude = entry.get("amplitude", 1.0)
            if isinstance(amplitude, (list, tuple)):
                amplitude = complex(*amplitude)
            psi += complex(amplitude) * self.basis_vector(entry["occupation"])
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValueError("State config has zero norm")
        return psi / norm
