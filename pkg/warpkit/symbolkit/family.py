"""Named symbol families with known oscillatory-integral values."""

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from warpkit.symbolkit.symbols import BilinearForm, Symbol


@dataclass(frozen=True)
class FamilyMember:
    label: str
    symbol: Symbol
    form: BilinearForm
    expected: complex

    @property
    def k(self) -> int:
        return self.symbol.k


def _gauss(group: str, scale: float = 1.0, center=None) -> dict:
    node = {"over": group, "scale": scale}
    if center is not None:
        node["center"] = center
    return {"gauss": node}


def _square(group: str, index: int) -> dict:
    return {"pow": [{"var": [group, index]}, 2]}


class SymbolFamily:
    """An ordered collection of (symbol, form, expected value) triples."""

    def __init__(self, members: list[FamilyMember]):
        self.members = list(members)

    def __iter__(self) -> Iterator[FamilyMember]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def with_k(self, k: int) -> "SymbolFamily":
        return SymbolFamily([m for m in self.members if m.k == k])

    @classmethod
    def trivial(cls) -> "SymbolFamily":
        """Symbols independent of theta or of xi; each integrates to s(0, 0).

        theta-independent members only decay in xi, so their type is 0. The
        k = 2 members have Gaussian Fourier tails so that a truncated bulk at
        radius 8 is accurate; compactly supported profiles are covered at k = 1.
        """
        one = BilinearForm.euclidean(1)
        two = BilinearForm.euclidean(2)
        spec = [
            ("one", 1, 0.0, 1.0, 1, 1.0),
            ("gauss_xi", 1, 0.0, 0.0, _gauss("xi"), 1.0),
            ("gauss_theta", 1, 0.0, 0.0, _gauss("theta"), 1.0),
            ("bump_xi", 1, 0.0, 0.0, {"bump": {"over": "xi", "radius": 2.0}}, 1.0),
            (
                "poly_gauss_xi",
                1,
                0.0,
                0.0,
                {"prod": [{"sum": [1, _square("xi", 0)]}, _gauss("xi")]},
                1.0,
            ),
            (
                "poly_gauss_theta",
                1,
                0.0,
                0.0,
                {"prod": [{"sum": [1, _square("theta", 0)]}, _gauss("theta")]},
                1.0,
            ),
            ("shifted_gauss_xi", 1, 0.0, 0.0, _gauss("xi", 1.0, [0.5]), np.exp(-0.25)),
            ("gauss_xi_2d", 2, 0.0, 0.0, _gauss("xi"), 1.0),
            ("shifted_gauss_theta_2d", 2, 0.0, 0.0, _gauss("theta", 1.0, [0.5, -0.25]), np.exp(-0.3125)),
            (
                "poly_gauss_theta_2d",
                2,
                0.0,
                0.0,
                {
                    "prod": [
                        {"sum": [1, {"prod": [{"var": ["theta", 0]}, {"var": ["theta", 1]}]}]},
                        _gauss("theta"),
                    ]
                },
                1.0,
            ),
            (
                "aniso_gauss_xi_2d",
                2,
                0.0,
                0.0,
                {"expquad": {"over": "xi", "matrix": [[1.0, 0.2], [0.2, 0.75]]}},
                1.0,
            ),
        ]
        members = [
            FamilyMember(
                label=label,
                symbol=Symbol.from_expression(node, k, order, rho, label=label),
                form=one if k == 1 else two,
                expected=complex(value),
            )
            for label, k, order, rho, node, value in spec
        ]
        return cls(members)

    @classmethod
    def gaussian(cls) -> "SymbolFamily":
        """Decaying Gaussians in both variables with closed-form values.

        For s = exp(-a|theta|^2 - b|xi|^2) and eta = theta.xi on R^k the integral
        is (1 + 4ab)^{-k/2}.
        """
        members = []
        for k in (1, 2):
            form = BilinearForm.euclidean(k)
            for a, b in ((1.0, 1.0), (0.5, 1.0), (1.0, 2.0)):
                node = {"prod": [_gauss("theta", a), _gauss("xi", b)]}
                label = f"gauss_{a}_{b}_k{k}"
                members.append(
                    FamilyMember(
                        label=label,
                        symbol=Symbol.from_expression(node, k, 0.0, 1.0, label=label),
                        form=form,
                        expected=complex((1 + 4 * a * b) ** (-k / 2)),
                    )
                )
        return cls(members)
