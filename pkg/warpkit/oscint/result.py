"""Oscillatory-integral results and the Richardson tableau."""

from typing import Literal

from pydantic import BaseModel, Field

from warpkit.errors import WarpkitError
from warpkit.jsonio import JsonComplex

# Relative roundoff floor added to every error estimate.
ROUNDOFF = 1e-14


class DivergenceError(WarpkitError):
    """A partial integral came out non-finite."""


class OscDiagnostics(BaseModel):
    eps: list[float] = Field(default_factory=list, description="Cutoff scales, largest first")
    partial_values: list[JsonComplex] = Field(default_factory=list, description="Integral at each eps")
    extrapolants: list[JsonComplex] = Field(
        default_factory=list, description="Deepest Richardson entry reached at each eps"
    )
    contributions: dict[str, JsonComplex] = Field(
        default_factory=dict, description="Ball, boundary and bulk terms of the regularized split"
    )
    notes: list[str] = Field(default_factory=list)


class OscResult(BaseModel):
    value: JsonComplex
    error_estimate: float = Field(ge=0)
    method: Literal["cutoff", "regularized"]
    converged: bool = True
    diagnostics: OscDiagnostics = Field(default_factory=OscDiagnostics)

    def agrees_with(self, other: "OscResult", slack: float = 1.0) -> bool:
        """True when the values differ by at most slack times the combined error estimates."""
        return abs(self.value - other.value) <= slack * (self.error_estimate + other.error_estimate)


def richardson_tableau(values: list[complex], eps: list[float], depth: int) -> list[list[complex]]:
    """Neville tableau extrapolating values(eps) to eps -> 0 in powers of eps^2.

    Row n holds T[n][0..min(n, depth)].
    """
    h = [e * e for e in eps]
    table = [[complex(v)] for v in values]
    for n in range(1, len(values)):
        for d in range(1, min(n, depth) + 1):
            factor = h[n - d] / h[n] - 1.0
            table[n].append(table[n][d - 1] + (table[n][d - 1] - table[n - 1][d - 1]) / factor)
    return table


def extrapolate(values: list[complex], eps: list[float], depth: int) -> tuple[complex, float, list[complex]]:
    """Return (value, error estimate, per-row deepest entries)."""
    table = richardson_tableau(values, eps, depth)
    last = table[-1]
    value = last[-1]
    spreads = []
    if len(last) > 1:
        spreads.append(abs(last[-1] - last[-2]))
    if len(table) > 1 and len(table[-2]) >= len(last):
        spreads.append(abs(last[-1] - table[-2][len(last) - 1]))
    if len(table) > 1:
        spreads.append(abs(last[-1] - table[-2][-1]))
    error = max(spreads, default=0.0) + ROUNDOFF * max(1.0, abs(value))
    return value, float(error), [row[-1] for row in table]

